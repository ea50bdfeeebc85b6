import itertools

import pytest

from gradedpi.groups import make_group

ACCEPTANCE_RESULTS = []


def distinct_orderings(letters):
    """Distinct permutations of a multiset, written independently of the library."""
    counts = {}
    for x in letters:
        counts[x] = counts.get(x, 0) + 1
    n = len(letters)
    prefix = []

    def rec():
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for x in sorted(counts):
            if counts[x]:
                counts[x] -= 1
                prefix.append(x)
                yield from rec()
                prefix.pop()
                counts[x] += 1

    yield from rec()


def brute_product_set(G, degrees, A):
    letters = [degrees[i] for i, n in enumerate(A) for _ in range(n)]
    out = set()
    for word in distinct_orderings(letters):
        x = 0
        for w in word:
            x = G.table[x][w]
        out.add(x)
    return out


def perm_index(n):
    """Index of each permutation tuple in the builtin S_n ordering (lexicographic)."""
    return {p: i for i, p in enumerate(itertools.permutations(range(n)))}


def compose(a, b):
    """a then b."""
    return tuple(b[a[i]] for i in range(len(a)))


@pytest.fixture(scope="session")
def S3():
    return make_group("S3")


@pytest.fixture(scope="session")
def S3_gens():
    idx = perm_index(3)
    transposition = idx[(0, 2, 1)]
    three_cycle = idx[(2, 0, 1)]
    return transposition, three_cycle


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
