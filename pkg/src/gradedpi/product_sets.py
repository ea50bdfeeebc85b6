"""Product sets N(A): the group elements reached by all orderings of a multiset.

For a grading tuple (g_1, ..., g_r) and a multidegree A = (n_1, ..., n_r), N(A)
collects the products of every word using g_i exactly n_i times.  It is
computed by the recursion N(A) = U_{i: n_i > 0} N(A - e_i) * g_i with
N(0) = {e}, memoized over the sub-lattice below each queried point.
"""
from __future__ import annotations

import weakref
from collections import deque
from dataclasses import dataclass

from .errors import DomainError
from .groups import abelianization_map, commutator_subgroup, generated_subgroup


@dataclass(frozen=True)
class GradingTuple:
    group: object
    degrees: tuple

    def __post_init__(self):
        degrees = tuple(int(g) for g in self.degrees)
        if not degrees:
            raise DomainError("a grading tuple needs at least one entry")
        for g in degrees:
            self.group._check(g)
        object.__setattr__(self, "degrees", degrees)

    @property
    def rank(self):
        return len(self.degrees)

    def generates_group(self):
        return generated_subgroup(self.group, self.degrees).order == self.group.order


@dataclass(frozen=True)
class ProductSet:
    elements: tuple
    coset_label: int

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self.elements


def precedes(A, B):
    """Componentwise order A <= B on multidegrees."""
    return all(a <= b for a, b in zip(A, B))


def word_multidegree(word, r):
    A = [0] * r
    for i in word:
        A[i] += 1
    return tuple(A)


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class ProductSetTable:
    """Memo of N(A) for one grading tuple, stored as element bitmasks."""

    def __init__(self, omega):
        self.omega = omega
        self.group = omega.group
        self._memo = {(0,) * omega.rank: 1}
        self._shift = [{} for _ in omega.degrees]

    def _times(self, mask, i):
        cache = self._shift[i]
        out = cache.get(mask)
        if out is None:
            col = self.omega.degrees[i]
            t = self.group.table
            out = 0
            for x in _bits(mask):
                out |= 1 << t[x][col]
            cache[mask] = out
        return out

    def mask(self, A):
        memo = self._memo
        got = memo.get(A)
        if got is not None:
            return got
        stack = [A]
        while stack:
            X = stack[-1]
            if X in memo:
                stack.pop()
                continue
            preds = [X[:i] + (X[i] - 1,) + X[i + 1:] for i in range(len(X)) if X[i]]
            missing = [P for P in preds if P not in memo]
            if missing:
                stack.extend(missing)
                continue
            out = 0
            for i in range(len(X)):
                if X[i]:
                    out |= self._times(memo[X[:i] + (X[i] - 1,) + X[i + 1:]], i)
            memo[X] = out
            stack.pop()
        return memo[A]

    def size(self, A):
        return bin(self.mask(A)).count("1")

    def __len__(self):
        return len(self._memo)


_TABLES = weakref.WeakKeyDictionary()


def table_for(omega):
    """Shared memo table for ``omega`` (one per group and degree tuple)."""
    per_group = _TABLES.setdefault(omega.group, {})
    tab = per_group.get(omega.degrees)
    if tab is None:
        tab = per_group[omega.degrees] = ProductSetTable(omega)
    return tab


def _checked(omega, A):
    A = tuple(int(a) for a in A)
    if len(A) != omega.rank:
        raise DomainError(f"multidegree has {len(A)} entries, grading tuple has {omega.rank}")
    if any(a < 0 for a in A):
        raise DomainError("multidegree entries must be nonnegative")
    return A


def product_set(omega, A):
    A = _checked(omega, A)
    elems = tuple(_bits(table_for(omega).mask(A)))
    return ProductSet(elems, abelianization_map(omega.group)[elems[0]])


def total_dimension(omega, A):
    return table_for(omega).size(_checked(omega, A))


def component_dimension(omega, A, g):
    omega.group._check(g)
    return (table_for(omega).mask(_checked(omega, A)) >> g) & 1


def is_saturated(omega, A):
    return total_dimension(omega, A) == commutator_subgroup(omega.group).order


# -- rich words -----------------------------------------------------------------

def shortest_words(omega):
    """Shortest word over the tuple indices for every element (BFS, right multiplication)."""
    G = omega.group
    words = {0: ()}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for i, g in enumerate(omega.degrees):
            y = G.table[x][g]
            if y not in words:
                words[y] = words[x] + (i,)
                queue.append(y)
    return words


def _inverse_word(omega, word):
    # g_i^{-1} is spelled g_i^{ord(g_i) - 1}
    G = omega.group
    out = []
    for i in reversed(word):
        out.extend([i] * (G.element_order(omega.degrees[i]) - 1))
    return tuple(out)


def commutator_blocks(omega):
    """One word per distinct nontrivial commutator [g,h] = g h g^-1 h^-1."""
    G = omega.group
    words = shortest_words(omega)
    blocks = {}
    for g in G.elements:
        for h in G.elements:
            c = G.product([g, h, G.inverse(g), G.inverse(h)])
            if c == 0 or c in blocks:
                continue
            wg, wh = words[g], words[h]
            blocks[c] = wg + wh + _inverse_word(omega, wg) + _inverse_word(omega, wh)
    return [blocks[c] for c in sorted(blocks)]


def coset(G, z):
    return tuple(sorted(G.table[z][h] for h in commutator_subgroup(G).elements))


def rich_word(omega, z, max_blocks=None):
    """A word over the tuple indices whose reorderings realize the whole coset zG'."""
    G = omega.group
    G._check(z)
    if not omega.generates_group():
        raise DomainError("the grading tuple does not generate the group")
    target = coset(G, z)
    blocks = commutator_blocks(omega)
    r = omega.rank
    size_g1 = commutator_subgroup(G).order
    if max_blocks is None:
        max_blocks = max(1, len(blocks)) * size_g1 * 2

    chosen = []
    k = 0
    while blocks and total_dimension(omega, word_multidegree(sum(chosen, ()), r)) < size_g1:
        if len(chosen) >= max_blocks:
            raise DomainError("rich word construction did not saturate")
        chosen.append(blocks[k % len(blocks)])
        k += 1

    tail = shortest_words(omega)[z]

    def is_rich(parts):
        word = sum(parts, ()) + tail
        return product_set(omega, word_multidegree(word, r)).elements == target

    if not is_rich(chosen):
        raise DomainError("rich word construction failed verification")
    i = len(chosen) - 1
    while i >= 0:
        trial = chosen[:i] + chosen[i + 1:]
        if is_rich(trial):
            chosen = trial
        i -= 1
    return sum(chosen, ()) + tail
