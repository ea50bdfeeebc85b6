import itertools
import math

import pytest

from gradedpi.codimension import codim, codim_table, exp_estimate, multisets
from gradedpi.errors import DomainError
from gradedpi.groups import commutator_subgroup, make_group

from conftest import brute_product_set

SMALL = ["C1", "C2", "C3", "C4", "C6", "C2xC2", "S3", "D4", "Q8"]


def commuting_pairs(G):
    return sum(G.multiply(a, b) == G.multiply(b, a) for a in range(G.order) for b in range(G.order))


def codim_by_tuples(G, n):
    """Sum |N| over all ordered degree assignments, with N by brute force."""
    total = 0
    for tup in itertools.product(range(G.order), repeat=n):
        total += len(brute_product_set(G, tup, (1,) * n))
    return total


@pytest.mark.parametrize("spec", SMALL)
def test_degree_one(spec):
    G = make_group(spec)
    assert codim(G, 1).value == G.order


@pytest.mark.parametrize("spec", ["C1", "C2", "C4", "C6", "C2xC2"])
def test_abelian_power(spec):
    G = make_group(spec)
    for rec in codim_table(G, 12):
        assert rec.value == G.order ** rec.n
        assert rec.exp_estimate == float(G.order)


def test_s3_degree_two():
    G = make_group("S3")
    # ordered pairs contribute 1 when they commute and 2 otherwise
    assert 2 * 36 - commuting_pairs(G) == 54
    assert codim(G, 2).value == 54


@pytest.mark.parametrize("spec", ["S3", "D4", "Q8"])
def test_degree_two_commuting_pairs(spec):
    G = make_group(spec)
    assert codim(G, 2).value == 2 * G.order ** 2 - commuting_pairs(G)


@pytest.mark.parametrize("spec,n_max", [("S3", 5), ("D4", 4), ("Q8", 4), ("C2xC2", 4), ("D5", 3)])
def test_two_counts_agree(spec, n_max):
    G = make_group(spec)
    for n in range(1, n_max + 1):
        assert codim(G, n).value == codim_by_tuples(G, n)


@pytest.mark.parametrize("spec", SMALL)
def test_bounds(spec):
    G = make_group(spec)
    k = commutator_subgroup(G).order
    for rec in codim_table(G, 10):
        assert G.order ** rec.n <= rec.value <= k * G.order ** rec.n
        assert rec.lower == G.order ** rec.n
        assert rec.upper == k * G.order ** rec.n


def test_bounds_larger_groups():
    for spec, n_max in [("S4", 4), ("D6", 5), ("C2xS3", 5)]:
        G = make_group(spec)
        for rec in codim_table(G, n_max):
            assert rec.lower <= rec.value <= rec.upper


@pytest.mark.parametrize("spec", SMALL)
def test_increasing(spec):
    values = [r.value for r in codim_table(make_group(spec), 10)]
    assert all(a <= b for a, b in zip(values, values[1:]))


def test_s3_ratio_nondecreasing():
    ratios = [r.ratio for r in codim_table(make_group("S3"), 10)[1:]]
    assert all(a <= b for a, b in zip(ratios, ratios[1:]))


def test_known_values():
    assert [r.value for r in codim_table(make_group("S3"), 5)] == [6, 54, 462, 3336, 21816]


def test_exp_estimate_range():
    G = make_group("S3")
    for n in range(1, 8):
        e = exp_estimate(G, n)
        assert G.order <= e <= G.order * 3 ** (1 / n) + 1e-9


def test_multisets():
    for n in range(6):
        for k in range(1, 5):
            items = list(multisets(n, k))
            assert len(items) == math.comb(n + k - 1, k - 1)
            assert sum(c for _, c in items) == k ** n
            for M, c in items:
                assert sum(M) == n
                assert c == math.factorial(n) // math.prod(math.factorial(m) for m in M)


def test_errors():
    G = make_group("S3")
    with pytest.raises(DomainError):
        codim(G, -1)
    with pytest.raises(DomainError):
        codim_table(G, 0)
    assert codim(G, 0).value == 1
