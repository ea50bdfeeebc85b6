"""Graded codimensions c^n_G(FG) of the group algebra.

c^n sums, over all degree assignments (g_1, ..., g_n) in G^n, the number of
distinct products among the n! reorderings, i.e. |N| of the multiset.  Grouping
assignments by multiset gives

    c^n = sum_M multinomial(n; M) * |N(M)|,

with N computed on the grading tuple (0, 1, ..., |G|-1) of all group elements.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .groups import commutator_subgroup
from .product_sets import GradingTuple, table_for


@dataclass(frozen=True)
class CodimRecord:
    n: int
    value: int
    lower: int
    upper: int

    @property
    def ratio(self):
        return Fraction(self.value, self.upper)

    @property
    def exp_estimate(self):
        # display only
        if self.n == 0:
            return float("nan")
        approx = math.exp(math.log(self.value) / self.n)
        # snap to an exact integer root when there is one (abelian case)
        for r in (math.floor(approx), math.ceil(approx)):
            if r > 0 and r ** self.n == self.value:
                return float(r)
        return approx


def multisets(n, k):
    """Yield (multiplicity vector, multinomial coefficient) for size-n multisets on k letters.

    Vectors come in colex order; the multinomial is built up one part at a
    time as a product of binomials.
    """
    counts = [0] * k

    def rec(pos, remaining, coeff):
        if pos == 0:
            counts[0] = remaining
            yield tuple(counts), coeff
            return
        for a in range(remaining + 1):
            counts[pos] = a
            yield from rec(pos - 1, remaining - a, coeff * math.comb(remaining, a))

    if k == 0:
        return
    yield from rec(k - 1, n, 1)


def full_tuple(G):
    return GradingTuple(G, tuple(G.elements))


def codim(G, n):
    if n < 0:
        raise DomainError("degree n must be nonnegative")
    tab = table_for(full_tuple(G))
    value = sum(coeff * tab.size(A) for A, coeff in multisets(n, G.order))
    lower = G.order ** n
    return CodimRecord(n, value, lower, commutator_subgroup(G).order * lower)


def codim_table(G, n_max):
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    return [codim(G, n) for n in range(1, n_max + 1)]


def exp_estimate(G, n):
    return codim(G, n).exp_estimate
