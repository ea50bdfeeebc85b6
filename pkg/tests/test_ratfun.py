from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from gradedpi.errors import DomainError
from gradedpi.ratfun import (
    MultivariateRational,
    SparsePoly,
    UnivariateRational,
    berlekamp_massey,
    expand,
    one_minus,
    rational_fit,
)

t, t1, t2 = sympy.symbols("t t1 t2")


def to_sympy(p):
    gens = sympy.symbols(f"t1:{p.nvars + 1}")
    return sum((c * sympy.Mul(*(g ** k for g, k in zip(gens, e))) for e, c in p.terms.items()),
               sympy.Integer(0))


def sympy_series(num, den, order):
    """Taylor coefficients of num/den through t^order, via sympy."""
    expr = sum(c * t ** i for i, c in enumerate(num)) / sum(c * t ** i for i, c in enumerate(den))
    s = sympy.series(expr, t, 0, order + 1).removeO()
    return [Fraction(str(s.coeff(t, n))) for n in range(order + 1)]


def test_poly_factorization():
    one_t = one_minus((1,))
    cube = SparsePoly.from_coeffs([1, 1, 1])
    assert one_t * cube == one_minus((3,))
    assert one_minus((3,)).exact_div(one_t) == cube
    assert one_t.divides(one_minus((3,)))
    with pytest.raises(DomainError):
        SparsePoly.from_coeffs([1, 0, 1]).exact_div(one_t)


sparse2 = st.dictionaries(
    st.tuples(st.integers(0, 5), st.integers(0, 5)), st.integers(-4, 4), max_size=6
).map(lambda d: SparsePoly(d, 2))


@settings(max_examples=80, deadline=None)
@given(sparse2, sparse2)
def test_multiplication_matches_sympy(a, b):
    prod = sympy.expand(to_sympy(a) * to_sympy(b))
    assert sympy.expand(to_sympy(a * b) - prod) == 0
    assert sympy.expand(to_sympy(a + b) - to_sympy(a) - to_sympy(b)) == 0


@settings(max_examples=80, deadline=None)
@given(sparse2, sparse2)
def test_exact_division_roundtrip(a, b):
    assume(not b.is_zero())
    assert (a * b).exact_div(b) == a


def test_expand_examples():
    assert expand(UnivariateRational([1], [1, -1]), 5) == [1] * 6
    assert expand(UnivariateRational([1], [1, -2, 1]), 4) == [1, 2, 3, 4, 5]
    assert expand(UnivariateRational([0, 0, 1], [1, -2]), 4) == [0, 0, 1, 2, 4]
    with pytest.raises(DomainError):
        expand(UnivariateRational([1], [0, 1]), 3)


def test_expand_multivariate_form():
    f = MultivariateRational(SparsePoly.constant(1, 1), {(1,): 2})
    assert f.series(4) == [1, 2, 3, 4, 5]


small_rational = st.tuples(
    st.lists(st.integers(-3, 3), min_size=1, max_size=4),
    st.lists(st.integers(-2, 2), min_size=0, max_size=3),
).map(lambda nd: (nd[0], [1] + nd[1]))


@settings(max_examples=60, deadline=None)
@given(small_rational)
def test_expand_matches_sympy(nd):
    num, den = nd
    assert expand(UnivariateRational(num, den), 10) == sympy_series(num, den, 10)


def test_fit_examples():
    f = rational_fit([1] * 8, guard=3)
    assert f == UnivariateRational([1], [1, -1])
    assert str(f) == "1/(1-t)"
    fib = rational_fit([1, 1, 2, 3, 5, 8, 13, 21, 34, 55], guard=3)
    assert fib == UnivariateRational([1], [1, -1, -1])
    assert expand(fib, 9) == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55]


def test_fit_binomials():
    for k in range(1, 6):
        f = UnivariateRational([1], sympy.Poly((1 - t) ** k, t).all_coeffs()[::-1])
        coeffs = expand(f, 2 * k + 4)
        fit = rational_fit(coeffs, guard=3)
        assert fit == f
        assert fit.denominator == [Fraction(c) for c in f.denominator]


def test_fit_errors_and_no_fit():
    with pytest.raises(DomainError):
        rational_fit([1])
    # order-2 recurrence needs 2*2 + guard terms
    assert rational_fit([1, 1, 2, 3, 5], guard=3) is None
    # a sequence that breaks its recurrence inside the guard
    assert rational_fit([1, 1, 1, 1, 1, 1, 1, 7], guard=3) is None


@settings(max_examples=80, deadline=None)
@given(small_rational)
def test_fit_roundtrip(nd):
    num, den = nd
    f = UnivariateRational(num, den)
    coeffs = expand(f, 20)
    fit = rational_fit(coeffs, guard=4)
    # every such f has linear complexity at most 4, and 2*4 + 4 <= 21
    assert fit is not None
    assert expand(fit, 20) == coeffs
    assert fit == f


def minimal_complexity(seq):
    """Smallest d admitting q (q_0 = 1, deg <= d) with sum q_i c_{n-i} = 0 for d <= n < len."""
    N = len(seq)
    for d in range(N + 1):
        rows = [[sympy.Rational(seq[n - i]) for i in range(1, d + 1)] for n in range(d, N)]
        rhs = [-sympy.Rational(seq[n]) for n in range(d, N)]
        if not rows:
            return d
        if d == 0:
            if all(x == 0 for x in rhs):
                return 0
            continue
        A = sympy.Matrix(rows)
        Ab = A.row_join(sympy.Matrix(rhs))
        if A.rank() == Ab.rank():
            return d
    return N


def complexity(f):
    return max(len(f.denominator) - 1, len(f.numerator))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=4, max_size=13), st.integers(0, 3))
def test_fit_is_minimal(seq, guard):
    fit = rational_fit(seq, guard)
    if fit is None:
        return
    assert expand(fit, len(seq) - 1) == [Fraction(x) for x in seq]
    d = minimal_complexity(seq)
    assert complexity(fit) == d
    assert len(fit.denominator) - 1 <= d


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=12))
def test_berlekamp_massey_is_minimal(seq):
    C, L = berlekamp_massey(seq)
    assert C[0] == 1
    for n in range(L, len(seq)):
        assert sum(C[i] * seq[n - i] for i in range(len(C))) == 0
    assert L == minimal_complexity(seq)


def test_multivariate_printing_and_clearing():
    r = 2
    num = SparsePoly({(0, 0): 1, (1, 1): 1, (1, 2): 1}, r)
    f = MultivariateRational(num, {(1, 0): 1, (0, 1): 1})
    assert str(f) == "(1+t1*t2+t1*t2^2)/((1-t1)*(1-t2))"
    g = MultivariateRational(num * one_minus((1, 0)), {(1, 0): 2, (0, 1): 1}).cleared()
    assert g.denominator == f.denominator
    assert g == f
    assert str(MultivariateRational.full_lattice(1)) == "1/(1-t)"


def sympy_box(f, bounds):
    """Coefficients of f inside the box by truncated expansion in sympy."""
    gens = sympy.symbols(f"t1:{f.nvars + 1}")
    expr = to_sympy(f.numerator)
    for v, e in f.denominator.items():
        mono = sympy.Mul(*(g ** k for g, k in zip(gens, v)))
        steps = min(b // k for b, k in zip(bounds, v) if k)
        geo = sum(mono ** j for j in range(steps + 1))
        expr = sympy.expand(expr * geo ** e)
    poly = sympy.Poly(expr, *gens)
    out = {}
    for mono, c in poly.terms():
        if all(a <= b for a, b in zip(mono, bounds)):
            out[mono] = Fraction(str(c))
    return out


denominators = st.dictionaries(
    st.sampled_from([(1, 0), (0, 1), (2, 0), (0, 3), (1, 1)]), st.integers(1, 2), max_size=3)


@settings(max_examples=40, deadline=None)
@given(sparse2, denominators)
def test_coefficients_in_box_match_sympy(num, den):
    f = MultivariateRational(num, den)
    bounds = (5, 5)
    box = f.coefficients_in_box(bounds)
    oracle = sympy_box(f, bounds)
    for A, c in box.items():
        assert c == oracle.get(A, 0)


def test_specialize():
    f = MultivariateRational.full_lattice(3).specialize()
    assert expand(f, 5) == [1, 3, 6, 10, 15, 21]
    g = MultivariateRational(SparsePoly({(1, 1): 1}, 2), {(1, 0): 1, (0, 1): 1}).specialize()
    assert str(g.to_univariate().normalized()) == "t^2/(1-t)^2"


def test_univariate_printing():
    assert str(UnivariateRational([0, 0, 1], [1, -2])) == "t^2/(1-2*t)"
    assert str(UnivariateRational([1], [1, -2, 1])) == "1/(1-t)^2"
    h = UnivariateRational([2, 2], [2, -2, -4]).normalized()
    assert h.denominator[0] == 1
    assert h == UnivariateRational([1], [1, -2])
