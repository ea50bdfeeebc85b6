"""Exact sparse polynomials, rational generating functions and recurrence fitting.

Everything here is exact: coefficients are ints or :class:`fractions.Fraction`.
"""
from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

from .errors import DomainError


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def format_number(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _monomial_key(e):
    return (sum(e), tuple(-x for x in e))


def _var_names(nvars):
    return ["t"] if nvars == 1 else [f"t{i + 1}" for i in range(nvars)]


class SparsePoly:
    """Polynomial in ``nvars`` variables as a map exponent-tuple -> coefficient."""

    __slots__ = ("nvars", "terms")

    def __init__(self, terms=None, nvars=1):
        self.nvars = nvars
        self.terms = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise DomainError(f"exponent {exps} does not have arity {nvars}")
            if c:
                self.terms[exps] = _clean(c)

    @classmethod
    def constant(cls, c, nvars=1):
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def monomial(cls, exps, c=1):
        exps = tuple(exps)
        return cls({exps: c}, len(exps))

    @classmethod
    def variable(cls, i, nvars):
        e = [0] * nvars
        e[i] = 1
        return cls.monomial(e)

    @classmethod
    def from_coeffs(cls, coeffs):
        """Univariate polynomial from a low-to-high coefficient list."""
        return cls({(k,): c for k, c in enumerate(coeffs)}, 1)

    def coeffs(self):
        """Dense low-to-high coefficients of a univariate polynomial."""
        if self.nvars != 1:
            raise DomainError("dense coefficients need a univariate polynomial")
        if not self.terms:
            return []
        out = [0] * (self.degree() + 1)
        for (k,), c in self.terms.items():
            out[k] = c
        return out

    def _same(self, other):
        if isinstance(other, SparsePoly):
            if other.nvars != self.nvars:
                raise DomainError(f"arity mismatch: {self.nvars} vs {other.nvars}")
            return other
        return SparsePoly.constant(other, self.nvars)

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), 0)

    def __add__(self, other):
        other = self._same(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return SparsePoly(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) - self

    def __mul__(self, other):
        other = self._same(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SparsePoly(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = SparsePoly.constant(1, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            other = SparsePoly.constant(other, self.nvars)
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def leading(self):
        e = max(self.terms)
        return e, self.terms[e]

    def exact_div(self, other):
        """Quotient q with self == q * other; raises if the division leaves a remainder."""
        other = self._same(other)
        if other.is_zero():
            raise DomainError("division by the zero polynomial")
        le, lc = other.leading()
        rem = SparsePoly(self.terms, self.nvars)
        quot = {}
        while rem.terms:
            e, c = rem.leading()
            shift = tuple(a - b for a, b in zip(e, le))
            if min(shift) < 0:
                raise DomainError("polynomial is not divisible")
            q = _clean(Fraction(c) / lc)
            quot[shift] = q
            rem = rem - SparsePoly.monomial(shift, q) * other
        return SparsePoly(quot, self.nvars)

    def divides(self, other):
        try:
            other.exact_div(self)
        except DomainError:
            return False
        return True

    def map_exponents(self, fn, nvars):
        out = {}
        for e, c in self.terms.items():
            e2 = tuple(fn(e))
            out[e2] = out.get(e2, 0) + c
        return SparsePoly(out, nvars)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda ec: _monomial_key(ec[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        names = _var_names(self.nvars)
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            c = Fraction(c)
            mag = format_number(abs(c))
            if not mono:
                body = mag
            elif mag == "1":
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += sign + body
        return s

    def __repr__(self):
        return f"SparsePoly({self}, nvars={self.nvars})"


def one_minus(v):
    """The polynomial 1 - t^v."""
    v = tuple(v)
    return SparsePoly({(0,) * len(v): 1, v: -1}, len(v))


class MultivariateRational:
    """numerator / prod (1 - t^v)^mult, the form Hilbert series take here.

    ``denominator`` maps exponent vectors v to multiplicities.  Plain
    ``prod (1 - t_i)^{e_i}`` is the case where every v is a unit vector.
    """

    def __init__(self, numerator, denominator=None):
        self.numerator = numerator
        self.nvars = numerator.nvars
        den = Counter()
        for v, e in dict(denominator or {}).items():
            v = tuple(v)
            if len(v) != self.nvars or not any(v) or min(v) < 0:
                raise DomainError(f"bad denominator factor 1 - t^{v}")
            if e:
                den[v] += e
        self.denominator = dict(sorted(den.items(), key=lambda ve: _monomial_key(ve[0])))

    @classmethod
    def full_lattice(cls, nvars):
        """prod_i 1/(1 - t_i)."""
        return cls(SparsePoly.constant(1, nvars), {_unit(i, nvars): 1 for i in range(nvars)})

    @classmethod
    def zero(cls, nvars):
        return cls(SparsePoly({}, nvars))

    def denominator_poly(self):
        out = SparsePoly.constant(1, self.nvars)
        for v, e in self.denominator.items():
            out = out * one_minus(v) ** e
        return out

    def denominator_exponents(self):
        """Exponents e_i when the denominator is prod (1 - t_i)^{e_i}, else None."""
        out = [0] * self.nvars
        for v, e in self.denominator.items():
            if sum(v) != 1:
                return None
            out[v.index(1)] += e
        return tuple(out)

    def cleared(self):
        """Cancel whole denominator factors that divide the numerator exactly."""
        num = self.numerator
        den = dict(self.denominator)
        if num.is_zero():
            return MultivariateRational(num)
        for v in list(den):
            while den[v]:
                try:
                    num = num.exact_div(one_minus(v))
                except DomainError:
                    break
                den[v] -= 1
        return MultivariateRational(num, den)

    def __add__(self, other):
        if other.nvars != self.nvars:
            raise DomainError("arity mismatch")
        den = Counter(self.denominator)
        for v, e in other.denominator.items():
            den[v] = max(den[v], e)
        num = SparsePoly({}, self.nvars)
        for f in (self, other):
            factor = SparsePoly.constant(1, self.nvars)
            for v, e in den.items():
                factor = factor * one_minus(v) ** (e - f.denominator.get(v, 0))
            num = num + f.numerator * factor
        return MultivariateRational(num, den)

    def __eq__(self, other):
        if not isinstance(other, MultivariateRational) or other.nvars != self.nvars:
            return NotImplemented
        return self.numerator * other.denominator_poly() == other.numerator * self.denominator_poly()

    __hash__ = None

    def coefficients_in_box(self, bounds):
        """Taylor coefficients at every A with A_i <= bounds[i]."""
        bounds = tuple(bounds)
        table = {}
        for e, c in self.numerator.terms.items():
            if all(a <= b for a, b in zip(e, bounds)):
                table[e] = c
        points = list(itertools.product(*(range(b + 1) for b in bounds)))
        for v, mult in self.denominator.items():
            for _ in range(mult):
                # dividing by 1 - t^v is a running sum along v; points are in lex order
                for A in points:
                    prev = tuple(a - d for a, d in zip(A, v))
                    if min(prev) >= 0:
                        c = table.get(prev, 0)
                        if c:
                            table[A] = table.get(A, 0) + c
        return {A: _clean(table.get(A, 0)) for A in points}

    def coefficient(self, A):
        return self.coefficients_in_box(A)[tuple(A)]

    def specialize(self):
        """Substitute t_i := t for every variable."""
        num = self.numerator.map_exponents(lambda e: (sum(e),), 1)
        den = Counter()
        for v, e in self.denominator.items():
            den[(sum(v),)] += e
        return MultivariateRational(num, den)

    def to_univariate(self):
        if self.nvars != 1:
            raise DomainError("not a univariate rational function")
        return UnivariateRational(self.numerator.coeffs(), self.denominator_poly().coeffs())

    def series(self, order):
        return self.to_univariate().expand(order)

    def to_json(self):
        return {
            "nvars": self.nvars,
            "numerator": [[list(e), format_number(c) if isinstance(c, Fraction) else c]
                          for e, c in self.numerator.sorted_terms()],
            "denominator": [[list(v), e] for v, e in self.denominator.items()],
        }

    def __str__(self):
        names = _var_names(self.nvars)
        num = str(self.numerator)
        if len(self.numerator.terms) > 1:
            num = f"({num})"
        factors = []
        for v, e in self.denominator.items():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, v) if k)
            f = f"(1-{mono})"
            factors.append(f if e == 1 else f"{f}^{e}")
        if not factors:
            return num
        if len(factors) == 1:
            return f"{num}/{factors[0]}"
        return f"{num}/({'*'.join(factors)})"

    def __repr__(self):
        return f"MultivariateRational({self})"


def _unit(i, n):
    return tuple(1 if j == i else 0 for j in range(n))


# -- univariate ----------------------------------------------------------------

def _trim(p):
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / b[-1]
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a = _trim(a)
    return _trim(q), a


def _poly_gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    return a


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


class UnivariateRational:
    """p(t)/q(t) with dense exact coefficient lists (low to high)."""

    def __init__(self, numerator, denominator=(1,)):
        self.numerator = _trim(numerator)
        self.denominator = _trim(denominator)
        if not self.denominator:
            raise DomainError("zero denominator")

    def normalized(self):
        """Reduce by the gcd and scale so the denominator's constant term is 1."""
        g = _poly_gcd(self.numerator, self.denominator) if self.numerator else self.denominator
        num = _poly_divmod(self.numerator, g)[0] if self.numerator else []
        den = _poly_divmod(self.denominator, g)[0]
        lead = den[0] if den[0] != 0 else den[-1]
        return UnivariateRational([c / lead for c in num], [c / lead for c in den])

    def expand(self, order):
        """Taylor coefficients c_0..c_order."""
        q = self.denominator
        if q[0] == 0:
            raise DomainError("denominator has zero constant term")
        p = self.numerator
        out = []
        for n in range(order + 1):
            acc = p[n] if n < len(p) else Fraction(0)
            for k in range(1, min(n, len(q) - 1) + 1):
                acc -= q[k] * out[n - k]
            out.append(acc / q[0])
        return out

    def __eq__(self, other):
        if isinstance(other, MultivariateRational):
            other = other.to_univariate()
        if not isinstance(other, UnivariateRational):
            return NotImplemented
        return _poly_mul(self.numerator, other.denominator) == _poly_mul(other.numerator, self.denominator)

    __hash__ = None

    def to_json(self):
        return {
            "numerator": [format_number(c) for c in self.numerator],
            "denominator": [format_number(c) for c in self.denominator],
        }

    def __str__(self):
        num = SparsePoly.from_coeffs(self.numerator)
        num_s = str(num)
        if len(num.terms) > 1:
            num_s = f"({num_s})"
        den = self.denominator
        k = 0
        while len(den) > 1:
            q, r = _poly_divmod(den, [1, -1])
            if r:
                break
            den, k = q, k + 1
        rest = SparsePoly.from_coeffs(den)
        pieces = []
        if rest != 1:
            pieces.append(f"({rest})")
        if k:
            pieces.append("(1-t)" if k == 1 else f"(1-t)^{k}")
        if not pieces:
            return num_s
        return f"{num_s}/{'*'.join(pieces)}"

    def __repr__(self):
        return f"UnivariateRational({self})"


def expand(f, order):
    """First ``order + 1`` Taylor coefficients of a univariate rational function."""
    if isinstance(f, MultivariateRational):
        f = f.to_univariate()
    return f.expand(order)


def berlekamp_massey(seq):
    """Shortest linear recurrence of ``seq`` over the rationals.

    Returns ``(C, L)`` with C[0] == 1 and sum_i C[i] * seq[n - i] == 0 for all L <= n.
    """
    s = [Fraction(x) for x in seq]
    C, B = [Fraction(1)], [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for n in range(len(s)):
        d = s[n]
        for i in range(1, L + 1):
            if i < len(C):
                d += C[i] * s[n - i]
        if d == 0:
            m += 1
            continue
        coef = d / b
        T = list(C)
        need = len(B) + m
        if len(C) < need:
            C = C + [Fraction(0)] * (need - len(C))
        for i, x in enumerate(B):
            C[i + m] -= coef * x
        if 2 * L <= n:
            L, B, b, m = n + 1 - L, T, d, 1
        else:
            m += 1
    C = (C + [Fraction(0)] * (L + 1))[: L + 1]
    return C, L


def rational_fit(coeffs, guard=5):
    """Guess p/q from a coefficient prefix; ``None`` when no fit is certified.

    The recurrence is detected on all but the last ``guard`` terms and must
    then reproduce every term of the prefix.
    """
    c = [Fraction(x) for x in coeffs]
    if len(c) < 2:
        raise DomainError("rational_fit needs at least two terms")
    if guard < 0:
        raise DomainError("guard must be nonnegative")
    train = c[: len(c) - guard]
    if not train:
        return None
    C, L = berlekamp_massey(train)
    if 2 * L + guard > len(c):
        return None
    num = _poly_mul(train[:L], C)[:L]
    fit = UnivariateRational(num, C).normalized()
    if fit.expand(len(c) - 1) != c:
        return None
    return fit
