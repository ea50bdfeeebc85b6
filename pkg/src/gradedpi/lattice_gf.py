"""Rational generating functions from upward-closed sets of multidegrees.

|N(A)| is monotone in A, so each level set U_lam = {A : |N(A)| >= lam} is
upward closed and is described by its finite antichain of minimal points.
Summing the generating functions of U_1, ..., U_{|G'|} gives the total
multivariate Hilbert series of the relatively free algebra of FG.

For a single component g the indicator [g in N(A)] is not monotone, but it is
invariant under adding ord(g_i) copies of g_i.  Splitting the lattice into
residue classes A = rho + o*k makes each class an upward-closed set in k.

Minimal points are searched inside a finite box and the result is checked in
two ways: stability of the predicate across the outer shell of the box, and
random sampling outside the box.  A result passing both is labelled
"certified-in-box"; this is evidence, not a proof.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .errors import DomainError
from .groups import commutator_subgroup
from .product_sets import precedes, table_for
from .ratfun import MultivariateRational, SparsePoly, rational_fit

DEFAULT_SAMPLES = 200
DEFAULT_SEED = 0
CERTIFIED = "certified-in-box"
UNCERTIFIED = "uncertified"
FITTED = "fitted"
UNFITTED = "unfitted"


def default_box(group):
    return 2 * group.order


@dataclass(frozen=True)
class UpwardSet:
    dimension: int
    minimals: tuple

    def __post_init__(self):
        mins = tuple(sorted(set(tuple(m) for m in self.minimals)))
        for a, b in itertools.permutations(mins, 2):
            if precedes(a, b):
                raise DomainError(f"{a} and {b} are comparable; minimals must form an antichain")
        object.__setattr__(self, "minimals", mins)

    def __contains__(self, A):
        return any(precedes(m, A) for m in self.minimals)

    def is_empty(self):
        return not self.minimals


@dataclass
class CertificationReport:
    label: str
    bounds: tuple
    minimals: int
    shell_points: int = 0
    shell_failures: int = 0
    samples: int = 0
    sample_mismatches: int = 0

    @property
    def status(self):
        if self.shell_failures == 0 and self.sample_mismatches == 0:
            return CERTIFIED
        return UNCERTIFIED

    def to_json(self):
        return {
            "label": self.label,
            "bounds": list(self.bounds),
            "minimals": self.minimals,
            "shell_points": self.shell_points,
            "shell_failures": self.shell_failures,
            "samples": self.samples,
            "sample_mismatches": self.sample_mismatches,
            "status": self.status,
        }


@dataclass
class HilbertResult:
    closed_form: MultivariateRational | None
    status: str
    reports: list = field(default_factory=list)
    fitted: object = None
    coefficients: list | None = None


def _box_points(bounds):
    return itertools.product(*(range(b + 1) for b in bounds))


def _minimal_points(pred, bounds):
    out = []
    for A in _box_points(bounds):
        if not pred(A):
            continue
        if all(not pred(A[:i] + (A[i] - 1,) + A[i + 1:]) for i in range(len(A)) if A[i]):
            out.append(A)
    return out


def _certify(pred, U, bounds, label, samples, rng):
    report = CertificationReport(label, tuple(bounds), len(U.minimals))
    for A in _box_points(bounds):
        for i, b in enumerate(bounds):
            if A[i] == b and b > 0:
                report.shell_points += 1
                if pred(A) != pred(A[:i] + (b - 1,) + A[i + 1:]):
                    report.shell_failures += 1
    for _ in range(samples):
        A = tuple(rng.randint(0, 2 * b) for b in bounds)
        report.samples += 1
        if (A in U) != pred(A):
            report.sample_mismatches += 1
    return report


def level_set_minimals(omega, lam, box=None, samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED):
    """Minimal points of {A : |N(A)| >= lam} inside [0, box]^r, with a certification report."""
    # levels above |G'| are allowed and give the empty set
    if lam < 1:
        raise DomainError(f"level {lam} must be at least 1")
    box = default_box(omega.group) if box is None else box
    if box < 1:
        raise DomainError("box bound must be at least 1")
    tab = table_for(omega)

    def pred(A):
        return tab.size(A) >= lam

    bounds = (box,) * omega.rank
    rng = random.Random(seed)
    label = f"level {lam}"
    top = commutator_subgroup(omega.group).order
    if lam == 1 or lam > top:
        # |N(A)| always lies in 1..|G'|, so these levels need no scan or sampling
        U = UpwardSet(omega.rank, [(0,) * omega.rank] if lam == 1 else [])
        return U, CertificationReport(label, bounds, len(U.minimals))
    U = UpwardSet(omega.rank, _minimal_points(pred, bounds))
    return U, _certify(pred, U, bounds, label, samples, rng)


def _joins(minimals):
    """Signed joins from inclusion-exclusion: [A in U] = sum c * [A >= j]."""
    joins = {}
    for m in minimals:
        new = {m: 1}
        for j, c in joins.items():
            jm = tuple(max(a, b) for a, b in zip(j, m))
            new[jm] = new.get(jm, 0) - c
        for j, c in new.items():
            total = joins.get(j, 0) + c
            if total:
                joins[j] = total
            else:
                joins.pop(j, None)
    return joins


def upward_gf(U):
    """Sum of t^A over an upward-closed set, as a rational function."""
    r = U.dimension
    num = SparsePoly(_joins(U.minimals), r)
    return MultivariateRational(num, {_unit(i, r): 1 for i in range(r)}).cleared()


def _unit(i, r):
    return tuple(1 if j == i else 0 for j in range(r))


def hilbert_gf_total(omega, box=None, samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED):
    """Multivariate Hilbert series of F<x>/id_G(FG) as a sum over level sets."""
    r = omega.rank
    top = commutator_subgroup(omega.group).order
    num = SparsePoly({}, r)
    reports = []
    for lam in range(1, top + 1):
        U, rep = level_set_minimals(omega, lam, box, samples, seed)
        reports.append(rep)
        num = num + SparsePoly(_joins(U.minimals), r)
    form = MultivariateRational(num, {_unit(i, r): 1 for i in range(r)}).cleared()
    status = CERTIFIED if all(rep.status == CERTIFIED for rep in reports) else UNCERTIFIED
    return HilbertResult(form, status, reports)


def hilbert_gf_component(omega, g, box=None, samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED,
                         terms=30, guard=8):
    """Hilbert series of the g-component.

    Returns a closed form when every residue class certifies; otherwise
    exact univariate coefficients up to ``terms`` and a fitted rational
    function (status "fitted"), or "unfitted" when no fit verifies.
    """
    G = omega.group
    G._check(g)
    r = omega.rank
    box = default_box(G) if box is None else box
    if box < 1:
        raise DomainError("box bound must be at least 1")
    tab = table_for(omega)
    periods = tuple(G.element_order(x) for x in omega.degrees)
    kbounds = tuple(max(1, -(-box // o)) for o in periods)
    rng = random.Random(seed)

    num = {}
    reports = []
    for rho in itertools.product(*(range(o) for o in periods)):
        def pred(k, rho=rho):
            A = tuple(p + o * x for p, o, x in zip(rho, periods, k))
            return (tab.mask(A) >> g) & 1 == 1

        U = UpwardSet(r, _minimal_points(pred, kbounds))
        reports.append(_certify(pred, U, kbounds, f"residue {rho}", samples, rng))
        for j, c in _joins(U.minimals).items():
            e = tuple(p + o * x for p, o, x in zip(rho, periods, j))
            num[e] = num.get(e, 0) + c

    if all(rep.status == CERTIFIED for rep in reports):
        den = {tuple(o if j == i else 0 for j in range(r)): 1 for i, o in enumerate(periods)}
        form = MultivariateRational(SparsePoly(num, r), den).cleared()
        return HilbertResult(form, CERTIFIED, reports)

    coeffs = dp_series(omega, terms, g)
    fit = rational_fit(coeffs, guard)
    return HilbertResult(None, FITTED if fit is not None else UNFITTED, reports, fit, coeffs)


def binomial_series(k):
    """1/(1-t)^k, whose n-th coefficient is C(n+k-1, k-1)."""
    if k < 1:
        raise DomainError("binomial_series needs k >= 1")
    return MultivariateRational(SparsePoly.constant(1, 1), {(1,): k})


def specialize_univariate(f):
    return f.specialize().cleared()


# -- direct coefficients ----------------------------------------------------------

def compositions(n, r):
    """All multidegrees of total n in r parts, in lex order."""
    if r == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in compositions(n - first, r - 1):
            yield (first,) + rest


def dp_series(omega, order, g=None):
    """Univariate coefficients sum_{|A|=n} |N(A)| (or [g in N(A)]) for n = 0..order."""
    tab = table_for(omega)
    out = []
    for n in range(order + 1):
        if g is None:
            out.append(sum(tab.size(A) for A in compositions(n, omega.rank)))
        else:
            out.append(sum((tab.mask(A) >> g) & 1 for A in compositions(n, omega.rank)))
    return out
