"""Finite-dimensional G-graded algebras, generic elements and graded identities.

The relatively free algebra of a finite-dimensional graded algebra A is
realized by generic elements z_j = sum_i t_{j,i} v_i, where i runs over the
basis vectors of degree g_j and each generator slot j has its own family of
commuting indeterminates.  Dimensions of multidegree pieces are ranks of the
spans of word evaluations.
"""
from __future__ import annotations

import itertools
import json
import random
from fractions import Fraction
from pathlib import Path

from .errors import DomainError
from .groups import make_group
from .linalg import EchelonBasis, rank
from .ratfun import SparsePoly, format_number

EXACT = "exact"
PROBABILISTIC = "probabilistic"
EXACT_LIMIT = 6
RANDOM_RANGE = 2 ** 20


class GradedAlgebraSpec:
    """Structure constants v_i v_j = sum_k c[i,j][k] v_k over Q, with deg v_i = grading[i]."""

    def __init__(self, group, grading, structure, labels=None, check=True):
        self.group = group
        self.grading = tuple(int(g) for g in grading)
        self.dim = len(self.grading)
        for g in self.grading:
            group._check(g)
        self.structure = {}
        for (i, j), row in dict(structure).items():
            row = {int(k): Fraction(c) for k, c in dict(row).items() if c}
            if row:
                self.structure[int(i), int(j)] = row
        self.labels = tuple(labels) if labels else tuple(f"v{i}" for i in range(self.dim))
        if check:
            self._validate()

    def _validate(self):
        m, G = self.dim, self.group
        for (i, j), row in self.structure.items():
            if not (0 <= i < m and 0 <= j < m):
                raise DomainError(f"structure entry ({i}, {j}) out of range")
            for k in row:
                if not 0 <= k < m:
                    raise DomainError(f"structure target {k} out of range")
                if self.grading[k] != G.table[self.grading[i]][self.grading[j]]:
                    raise DomainError(f"v{i}*v{j} has a component on v{k} of the wrong degree")
        for i, j, k in itertools.product(range(m), repeat=3):
            left = self.multiply(self.multiply(self.basis(i), self.basis(j)), self.basis(k))
            right = self.multiply(self.basis(i), self.multiply(self.basis(j), self.basis(k)))
            if left != right:
                raise DomainError(f"structure constants are not associative at ({i}, {j}, {k})")

    def basis(self, i):
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return v

    def basis_of_degree(self, g):
        return [i for i, d in enumerate(self.grading) if d == g]

    def multiply(self, x, y, zero=Fraction(0)):
        """Product of two coordinate vectors (entries may be numbers or SparsePolys)."""
        out = [zero] * self.dim
        for (i, j), row in self.structure.items():
            xi, yj = x[i], y[j]
            if not xi or not yj:
                continue
            prod = xi * yj
            for k, c in row.items():
                out[k] = out[k] + prod * c
        return out

    def permuted(self, perm):
        """Copy with basis vector i renamed to perm[i]."""
        grading = [None] * self.dim
        for i, p in enumerate(perm):
            grading[p] = self.grading[i]
        structure = {
            (perm[i], perm[j]): {perm[k]: c for k, c in row.items()}
            for (i, j), row in self.structure.items()
        }
        return GradedAlgebraSpec(self.group, grading, structure)

    def to_json(self):
        entries = [
            [i, j, k, format_number(c)]
            for (i, j), row in sorted(self.structure.items())
            for k, c in sorted(row.items())
        ]
        return {"dim": self.dim, "grading": list(self.grading), "structure": entries,
                "group": self.group.name}

    @classmethod
    def from_json(cls, data, group=None):
        if group is None:
            if "group" not in data:
                raise DomainError("algebra file has no group; supply one explicitly")
            group = make_group(data["group"])
        dim = int(data["dim"])
        grading = data["grading"]
        if len(grading) != dim:
            raise DomainError(f"grading has {len(grading)} entries, dim is {dim}")
        structure = {}
        for entry in data["structure"]:
            i, j, k, c = entry
            structure.setdefault((i, j), {})[k] = Fraction(str(c))
        return cls(group, grading, structure)


def load_algebra(path, group=None):
    return GradedAlgebraSpec.from_json(json.loads(Path(path).read_text()), group)


def group_algebra_spec(G, alpha=None):
    """Twisted group algebra with u_g u_h = alpha(g,h) u_{gh} (alpha = 1 if absent)."""
    if alpha is not None and alpha.parent is not G:
        raise DomainError("cocycle belongs to a different group")
    structure = {}
    for g in G.elements:
        for h in G.elements:
            c = alpha(g, h) if alpha is not None else 1
            structure[g, h] = {G.table[g][h]: c}
    labels = [f"u[{lab}]" for lab in G.labels]
    return GradedAlgebraSpec(G, G.elements, structure, labels)


def elementary_matrix_spec(G, degrees):
    """M_n(Q) with the elementary grading deg e_ij = degrees[i]^-1 * degrees[j]."""
    n = len(degrees)
    grading = [G.table[G.inverse(degrees[i])][degrees[j]] for i in range(n) for j in range(n)]
    structure = {}
    for i, j, l in itertools.product(range(n), repeat=3):
        structure[i * n + j, j * n + l] = {i * n + l: 1}
    labels = [f"e{i}{j}" for i in range(n) for j in range(n)]
    return GradedAlgebraSpec(G, grading, structure, labels)


# -- generic elements ---------------------------------------------------------------

def generic_element(spec, slot, g, nslots):
    """z for generator ``slot`` of degree g; variable slot*dim + i stands for t_{slot,i}."""
    m = spec.dim
    nvars = nslots * m
    zero = SparsePoly({}, nvars)
    return [SparsePoly.variable(slot * m + i, nvars) if spec.grading[i] == g else zero
            for i in range(m)]


def words_of(A):
    """All distinct words with letter i used A[i] times."""
    A = list(A)
    n = sum(A)
    word = []

    def rec():
        if len(word) == n:
            yield tuple(word)
            return
        for i, a in enumerate(A):
            if a:
                A[i] -= 1
                word.append(i)
                yield from rec()
                word.pop()
                A[i] += 1

    yield from rec()


def choose_mode(A, mode=None):
    if mode is None:
        return EXACT if sum(A) <= EXACT_LIMIT else PROBABILISTIC
    if mode not in (EXACT, PROBABILISTIC):
        raise DomainError(f"unknown mode {mode!r}")
    return mode


def component_dimension_generic(spec, omega, A, g=None, mode=None, seed=0):
    """Dimension of the span of all monomials of multidegree A in the generic elements.

    With ``g`` only monomials of G-degree g are spanned.  Probabilistic mode
    evaluates at random integer points and returns a lower bound that is
    exact with high probability.
    """
    A = tuple(int(a) for a in A)
    if len(A) != omega.rank:
        raise DomainError(f"multidegree has {len(A)} entries, grading tuple has {omega.rank}")
    if omega.group is not spec.group and omega.group.table != spec.group.table:
        raise DomainError("grading tuple and algebra use different groups")
    G = spec.group
    if not any(A):
        # the empty word: the unit, in the e-component
        return 1 if g in (None, 0) else 0
    words = [w for w in words_of(A)
             if g is None or G.product(omega.degrees[i] for i in w) == g]
    if not words:
        return 0
    if choose_mode(A, mode) == EXACT:
        return _exact_rank(spec, omega, words)
    return _probabilistic_rank(spec, omega, words, random.Random(seed))


def _exact_rank(spec, omega, words):
    r = omega.rank
    zs = [generic_element(spec, j, omega.degrees[j], r) for j in range(r)]
    zero = SparsePoly({}, r * spec.dim)
    rows = []
    for w in words:
        val = zs[w[0]]
        for j in w[1:]:
            val = spec.multiply(val, zs[j], zero)
        rows.append({(k, e): c for k, p in enumerate(val) for e, c in p.terms.items()})
    cols = sorted({key for row in rows for key in row})
    return rank([[row.get(key, 0) for key in cols] for row in rows])


def _probabilistic_rank(spec, omega, words, rng):
    r, m = omega.rank, spec.dim
    basis = EchelonBasis(len(words))
    slots = [spec.basis_of_degree(omega.degrees[j]) for j in range(r)]
    misses = 0
    while len(basis) < len(words) and misses < 2:
        point = [{i: Fraction(rng.randint(1, RANDOM_RANGE)) for i in slots[j]} for j in range(r)]
        zs = []
        for j in range(r):
            z = [Fraction(0)] * m
            for i, t in point[j].items():
                z[i] = t
            zs.append(z)
        values = []
        for w in words:
            val = zs[w[0]]
            for j in w[1:]:
                val = spec.multiply(val, zs[j])
            values.append(val)
        grew = False
        for k in range(m):
            if basis.add([values[x][k] for x in range(len(words))]):
                grew = True
        misses = 0 if grew else misses + 1
    return len(basis)


# -- multilinear polynomials and identities ---------------------------------------------

def _sign(perm):
    inv = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    return -1 if inv % 2 else 1


class MultilinearGradedPoly:
    """Linear combination of orderings of the variable slots 0..n-1.

    ``slot_degrees[s]`` is the G-degree of variable x_s; a term (word, c)
    stands for c * x_{word[0]} x_{word[1]} ...
    """

    def __init__(self, slot_degrees, terms):
        self.slot_degrees = tuple(slot_degrees)
        n = len(self.slot_degrees)
        out = {}
        for word, c in dict(terms).items():
            word = tuple(word)
            if sorted(word) != list(range(n)):
                raise DomainError(f"term {word} is not multilinear in {n} slots")
            out[word] = out.get(word, 0) + Fraction(c)
        self.terms = {w: c for w, c in out.items() if c}

    @classmethod
    def monomial(cls, slot_degrees, word=None, coeff=1):
        word = tuple(range(len(slot_degrees))) if word is None else tuple(word)
        return cls(slot_degrees, {word: coeff})

    def _combine(self, other, sign):
        if other.slot_degrees != self.slot_degrees:
            raise DomainError("polynomials use different variable sets")
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + sign * c
        return MultilinearGradedPoly(self.slot_degrees, terms)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rmul__(self, c):
        return MultilinearGradedPoly(self.slot_degrees, {w: c * v for w, v in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, MultilinearGradedPoly)
                and self.slot_degrees == other.slot_degrees and self.terms == other.terms)

    __hash__ = None

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        parts = [f"{format_number(c)}*" + "".join(f"x{s}" for s in w) for w, c in sorted(self.terms.items())]
        return " + ".join(parts) or "0"


def alternate(h, slots):
    """Signed sum of h over all permutations of the given same-degree slots."""
    slots = sorted(set(slots))
    n = len(h.slot_degrees)
    for s in slots:
        if not 0 <= s < n:
            raise DomainError(f"slot {s} out of range")
    if len({h.slot_degrees[s] for s in slots}) > 1:
        raise DomainError("alternated slots must share one degree")
    terms = {}
    for sigma in itertools.permutations(slots):
        sign = _sign([slots.index(s) for s in sigma])
        relabel = dict(zip(slots, sigma))
        for w, c in h.terms.items():
            w2 = tuple(relabel.get(s, s) for s in w)
            terms[w2] = terms.get(w2, 0) + sign * c
    return MultilinearGradedPoly(h.slot_degrees, terms)


def evaluate(spec, f, values):
    """f with x_s replaced by the algebra element values[s]."""
    out = [Fraction(0)] * spec.dim
    for w, c in f.terms.items():
        val = values[w[0]]
        for s in w[1:]:
            val = spec.multiply(val, values[s])
        out = [a + c * b for a, b in zip(out, val)]
    return out


def is_graded_identity(spec, f):
    """Check f on every assignment of homogeneous basis vectors (enough by multilinearity)."""
    choices = [spec.basis_of_degree(g) for g in f.slot_degrees]
    if any(not ch for ch in choices):
        return True
    for assignment in itertools.product(*choices):
        values = [spec.basis(i) for i in assignment]
        if any(evaluate(spec, f, values)):
            return False
    return True
