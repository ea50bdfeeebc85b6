"""Finite groups as explicit Cayley tables, plus subgroups and 2-cocycles.

Elements are dense 0-based indices and the identity is always index 0.
``table[a][b]`` is the product "a then b"; words multiply left to right.
"""
from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import CocycleError, DomainError, GroupTableError

MAX_SYMMETRIC_DEGREE = 6


class FiniteGroup:
    """A finite group given by its multiplication table.

    Instances are immutable after construction and compare by identity.
    """

    def __init__(self, table, labels=None, name=None, check=True):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.table)
        self.name = name or f"G{self.order}"
        if labels is None:
            labels = [str(i) for i in range(self.order)]
        self.labels = tuple(labels)
        if check:
            _validate_table(self.table)
        self._inverse = _inverses(self.table)
        self._index_of_label = {lab: i for i, lab in enumerate(self.labels)}

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    def __len__(self):
        return self.order

    @property
    def identity(self):
        return 0

    @property
    def elements(self):
        return range(self.order)

    def _check(self, a):
        if not 0 <= a < self.order:
            raise DomainError(f"element index {a} out of range for group of order {self.order}")

    def multiply(self, a, b):
        self._check(a)
        self._check(b)
        return self.table[a][b]

    def inverse(self, a):
        self._check(a)
        return self._inverse[a]

    def element_order(self, a):
        self._check(a)
        n, x = 1, a
        while x != 0:
            x = self.table[x][a]
            n += 1
        return n

    def product(self, word):
        """Left-to-right product of a sequence of elements."""
        x = 0
        for w in word:
            x = self.table[x][w]
        return x

    def power(self, a, k):
        x = 0
        for _ in range(k % self.element_order(a)):
            x = self.table[x][a]
        return x

    def is_abelian(self):
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def parse_element(self, token):
        """Resolve an element from an index or one of the group's labels."""
        token = token.strip()
        if token in self._index_of_label:
            return self._index_of_label[token]
        try:
            a = int(token)
        except ValueError:
            raise DomainError(f"unknown element {token!r} in {self.name}") from None
        self._check(a)
        return a


def _validate_table(table):
    m = len(table)
    if m == 0:
        raise GroupTableError("empty table")
    for row in table:
        if len(row) != m:
            raise GroupTableError("table is not square")
        for x in row:
            if not 0 <= x < m:
                raise GroupTableError(f"table entry {x} out of range")
    if list(table[0]) != list(range(m)) or [row[0] for row in table] != list(range(m)):
        raise GroupTableError("row and column 0 must be the identity")
    for a in range(m):
        if 0 not in table[a]:
            raise GroupTableError(f"element {a} has no right inverse")
        b = table[a].index(0)
        if table[b][a] != 0:
            raise GroupTableError(f"element {a} has no two-sided inverse")
    for a in range(m):
        row_a = table[a]
        for b in range(m):
            composed = [row_a[x] for x in table[b]]
            if composed != list(table[row_a[b]]):
                c = next(c for c in range(m) if composed[c] != table[row_a[b]][c])
                raise GroupTableError(f"table is not associative at ({a}, {b}, {c})")


def _inverses(table):
    inv = []
    for a, row in enumerate(table):
        try:
            inv.append(row.index(0))
        except ValueError:
            raise GroupTableError(f"element {a} has no inverse") from None
    return tuple(inv)


# -- builtin families --------------------------------------------------------

def cyclic(n):
    if n < 1:
        raise DomainError("cyclic group needs n >= 1")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    labels = ["e", "a"] + [f"a{k}" for k in range(2, n)]
    return FiniteGroup(table, labels[:n], name=f"C{n}", check=False)


def dihedral(n):
    """Dihedral group of order 2n; index k + n*j stands for r^k s^j."""
    if n < 1:
        raise DomainError("dihedral group needs n >= 1")

    def mul(x, y):
        k1, j1 = x % n, x // n
        k2, j2 = y % n, y // n
        k = (k1 + (-k2 if j1 else k2)) % n
        return k + n * (j1 ^ j2)

    table = [[mul(x, y) for y in range(2 * n)] for x in range(2 * n)]
    rot = ["", "r"] + [f"r{k}" for k in range(2, n)]
    labels = [rot[k] or "e" for k in range(n)] + [rot[k] + "s" for k in range(n)]
    return FiniteGroup(table, labels, name=f"D{n}", check=False)


def _cycle_label(p):
    seen, parts = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(str(j))
            j = p[j]
        parts.append("(" + "".join(cyc) + ")")
    return "".join(parts) or "e"


def symmetric(n):
    """Permutations of {0..n-1} in lexicographic order; a*b applies a first."""
    if not 1 <= n <= MAX_SYMMETRIC_DEGREE:
        raise DomainError(f"symmetric groups are limited to 1 <= n <= {MAX_SYMMETRIC_DEGREE}")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(b[a[i]] for i in range(n))] for b in perms] for a in perms]
    return FiniteGroup(table, [_cycle_label(p) for p in perms], name=f"S{n}", check=False)


def quaternion8():
    # units 1, i, j, k as 0..3; element index = 2*unit + (sign bit)
    unit_mul = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def mul(x, y):
        s, u = unit_mul[x // 2, y // 2]
        neg = (x % 2) ^ (y % 2) ^ (s < 0)
        return 2 * u + neg

    table = [[mul(x, y) for y in range(8)] for x in range(8)]
    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return FiniteGroup(table, labels, name="Q8", check=False)


def direct_product(G, H):
    """Index a*|H| + b stands for the pair (a, b)."""
    m = H.order
    table = [
        [G.table[x // m][y // m] * m + H.table[x % m][y % m] for y in range(G.order * m)]
        for x in range(G.order * m)
    ]
    labels = [f"{ga}:{hb}" for ga in G.labels for hb in H.labels]
    return FiniteGroup(table, labels, name=f"{G.name}x{H.name}", check=False)


_FACTOR = re.compile(r"^(?:(C|D|S)(\d+)|(Q8))$")


def _make_factor(token):
    m = _FACTOR.match(token)
    if not m:
        raise DomainError(f"unknown group family {token!r}")
    if m.group(3):
        return quaternion8()
    family, n = m.group(1), int(m.group(2))
    return {"C": cyclic, "D": dihedral, "S": symmetric}[family](n)


def read_table(path):
    """Read a Cayley-table file: order on the first line, then the rows."""
    lines = [ln.split() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise GroupTableError(f"{path}: empty table file")
    try:
        m = int(lines[0][0])
        rows = [[int(x) for x in ln] for ln in lines[1:]]
    except ValueError as exc:
        raise GroupTableError(f"{path}: malformed table ({exc})") from None
    if m < 1 or len(rows) != m:
        raise GroupTableError(f"{path}: expected {m} rows, found {len(rows)}")
    return FiniteGroup(rows, name=f"table:{path}")


def make_group(spec):
    """Build a group from a spec such as ``C4``, ``S3``, ``C2xC2`` or ``table:path``."""
    spec = spec.strip()
    if spec.startswith("table:"):
        return read_table(spec[len("table:"):])
    factors = [_make_factor(tok) for tok in spec.split("x")]
    return functools.reduce(direct_product, factors)


# -- subgroups ----------------------------------------------------------------

@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elements: tuple

    @property
    def order(self):
        return len(self.elements)

    def __contains__(self, a):
        return a in self._members

    @functools.cached_property
    def _members(self):
        return frozenset(self.elements)


def generated_subgroup(G, S):
    gens = sorted(set(S))
    for g in gens:
        G._check(g)
    t = G.table
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = t[x][g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, tuple(sorted(seen)))


@functools.lru_cache(maxsize=None)
def commutator_subgroup(G):
    t, inv = G.table, G._inverse
    comms = {t[t[t[g][h]][inv[g]]][inv[h]] for g in G.elements for h in G.elements}
    return generated_subgroup(G, comms)


@functools.lru_cache(maxsize=None)
def abelianization_map(G):
    """Label of g is the smallest index in the coset gG'."""
    Gp = commutator_subgroup(G).elements
    labels = [None] * G.order
    for g in G.elements:
        if labels[g] is None:
            coset = [G.table[g][h] for h in Gp]
            lab = min(coset)
            for x in coset:
                labels[x] = lab
    return tuple(labels)


# -- 2-cocycles ---------------------------------------------------------------

@dataclass(frozen=True)
class Cocycle:
    parent: FiniteGroup
    values: tuple

    def __call__(self, g, h):
        return self.values[g][h]


def check_cocycle(G, values):
    """Validate a candidate 2-cocycle and return it as a :class:`Cocycle`."""
    vals = tuple(tuple(Fraction(v) for v in row) for row in values)
    m = G.order
    if len(vals) != m or any(len(row) != m for row in vals):
        raise CocycleError(f"cocycle table must be {m}x{m}")
    for g in range(m):
        for h in range(m):
            if vals[g][h] == 0:
                raise CocycleError(f"cocycle value at ({g}, {h}) is zero", (g, h))
    for g in range(m):
        if vals[0][g] != 1 or vals[g][0] != 1:
            raise CocycleError(f"cocycle not normalized at element {g}", (0, g))
    t = G.table
    for g in range(m):
        for h in range(m):
            gh = t[g][h]
            for k in range(m):
                if vals[g][h] * vals[gh][k] != vals[g][t[h][k]] * vals[h][k]:
                    raise CocycleError(f"cocycle condition fails at ({g}, {h}, {k})", (g, h, k))
    return Cocycle(G, vals)


def trivial_cocycle(G):
    return Cocycle(G, tuple((Fraction(1),) * G.order for _ in range(G.order)))


def klein_sign_cocycle(G):
    """alpha((a1,a2),(b1,b2)) = (-1)^(a2*b1) on C2xC2; the twisted algebra is M_2."""
    if G.name != "C2xC2":
        raise DomainError("the sign cocycle is defined for the builtin C2xC2")
    vals = [[Fraction(-1) if (x % 2) and (y // 2) else Fraction(1) for y in range(4)] for x in range(4)]
    return check_cocycle(G, vals)


def read_cocycle(path, G):
    rows = [ln.split() for ln in Path(path).read_text().splitlines() if ln.strip()]
    try:
        vals = [[Fraction(x) for x in row] for row in rows]
    except (ValueError, ZeroDivisionError) as exc:
        raise CocycleError(f"{path}: malformed cocycle value ({exc})") from None
    return check_cocycle(G, vals)
