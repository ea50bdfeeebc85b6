"""Exact rank computations over the rationals."""
from __future__ import annotations

import math
from fractions import Fraction


def _integer_rows(rows):
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def rank(rows):
    """Rank of a rational matrix by fraction-free (Bareiss) elimination."""
    M = _integer_rows(rows)
    if not M:
        return 0
    nrows, ncols = len(M), len(M[0])
    r, prev = 0, 1
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        for i in range(r + 1, nrows):
            a = M[i][c]
            row_i, row_r = M[i], M[r]
            for j in range(c + 1, ncols):
                row_i[j] = (row_i[j] * piv - a * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        r += 1
    return r


class EchelonBasis:
    """Incrementally maintained row-echelon basis of a subspace of Q^n."""

    def __init__(self, n):
        self.n = n
        self.rows = {}  # pivot column -> row with 1 at the pivot

    def __len__(self):
        return len(self.rows)

    def add(self, vec):
        """Insert a vector; return True when it enlarges the span."""
        v = [Fraction(x) for x in vec]
        for c, row in self.rows.items():
            if v[c]:
                f = v[c]
                v = [a - f * b for a, b in zip(v, row)]
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return False
        inv = 1 / v[piv]
        self.rows[piv] = [x * inv for x in v]
        return True
