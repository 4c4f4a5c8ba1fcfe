"""Exact linear algebra over any field whose elements support ``+ - * /``
and truthiness (Fraction, GaussianRational, RationalFunction).

Rows are kept sparse (``dict`` column -> value); dense inputs are accepted
everywhere and converted.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

Row = dict


def _sparse(row) -> Row:
    if isinstance(row, dict):
        return {k: v for k, v in row.items() if v}
    return {k: v for k, v in enumerate(row) if v}


def rref(rows, ncols: int, pivot_key: Callable | None = None):
    """Reduced row echelon form.

    Returns ``(reduced_rows, pivot_columns)``; ``reduced_rows[r]`` has a 1 at
    ``pivot_columns[r]`` and zeros at every other pivot column.  ``pivot_key``
    ranks candidate pivots (lower is preferred) among the rows with a nonzero
    entry in the current column; the default takes the first such row.
    """
    work = [_sparse(r) for r in rows]
    work = [r for r in work if r]
    pivots: list[int] = []
    done: list[Row] = []
    for col in range(ncols):
        cands = [i for i, r in enumerate(work) if col in r]
        if not cands:
            continue
        if pivot_key is not None:
            best = min(cands, key=lambda i: pivot_key(work[i][col]))
        else:
            best = cands[0]
        prow = work.pop(best)
        inv = 1 / prow[col]
        prow = {k: v * inv for k, v in prow.items()}
        new_work = []
        for r in work:
            f = r.get(col)
            if f:
                r = dict(r)
                for k, v in prow.items():
                    nv = r.get(k, 0) - f * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
            if r:
                new_work.append(r)
        work = new_work
        for j, r in enumerate(done):
            f = r.get(col)
            if f:
                r = dict(r)
                for k, v in prow.items():
                    nv = r.get(k, 0) - f * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
                done[j] = r
        done.append(prow)
        pivots.append(col)
        if not work:
            break
    return done, pivots


def rank(rows, ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols: int, zero=Fraction(0), one=Fraction(1), pivot_key=None):
    """Basis of {x : A x = 0}; one vector per free column, with 1 there and 0
    at the other free columns."""
    red, pivots = rref(rows, ncols, pivot_key)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [zero] * ncols
        v[f] = one
        for r, p in zip(red, pivots):
            c = r.get(f)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


def solve(rows, rhs: Sequence, ncols: int, zero=Fraction(0)):
    """One solution of ``A x = b`` (free variables set to zero) or ``None``."""
    aug = []
    for r, b in zip(rows, rhs):
        s = _sparse(r)
        if b:
            s[ncols] = b
        aug.append(s)
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [zero] * ncols
    for r, p in zip(red, pivots):
        c = r.get(ncols)
        if c:
            x[p] = c
    return x


def inverse(matrix: Sequence[Sequence], zero=Fraction(0), one=Fraction(1)):
    n = len(matrix)
    aug = []
    for i, row in enumerate(matrix):
        s = _sparse(row)
        s[n + i] = one
        aug.append(s)
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("singular matrix")
    return [[r.get(n + j, zero) for j in range(n)] for r in red[:n]]


def det(matrix: Sequence[Sequence], one=Fraction(1)):
    """Determinant by elimination (field entries)."""
    n = len(matrix)
    m = [list(r) for r in matrix]
    d = one
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return d * 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d = d * m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            f = m[r][c]
            if f:
                f = f * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return d


def matmul(a, b):
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), 0 * row[0]) for col in cols] for row in a]


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v)), 0 * row[0]) for row in a]


def identity(n: int, one=Fraction(1), zero=Fraction(0)):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(r) for r in zip(*a)]


class Subspace:
    """Subspace of K^n stored as a reduced echelon basis."""

    def __init__(self, ambient_dim: int, vectors=()):
        self.ambient_dim = ambient_dim
        red, pivots = rref(list(vectors), ambient_dim)
        self._rows = red
        self.pivots = tuple(pivots)

    @property
    def dim(self) -> int:
        return len(self._rows)

    def basis(self, zero=Fraction(0)) -> list[list]:
        return [[r.get(k, zero) for k in range(self.ambient_dim)] for r in self._rows]

    @property
    def rows(self) -> list[Row]:
        return [dict(r) for r in self._rows]

    def reduce(self, v) -> Row:
        """Remainder of ``v`` modulo the subspace (zero iff ``v`` is inside)."""
        s = _sparse(v)
        for r, p in zip(self._rows, self.pivots):
            f = s.get(p)
            if f:
                for k, c in r.items():
                    nv = s.get(k, 0) - f * c
                    if nv:
                        s[k] = nv
                    else:
                        s.pop(k, None)
        return s

    def __contains__(self, v) -> bool:
        return not self.reduce(v)

    def contains_subspace(self, other: Subspace) -> bool:
        return all(r in self for r in other.rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.pivots == other.pivots
                and self._rows == other._rows)

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"

    def annihilator(self) -> Subspace:
        """Annihilator in the dual space (coordinates in the dual basis)."""
        return Subspace(self.ambient_dim, nullspace(self._rows, self.ambient_dim))
