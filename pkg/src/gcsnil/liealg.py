"""Lie algebras given by structure constants.

Brackets are stored sparsely for ``i < j`` only: ``[X_i, X_j] = sum_k C[i,j][k] X_k``.
A ``BasisChange`` matrix ``T`` lists the new basis vectors as columns in old
coordinates, ``Y_j = sum_i T[i][j] X_i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .linalg import Subspace


class JacobiError(ValueError):
    def __init__(self, triple, residual):
        self.triple = triple
        self.residual = residual
        terms = ", ".join(f"{k}: {v}" for k, v in sorted(residual.items()))
        super().__init__(f"Jacobi identity fails on basis triple {triple}: residual {{{terms}}}")


class NotNilpotentError(ValueError):
    pass


class LieAlgebra:
    """Finite-dimensional Lie algebra over Q.

    ``brackets`` maps ``(i, j)`` to ``{k: coefficient}``.  Pairs with ``i > j``
    are flipped with a sign; ``i == j`` is rejected.  Construction does not
    check the Jacobi identity; ``validate`` does.
    """

    def __init__(self, dim: int, brackets: Mapping | None = None,
                 labels: Sequence[str] | None = None, name: str | None = None):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        self.labels = tuple(labels) if labels else tuple(f"X{i}" for i in range(dim))
        if len(self.labels) != dim:
            raise ValueError("label count does not match dimension")
        self.name = name
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), out in (brackets or {}).items():
            if i == j:
                raise ValueError(f"bracket [X{i}, X{i}] must vanish")
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"bracket index out of range: ({i}, {j})")
            row = table.setdefault((i, j), {})
            for k, c in out.items():
                if not 0 <= k < dim:
                    raise ValueError(f"bracket output index {k} out of range")
                c = Fraction(c) * sign
                row[k] = row.get(k, Fraction(0)) + c
        self._brackets = {p: {k: c for k, c in row.items() if c}
                          for p, row in table.items()}
        self._brackets = {p: row for p, row in self._brackets.items() if row}
        self._cache: dict = {}

    # access ---------------------------------------------------------------
    @property
    def constants(self) -> dict[tuple[int, int, int], Fraction]:
        """Sparse structure constants ``(i, j, k) -> C^k_{ij}`` with ``i < j``."""
        return {(i, j, k): c for (i, j), row in sorted(self._brackets.items())
                for k, c in sorted(row.items())}

    @property
    def brackets(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        return {p: dict(row) for p, row in sorted(self._brackets.items())}

    def bracket_basis(self, i: int, j: int) -> dict[int, Fraction]:
        if i == j:
            return {}
        if i < j:
            return dict(self._brackets.get((i, j), {}))
        return {k: -c for k, c in self._brackets.get((j, i), {}).items()}

    def bracket(self, x: Sequence, y: Sequence) -> list:
        """Bracket of coordinate vectors (any coefficient ring)."""
        zero = 0 * x[0] * y[0] if x and y else Fraction(0)
        out = [zero] * self.dim
        for (i, j), row in self._brackets.items():
            a = x[i] * y[j] - x[j] * y[i]
            if a:
                for k, c in row.items():
                    out[k] = out[k] + a * c
        return out

    def basis_vector(self, i: int, one=Fraction(1), zero=Fraction(0)) -> list:
        v = [zero] * self.dim
        v[i] = one
        return v

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self._brackets == other._brackets

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self.constants.items()))))

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<LieAlgebra{tag} dim={self.dim} brackets={len(self._brackets)}>"

    def relabeled(self, labels: Sequence[str]) -> LieAlgebra:
        return LieAlgebra(self.dim, self._brackets, labels, self.name)


@dataclass(frozen=True)
class StructureReport:
    nilindex: int | None
    lcs_dims: tuple[int, ...]
    form_vector: tuple[int, ...]
    cls: str
    r: int | None = None

    @property
    def form_tag(self) -> str | None:
        if self.cls == "quasi-filiform":
            return f"t{self.r}"
        return None

    def to_dict(self) -> dict:
        return {"nilindex": self.nilindex, "lcs_dims": list(self.lcs_dims),
                "form_vector": list(self.form_vector), "class": self.cls,
                "form": self.form_tag}


def check_jacobi(g: LieAlgebra) -> None:
    n = g.dim
    basis = [g.basis_vector(i) for i in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            ab = g.bracket(basis[a], basis[b])
            for c in range(b + 1, n):
                bc = g.bracket(basis[b], basis[c])
                ca = g.bracket(basis[c], basis[a])
                res = [x + y + z for x, y, z in zip(g.bracket(ab, basis[c]),
                                                   g.bracket(bc, basis[a]),
                                                   g.bracket(ca, basis[b]))]
                if any(res):
                    raise JacobiError((a, b, c), {k: v for k, v in enumerate(res) if v})


def lower_central_series(g: LieAlgebra) -> list[Subspace]:
    """``[g^0, g^1, ...]`` ending at the first repeated or zero term."""
    cached = g._cache.get("lcs")
    if cached is not None:
        return cached
    series = [Subspace(g.dim, [g.basis_vector(i) for i in range(g.dim)])]
    while series[-1].dim:
        prev = series[-1]
        gens = [g.bracket(v, g.basis_vector(k)) for v in prev.basis() for k in range(g.dim)]
        nxt = Subspace(g.dim, gens)
        if nxt.dim == prev.dim:
            break
        series.append(nxt)
    g._cache["lcs"] = series
    return series


def validate(g: LieAlgebra) -> StructureReport:
    """Check Jacobi and classify by the lower central series."""
    cached = g._cache.get("report")
    if cached is not None:
        return cached
    check_jacobi(g)
    series = lower_central_series(g)
    dims = tuple(s.dim for s in series)
    if dims[-1] != 0:
        report = StructureReport(None, dims, (), "not-nilpotent")
    else:
        m = len(dims) - 1
        form = tuple(dims[i - 1] - dims[i] for i in range(1, m + 1))
        r = None
        if m <= 1:
            cls = "abelian"
        elif m == g.dim - 1:
            cls = "filiform"
        elif m == g.dim - 2:
            cls = "quasi-filiform"
            r = 1 if form[0] == 3 else next(i + 1 for i in range(1, m) if form[i] == 2)
        else:
            cls = "other-nilpotent"
        report = StructureReport(m, dims, form, cls, r)
    g._cache["report"] = report
    return report


def ensure_nilpotent(g: LieAlgebra) -> StructureReport:
    report = validate(g)
    if report.nilindex is None:
        raise NotNilpotentError("algebra is not nilpotent")
    return report


# --------------------------------------------------------------------------
# basis changes

def _check_square(T, n):
    if len(T) != n or any(len(row) != n for row in T):
        raise ValueError(f"basis change must be {n}x{n}")


def change_basis(g: LieAlgebra, T: Sequence[Sequence]) -> LieAlgebra:
    """Structure constants in the basis ``Y_j = sum_i T[i][j] X_i``."""
    n = g.dim
    _check_square(T, n)
    T = [[Fraction(x) for x in row] for row in T]
    try:
        Tinv = linalg.inverse(T)
    except ValueError:
        raise ValueError("singular basis change") from None
    cols = [[T[i][j] for i in range(n)] for j in range(n)]
    new = {}
    for a in range(n):
        for b in range(a + 1, n):
            v = g.bracket(cols[a], cols[b])
            if any(v):
                w = linalg.matvec(Tinv, v)
                new[(a, b)] = {k: c for k, c in enumerate(w) if c}
    return LieAlgebra(n, new, name=None)


def verify_isomorphism(g: LieAlgebra, h: LieAlgebra, T) -> bool:
    if g.dim != h.dim:
        raise ValueError("dimension mismatch")
    return change_basis(g, T) == h


def permutation_matrix(perm: Sequence[int]) -> list[list[Fraction]]:
    """``Y_j = X_{perm[j]}``."""
    n = len(perm)
    return [[Fraction(1) if perm[j] == i else Fraction(0) for j in range(n)] for i in range(n)]


def exact_sqrt(q: Fraction) -> Fraction | None:
    q = Fraction(q)
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def t3_normalization(a, b) -> list[list[Fraction]]:
    """Basis change taking the two-parameter t3 family of dimension 6 to the
    shape ``[Y1,Y2] = Y3 + Y5, [Y5,Y1] = delta Y4``.

    ``Y0 = alpha X0, Y1 = beta X1 + X0, Y2 = alpha beta X2, Y3 = alpha^2 beta X3,
    Y4 = alpha^3 beta X4, Y5 = -alpha beta^2 X5`` with ``s = sqrt|a|``,
    ``beta = -1/(b - s)`` (or ``-1/(2s)`` when ``b = s``) and ``alpha = b beta + 1``.
    """
    a, b = Fraction(a), Fraction(b)
    s = exact_sqrt(abs(a))
    if s is None:
        raise ValueError("irrational normalization, supply T manually")
    if b != s:
        beta = -1 / (b - s)
    else:
        if s == 0:
            raise ValueError("a = b = 0 is already L_{6,3}; no normalization")
        beta = -1 / (2 * s)
    alpha = b * beta + 1
    if alpha == 0 or beta == 0:
        raise ValueError("singular normalization (alpha or beta vanishes)")
    T = [[Fraction(0)] * 6 for _ in range(6)]
    T[0][0] = alpha
    T[1][1], T[0][1] = beta, Fraction(1)
    T[2][2] = alpha * beta
    T[3][3] = alpha ** 2 * beta
    T[4][4] = alpha ** 3 * beta
    T[5][5] = -alpha * beta ** 2
    return T


# --------------------------------------------------------------------------
# associated graded algebra

def _weight_basis(g: LieAlgebra):
    """Basis adapted to the lower central series with the weight of each vector."""
    series = lower_central_series(g)
    m = len(series) - 1
    chosen: list[tuple[int, list[Fraction]]] = []
    for w in range(m, 0, -1):
        span = Subspace(g.dim, [v for _, v in chosen])
        for v in series[w - 1].basis():
            if v not in span:
                chosen.append((w, v))
                span = Subspace(g.dim, [u for _, u in chosen])
    chosen.sort(key=lambda wv: next(i for i, x in enumerate(wv[1]) if x))
    return chosen


def graded(g: LieAlgebra) -> LieAlgebra:
    """Associated graded algebra of the lower central series, in a basis
    adapted to the quotients ``W_i = g^{i-1}/g^i``."""
    ensure_nilpotent(g)
    wb = _weight_basis(g)
    n = g.dim
    P = [[wb[j][1][i] for j in range(n)] for i in range(n)]
    Pinv = linalg.inverse(P)
    weights = [w for w, _ in wb]
    new = {}
    for a in range(n):
        for b in range(a + 1, n):
            v = g.bracket(wb[a][1], wb[b][1])
            if not any(v):
                continue
            coords = linalg.matvec(Pinv, v)
            target = weights[a] + weights[b]
            out = {k: c for k, c in enumerate(coords) if c and weights[k] == target}
            if out:
                new[(a, b)] = out
    labels = None
    if all(sum(1 for x in v if x) == 1 for _, v in wb):
        labels = [g.labels[next(i for i, x in enumerate(v) if x)] for _, v in wb]
    return LieAlgebra(n, new, labels, name=f"gr({g.name})" if g.name else None)


def homogeneous_weights(g: LieAlgebra) -> list[int] | None:
    """Weight of each basis vector when the basis is adapted to the lower
    central series (each ``X_k`` lies in ``g^{w-1}`` but not ``g^w``)."""
    series = lower_central_series(g)
    out = []
    for k in range(g.dim):
        e = g.basis_vector(k)
        w = max(i for i, s in enumerate(series) if e in s) + 1
        out.append(w)
    return out


# --------------------------------------------------------------------------
# adapted bases

def _shape_adapted(g: LieAlgebra) -> list[tuple[str, dict]]:
    """The bracket shapes of adapted bases for quasi-filiform algebras of
    dimension 2n.  Each shape maps ``(i, j)`` to ``(fixed, free_support)``:
    fixed unit coefficients plus the indices allowed to carry free constants."""
    d = g.dim
    if d % 2:
        return []
    n = d // 2
    top = d - 1
    shapes = []

    if n >= 2:
        s = {}
        for i in range(1, 2 * n - 2):
            s[(0, i)] = ({i + 1: 1}, set())
        for i in range(1, 2 * n - 2):
            for j in range(i + 1, 2 * n - 2 - i):
                s[(i, j)] = ({}, set(range(i + j + 1, 2 * n - 1)))
        for i in range(1, 2 * n - 3):
            s[(i, top)] = ({}, set(range(i + 2, 2 * n - 1)))
        shapes.append(("L_{2n-1}+R", s))

    if n >= 3:
        for r in range(3, 2 * n - 2, 2):
            s = {}
            for i in range(1, 2 * n - 2):
                s[(0, i)] = ({i + 1: 1}, set())
            s[(0, top)] = ({}, set(range(r + 2, 2 * n - 1)))
            for i in range(1, 2 * n - 2):
                for j in range(i + 1, 2 * n - 2):
                    if i + j < r:
                        s[(i, j)] = ({}, set(range(i + j + 1, 2 * n)))
                    elif i + j > r and j <= 2 * n - 3 - i:
                        s[(i, j)] = ({}, set(range(i + j + 1, 2 * n - 1)))
            for i in range(1, 2 * n - 2 - r):
                s[(i, top)] = ({}, set(range(r + i + 1, 2 * n - 1)))
            s[(1, r - 1)] = ({top: 1}, set())
            for i in range(2, (r - 1) // 2 + 1):
                s[(i, r - i)] = ({top: (-1) ** (i - 1)}, set(range(r + 1, 2 * n - 1)))
            shapes.append((f"L_{{2n,{r}}}", s))

        s = {}
        for i in range(1, 2 * n - 3):
            s[(0, i)] = ({i + 1: 1}, set())
        s[(0, top)] = ({2 * n - 2: 1}, set())
        for i in range(1, 2 * n - 3):
            for j in range(i + 1, 2 * n - 3 - i):
                s[(i, j)] = ({}, set(range(i + j + 1, 2 * n)))
        s[(1, 2 * n - 4)] = ({top: 1}, set())
        for i in range(2, n - 1):
            s[(i, 2 * n - 3 - i)] = ({top: (-1) ** (i - 1)}, {2 * n - 2})
        # weight 2n-2 brackets of the graded model, left free
        for i in range(1, n - 1):
            s[(i, 2 * n - 2 - i)] = ({}, {2 * n - 2})
        shapes.append(("T_{2n,2n-3}", s))

    if d == 6:
        s = {(0, 1): ({2: 1}, set()), (0, 2): ({3: 1}, set()), (0, 3): ({4: 1}, set()),
             (1, 2): ({5: 1}, set()), (1, 5): ({4: 1}, set())}
        shapes.append(("N_{6,3}", s))
    return shapes


def _match_shape(g: LieAlgebra, shape: dict) -> str | None:
    """First violated constraint, or None."""
    for (i, j), row in g.brackets.items():
        if (i, j) not in shape:
            return f"[{g.labels[i]},{g.labels[j]}] must vanish"
    for (i, j), (fixed, free) in sorted(shape.items()):
        row = g.bracket_basis(i, j)
        for k, c in fixed.items():
            if row.get(k) != c:
                return f"[{g.labels[i]},{g.labels[j]}] needs coefficient {c} on {g.labels[k]}"
        for k in row:
            if k not in fixed and k not in free:
                return f"[{g.labels[i]},{g.labels[j]}] has a forbidden {g.labels[k]} component"
    return None


def is_adapted_basis(g: LieAlgebra) -> tuple[bool, str]:
    """Whether the stored basis has one of the adapted bracket shapes."""
    reasons = []
    for name, shape in _shape_adapted(g):
        why = _match_shape(g, shape)
        if why is None:
            return True, f"matches the {name} shape"
        reasons.append(f"{name}: {why}")
    if not reasons:
        return False, "no adapted shape exists in this dimension"
    return False, "; ".join(reasons)
