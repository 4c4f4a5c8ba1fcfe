"""Complex structures, symplectic forms, and generalized complex structures on
the double ``g + g*``.

Vectors of ``g`` and 1-forms are coordinate lists.  A ``GeneralizedVector``
holds both; a ``DoubleEndo`` is a ``2d x 2d`` matrix acting on the column
``(X; xi)``.  Endomorphisms act on columns, so ``J*`` acts on form coordinates
through the transpose.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import linalg
from .exact import I, ONE, ZERO, GaussianRational, as_complex, conj
from .exterior import PForm, differential, power
from .liealg import LieAlgebra, validate

HALF = Fraction(1, 2)


class Check(NamedTuple):
    ok: bool
    detail: object = None


def _even_half(g: LieAlgebra) -> int:
    if g.dim % 2:
        raise ValueError("odd dimension")
    return g.dim // 2


def _e(dim, i):
    v = [Fraction(0)] * dim
    v[i] = Fraction(1)
    return v


def _sub(a, b):
    return [x - y for x, y in zip(a, b)]


def _add(a, b):
    return [x + y for x, y in zip(a, b)]


# --------------------------------------------------------------------------
# complex structures

def nijenhuis(g: LieAlgebra, J, X, Y) -> list:
    """``[JX,JY] - [X,Y] - J[JX,Y] - J[X,JY]``."""
    JX, JY = linalg.matvec(J, X), linalg.matvec(J, Y)
    t = _sub(g.bracket(JX, JY), g.bracket(X, Y))
    t = _sub(t, linalg.matvec(J, g.bracket(JX, Y)))
    return _sub(t, linalg.matvec(J, g.bracket(X, JY)))


def is_complex_structure(g: LieAlgebra, J) -> Check:
    """``J^2 = -Id`` and vanishing Nijenhuis tensor on basis pairs.  On failure
    ``detail`` is ``"square"`` or the first failing index pair."""
    n = g.dim
    _even_half(g)
    if linalg.matmul(J, J) != [[-x for x in row] for row in linalg.identity(n)]:
        return Check(False, "square")
    for a in range(n):
        for b in range(a + 1, n):
            if any(nijenhuis(g, J, _e(n, a), _e(n, b))):
                return Check(False, (a, b))
    return Check(True)


def two_form_matrix(w: PForm) -> list[list]:
    """``W[i][j] = w(X_i, X_j)``."""
    n = w.ambient_dim
    W = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), c in w.terms.items():
        W[i][j] = c
        W[j][i] = -c
    return W


def is_symplectic(g: LieAlgebra, w: PForm) -> bool:
    n = _even_half(g)
    if w.degree != 2 and w.terms:
        raise ValueError("symplectic form must be a 2-form")
    if not w.terms:
        return False
    return bool(power(w, n)) and not differential(g, w)


# --------------------------------------------------------------------------
# the double g + g*

@dataclass(frozen=True)
class GeneralizedVector:
    vec: tuple
    form: tuple

    def __post_init__(self):
        object.__setattr__(self, "vec", tuple(self.vec))
        object.__setattr__(self, "form", tuple(self.form))
        if len(self.vec) != len(self.form):
            raise ValueError("vector and form parts have different dimensions")

    @classmethod
    def from_column(cls, col: Sequence) -> GeneralizedVector:
        d = len(col) // 2
        return cls(col[:d], col[d:])

    @property
    def dim(self) -> int:
        return len(self.vec)

    def column(self) -> list:
        return list(self.vec) + list(self.form)

    def __add__(self, other):
        return GeneralizedVector(_add(self.vec, other.vec), _add(self.form, other.form))

    def __sub__(self, other):
        return GeneralizedVector(_sub(self.vec, other.vec), _sub(self.form, other.form))

    def __rmul__(self, c):
        return GeneralizedVector([c * x for x in self.vec], [c * x for x in self.form])

    def conjugate(self):
        return GeneralizedVector([conj(x) for x in self.vec], [conj(x) for x in self.form])

    def __bool__(self):
        return any(self.vec) or any(self.form)


def pairing(v: GeneralizedVector, w: GeneralizedVector):
    """``(xi(Y) + eta(X)) / 2``."""
    if v.dim != w.dim:
        raise ValueError("ambient dimension mismatch")
    s = sum((a * b for a, b in zip(v.form, w.vec)), Fraction(0))
    s = s + sum((a * b for a, b in zip(w.form, v.vec)), Fraction(0))
    return s * HALF


def coadjoint(g: LieAlgebra, X, eta) -> list:
    """``L_X eta`` for invariant ``eta``: ``Z -> -eta([X, Z])``."""
    zero = 0 * eta[0] * X[0]
    out = [zero] * g.dim
    for (a, b), row in g._brackets.items():
        s = sum((eta[k] * c for k, c in row.items()), zero)
        if not s:
            continue
        # [X, e_b] picks up X_a [e_a, e_b]; [X, e_a] picks up -X_b [e_a, e_b]
        if X[a]:
            out[b] = out[b] - X[a] * s
        if X[b]:
            out[a] = out[a] + X[b] * s
    return out


def courant(g: LieAlgebra, v: GeneralizedVector, w: GeneralizedVector) -> GeneralizedVector:
    """Invariant Courant bracket; the ``d(i_X eta - i_Y xi)`` term vanishes."""
    vec = g.bracket(list(v.vec), list(w.vec))
    form = _sub(coadjoint(g, v.vec, w.form), coadjoint(g, w.vec, v.form))
    return GeneralizedVector(vec, form)


def signature_basis(dim: int) -> tuple[list[GeneralizedVector], list[GeneralizedVector]]:
    """``X_k + w_k`` (norm +1) and ``X_k - w_k`` (norm -1), pairwise orthogonal."""
    pos = [GeneralizedVector(_e(dim, k), _e(dim, k)) for k in range(dim)]
    neg = [GeneralizedVector(_e(dim, k), [-x for x in _e(dim, k)]) for k in range(dim)]
    return pos, neg


def pairing_matrix(dim: int) -> list[list[Fraction]]:
    G = [[Fraction(0)] * (2 * dim) for _ in range(2 * dim)]
    for k in range(dim):
        G[k][dim + k] = G[dim + k][k] = HALF
    return G


# --------------------------------------------------------------------------
# generalized complex structures

class NotGCSCandidate(ValueError):
    pass


@dataclass
class GCSReport:
    square_ok: bool
    orthogonal_ok: bool
    involutive_ok: bool
    isotropic_ok: bool
    transverse_ok: bool
    type: int | None
    eigenspace: list = field(default_factory=list, repr=False)

    @property
    def valid(self) -> bool:
        return (self.square_ok and self.orthogonal_ok and self.involutive_ok
                and self.isotropic_ok and self.transverse_ok)

    def to_dict(self) -> dict:
        return {"square_ok": self.square_ok, "orthogonal_ok": self.orthogonal_ok,
                "involutive_ok": self.involutive_ok, "isotropic_ok": self.isotropic_ok,
                "transverse_ok": self.transverse_ok, "type": self.type, "valid": self.valid}


def _complex_matrix(M):
    return [[as_complex(x) for x in row] for row in M]


def eigenspace(M, lam) -> list[list[GaussianRational]]:
    """Basis of ``ker(M - lam Id)`` over Q(i)."""
    N = len(M)
    A = _complex_matrix(M)
    rows = [[A[r][c] - (lam if r == c else ZERO) for c in range(N)] for r in range(N)]
    return linalg.nullspace(rows, N, ZERO, ONE)


def gcs_validate(g: LieAlgebra, JJ) -> GCSReport:
    validate(g)
    n = _even_half(g)
    d = g.dim
    N = 2 * d
    if len(JJ) != N or any(len(r) != N for r in JJ):
        raise ValueError(f"double endomorphism must be {N}x{N}")
    A = _complex_matrix(JJ)
    minus_id = [[-x for x in r] for r in linalg.identity(N, ONE, ZERO)]
    square_ok = linalg.matmul(A, A) == minus_id
    G = pairing_matrix(d)
    orthogonal_ok = linalg.matmul(linalg.matmul(linalg.transpose(A), G), A) == G
    L = eigenspace(JJ, I)
    if len(L) != 2 * n:
        raise NotGCSCandidate(f"not a GCS candidate: +i-eigenspace has dimension {len(L)}, "
                              f"expected {2 * n}")
    Lv = [GeneralizedVector.from_column(c) for c in L]
    isotropic_ok = all(not pairing(u, v) for u in Lv for v in Lv)
    both = L + [[conj(x) for x in c] for c in L]
    transverse_ok = linalg.rank(both, N) == N
    span = linalg.Subspace(N, L)
    involutive_ok = all(courant(g, u, v).column() in span
                        for a, u in enumerate(Lv) for v in Lv[a + 1:])
    proj_rank = linalg.rank([c[:d] for c in L], d)
    return GCSReport(square_ok, orthogonal_ok, involutive_ok, isotropic_ok,
                     transverse_ok, d - proj_rank, L)


def _blocks(A, B, C, D):
    top = [ra + rb for ra, rb in zip(A, B)]
    bottom = [rc + rd for rc, rd in zip(C, D)]
    return top + bottom


def gcs_from_complex(g: LieAlgebra, J):
    """``X + xi -> -J X + J* xi``."""
    chk = is_complex_structure(g, J)
    if not chk.ok:
        raise ValueError(f"not a complex structure (failure: {chk.detail})")
    d = g.dim
    Z = [[Fraction(0)] * d for _ in range(d)]
    minusJ = [[-Fraction(x) for x in r] for r in J]
    return _blocks(minusJ, Z, Z, [[Fraction(x) for x in r] for r in linalg.transpose(J)])


def gcs_from_symplectic(g: LieAlgebra, w: PForm):
    """``[[0, -A^{-1}], [A, 0]]`` with ``A X = i_X w``; its +i-eigenspace is
    ``{X - i i_X w}``."""
    if not is_symplectic(g, w):
        raise ValueError("form is degenerate or not closed")
    d = g.dim
    A = linalg.transpose(two_form_matrix(w))
    Ainv = linalg.inverse(A)
    Z = [[Fraction(0)] * d for _ in range(d)]
    return _blocks(Z, [[-x for x in r] for r in Ainv], A, Z)


def coframe_matrix(thetas: Sequence[PForm]):
    d = thetas[0].ambient_dim
    rows = [[as_complex(x) for x in t.to_vector()] for t in thetas]
    return rows + [[conj(x) for x in r] for r in rows], d


def j_from_coframe(g: LieAlgebra, thetas: Sequence[PForm]):
    """The real ``J`` with ``J* theta_i = i theta_i``."""
    n = _even_half(g)
    if len(thetas) != n:
        raise ValueError(f"coframe needs {n} forms")
    if any(t.ambient_dim != g.dim or (t.terms and t.degree != 1) for t in thetas):
        raise ValueError("coframe entries must be 1-forms over g*")
    M, d = coframe_matrix(thetas)
    try:
        Minv = linalg.inverse(M, ZERO, ONE)
    except ValueError:
        raise ValueError("degenerate coframe") from None
    D = [[(I if r < n else -I) if r == c else ZERO for c in range(d)] for r in range(d)]
    J = linalg.matmul(Minv, linalg.matmul(D, M))
    if any(x.im for row in J for x in row):
        raise AssertionError("coframe produced a non-real J")
    return [[x.re for x in row] for row in J]


def holomorphic_coframe(J) -> list[PForm]:
    """Basis of the forms with ``J* theta = i theta`` (the (1,0)-forms)."""
    Jt = linalg.transpose(J)
    return [PForm.from_vector(v) for v in eigenspace(Jt, I)]
