"""Spinors: mixed-degree forms in ``Lambda g* (x) C`` with the Clifford action
``(X + xi) . rho = i_X rho + xi ^ rho``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Mapping, Sequence

from . import linalg
from .exact import I, ONE, ZERO, as_complex, conj
from .exterior import PForm, _merge_sign, format_form, differential, power, wedge, wedge_all
from .liealg import LieAlgebra, ensure_nilpotent
from .structures import GeneralizedVector, pairing

DEFAULT_MAX_DIM = 10


def _key(idx: tuple):
    return (len(idx), idx)


class Spinor:
    """Mixed-degree exterior form; ``terms`` maps sorted index tuples to
    coefficients."""

    __slots__ = ("ambient_dim", "terms")

    def __init__(self, ambient_dim: int, terms: Mapping[tuple, object] | None = None):
        self.ambient_dim = ambient_dim
        self.terms = {tuple(k): c for k, c in (terms or {}).items() if c}

    @classmethod
    def from_form(cls, a: PForm) -> Spinor:
        return cls(a.ambient_dim, a.terms)

    @classmethod
    def from_forms(cls, forms: Sequence[PForm], dim: int) -> Spinor:
        out: dict = {}
        for f in forms:
            if f.ambient_dim != dim:
                raise ValueError("ambient dimension mismatch")
            for k, c in f.terms.items():
                out[k] = out[k] + c if k in out else c
        return cls(dim, out)

    @classmethod
    def one(cls, dim: int) -> Spinor:
        return cls(dim, {(): Fraction(1)})

    def component(self, p: int) -> PForm:
        return PForm(self.ambient_dim, {k: c for k, c in self.terms.items() if len(k) == p}, p)

    @property
    def components(self) -> list[PForm]:
        return [self.component(p) for p in range(self.ambient_dim + 1)]

    def degrees(self) -> set[int]:
        return {len(k) for k in self.terms}

    def __add__(self, other: Spinor) -> Spinor:
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return Spinor(self.ambient_dim, out)

    def __neg__(self):
        return Spinor(self.ambient_dim, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        return Spinor(self.ambient_dim, {k: c * v for k, v in self.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Spinor):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.ambient_dim, frozenset(self.terms.items())))

    def conjugate(self) -> Spinor:
        return Spinor(self.ambient_dim, {k: conj(c) for k, c in self.terms.items()})

    def leading(self):
        """First nonzero term in degree-lex order."""
        k = min(self.terms, key=_key)
        return k, self.terms[k]

    def normalized(self) -> Spinor:
        """Scaled so the first nonzero degree-lex coefficient is 1."""
        if not self.terms:
            raise ValueError("zero spinor")
        _, c = self.leading()
        inv = 1 / as_complex(c)
        return Spinor(self.ambient_dim, {k: as_complex(v) * inv for k, v in self.terms.items()})

    def projectively_equal(self, other: Spinor) -> bool:
        return self.normalized() == other.normalized()

    def __repr__(self):
        return f"Spinor({self})"

    def __str__(self):
        return format_form(self)


def wedge_spinor(a: PForm | Spinor, r: Spinor) -> Spinor:
    terms_a = a.terms
    out: dict = {}
    for ka, ca in terms_a.items():
        for kb, cb in r.terms.items():
            sign, key = _merge_sign(ka, kb)
            if not sign:
                continue
            v = ca * cb
            if sign < 0:
                v = -v
            out[key] = out[key] + v if key in out else v
    return Spinor(r.ambient_dim, out)


def interior_spinor(X: Sequence, r: Spinor) -> Spinor:
    out: dict = {}
    for idx, c in r.terms.items():
        for s, i in enumerate(idx):
            x = X[i]
            if not x:
                continue
            key = idx[:s] + idx[s + 1:]
            v = c * x
            if s & 1:
                v = -v
            out[key] = out[key] + v if key in out else v
    return Spinor(r.ambient_dim, out)


def clifford_act(v: GeneralizedVector, r: Spinor) -> Spinor:
    if v.dim != r.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    xi = PForm(r.ambient_dim, {(k,): c for k, c in enumerate(v.form) if c}, 1)
    return interior_spinor(v.vec, r) + wedge_spinor(xi, r)


def spinor_differential(g: LieAlgebra, r: Spinor) -> Spinor:
    return Spinor.from_forms([differential(g, r.component(p)) for p in sorted(r.degrees())],
                             r.ambient_dim)


# --------------------------------------------------------------------------
# annihilators

@dataclass
class IsotropicSubspace:
    ambient_dim: int
    basis: list  # columns (X; xi) over Q(i)
    pure: bool

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[GeneralizedVector]:
        return [GeneralizedVector.from_column(c) for c in self.basis]

    def is_isotropic(self) -> bool:
        vs = self.vectors()
        return all(not pairing(u, v) for u in vs for v in vs)

    def transverse(self) -> bool:
        """``L`` meets its conjugate only in 0."""
        N = 2 * self.ambient_dim
        both = self.basis + [[conj(x) for x in c] for c in self.basis]
        return linalg.rank(both, N) == 2 * len(self.basis)

    def span(self) -> linalg.Subspace:
        return linalg.Subspace(2 * self.ambient_dim, self.basis)

    def __eq__(self, other):
        if not isinstance(other, IsotropicSubspace):
            return NotImplemented
        return self.span() == other.span()


def _double_basis(d: int, k: int) -> GeneralizedVector:
    col = [ZERO] * (2 * d)
    col[k] = ONE
    return GeneralizedVector.from_column(col)


def annihilator(g: LieAlgebra, r: Spinor) -> IsotropicSubspace:
    """``L_rho = {v : v . rho = 0}`` by exact nullspace."""
    if not r:
        raise ValueError("zero spinor")
    d = r.ambient_dim
    if g.dim != d:
        raise ValueError("ambient dimension mismatch")
    images = [clifford_act(_double_basis(d, k), r) for k in range(2 * d)]
    keys = sorted({k for im in images for k in im.terms}, key=_key)
    rows = [{c: as_complex(im.terms[key]) for c, im in enumerate(images) if key in im.terms}
            for key in keys]
    basis = linalg.nullspace(rows, 2 * d, ZERO, ONE)
    return IsotropicSubspace(d, basis, len(basis) == d)


# --------------------------------------------------------------------------
# canonical spinors

def exp_form(b: PForm) -> Spinor:
    """Finite exterior exponential of an even form."""
    d = b.ambient_dim
    out = Spinor.one(d)
    if not b.terms:
        return out
    term = PForm.scalar(d, Fraction(1))
    s = 1
    while True:
        term = wedge(term, b)
        if not term.terms:
            break
        out = out + Spinor.from_form(term * Fraction(1, factorial(s)))
        s += 1
    return out


def spinor_from_data(Omega: Sequence[PForm], B: PForm | None, w: PForm | None, dim: int | None = None) -> Spinor:
    """``Omega ^ exp(B + i w)``."""
    if dim is None:
        dim = next(f.ambient_dim for f in list(Omega) + [B, w] if f is not None)
    Om = wedge_all(Omega, dim)
    exponent = PForm.zero(dim, 2)
    if B is not None:
        exponent = exponent + B
    if w is not None:
        exponent = exponent + w.map(lambda c: I * c)
    return wedge_spinor(Om, exp_form(exponent))


def cond_nondegenerate(g: LieAlgebra, Omega: Sequence[PForm], w: PForm | None, k: int | None = None) -> bool:
    """``w^(n-k) ^ Omega ^ conj(Omega) != 0`` (total degree 2n)."""
    d = g.dim
    if d % 2:
        raise ValueError("odd dimension")
    n = d // 2
    k = len(Omega) if k is None else k
    if k != len(Omega):
        raise ValueError("k must equal the number of forms in Omega")
    if k > n:
        return False
    Om = wedge_all(Omega, d)
    top = wedge(Om, Om.conjugate())
    if n - k:
        if w is None:
            return False
        top = wedge(power(w, n - k), top)
    return bool(top)


@dataclass
class Integrability:
    closed: bool
    solution: GeneralizedVector | None

    def to_dict(self) -> dict:
        return {"closed": self.closed, "solvable": self.closed or self.solution is not None}


def integrability(g: LieAlgebra, r: Spinor) -> Integrability:
    """Is ``d rho = 0``; otherwise find ``v`` with ``d rho = v . rho``."""
    ensure_nilpotent(g)
    if not r:
        raise ValueError("zero spinor")
    drho = spinor_differential(g, r)
    if not drho:
        return Integrability(True, None)
    d = r.ambient_dim
    images = [clifford_act(_double_basis(d, k), r) for k in range(2 * d)]
    keys = sorted({k for im in images for k in im.terms} | set(drho.terms), key=_key)
    rows = [{c: as_complex(im.terms[key]) for c, im in enumerate(images) if key in im.terms}
            for key in keys]
    rhs = [as_complex(drho.terms.get(key, 0)) for key in keys]
    x = linalg.solve(rows, rhs, 2 * d, ZERO)
    return Integrability(False, None if x is None else GeneralizedVector.from_column(x))


def all_subsets(d: int) -> list[tuple]:
    return [c for p in range(d + 1) for c in combinations(range(d), p)]


def spinor_line_from_L(g: LieAlgebra, L: IsotropicSubspace | Sequence, max_dim: int = DEFAULT_MAX_DIM) -> Spinor:
    """Generator of the joint annihilator ``{rho : v . rho = 0 for v in L}``."""
    basis = L.basis if isinstance(L, IsotropicSubspace) else list(L)
    d = g.dim
    if d > max_dim:
        raise ValueError(f"dimension {d} exceeds max-dim {max_dim}")
    subsets = all_subsets(d)
    pos = {s: i for i, s in enumerate(subsets)}
    rows = []
    for col in basis:
        v = GeneralizedVector.from_column(col)
        per_out: dict = {}
        for s in subsets:
            img = clifford_act(v, Spinor(d, {s: ONE}))
            for key, c in img.terms.items():
                per_out.setdefault(key, {})[pos[s]] = c
        rows.extend(per_out.values())
    null = linalg.nullspace(rows, len(subsets), ZERO, ONE)
    if len(null) != 1:
        raise ValueError("not maximal isotropic")
    return Spinor(d, {subsets[i]: c for i, c in enumerate(null[0]) if c}).normalized()
