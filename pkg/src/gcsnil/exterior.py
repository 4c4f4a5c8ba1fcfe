"""Exterior algebra over g* with exact coefficients.

``PForm`` is homogeneous; terms map strictly increasing index tuples to
coefficients (Fraction, GaussianRational, or polynomial unknowns).  ``w_i``
denotes the dual basis form of ``X_i``.  The differential extends
``d w_k = -sum_{i<j} C^k_{ij} w_i ^ w_j`` as an antiderivation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import linalg
from .exact import conj, format_complex, GaussianRational
from .liealg import LieAlgebra, ensure_nilpotent, lower_central_series
from .linalg import Subspace


def _merge_sign(a: tuple, b: tuple):
    """Sign and index tuple of ``w_a ^ w_b``; ``(0, None)`` on overlap."""
    inv = 0
    out = []
    ia = 0
    for y in b:
        while ia < len(a) and a[ia] < y:
            out.append(a[ia])
            ia += 1
        if ia < len(a) and a[ia] == y:
            return 0, None
        inv += len(a) - ia
        out.append(y)
    out.extend(a[ia:])
    return (-1 if inv & 1 else 1), tuple(out)


def _sort_sign(seq: list):
    """Sign of the permutation sorting ``seq`` and the sorted tuple, or
    ``(0, None)`` with a repeated index."""
    if len(set(seq)) != len(seq):
        return 0, None
    inv = sum(1 for x, y in combinations(seq, 2) if x > y)
    return (-1 if inv & 1 else 1), tuple(sorted(seq))


class PForm:
    """Homogeneous exterior form of a fixed degree."""

    __slots__ = ("ambient_dim", "degree", "terms")

    def __init__(self, ambient_dim: int, terms: Mapping[tuple, object] | None = None,
                 degree: int | None = None):
        clean = {}
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if c:
                clean[idx] = c
        if degree is None:
            degrees = {len(k) for k in clean}
            if len(degrees) > 1:
                raise ValueError("inhomogeneous form")
            degree = degrees.pop() if degrees else 0
        for idx in clean:
            if len(idx) != degree or any(x >= y for x, y in zip(idx, idx[1:])):
                raise ValueError(f"bad index tuple {idx} for degree {degree}")
            if idx and not (0 <= idx[0] and idx[-1] < ambient_dim):
                raise ValueError(f"index out of range in {idx}")
        self.ambient_dim = ambient_dim
        self.degree = degree
        self.terms = clean

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, dim: int, degree: int = 0) -> PForm:
        return cls(dim, {}, degree)

    @classmethod
    def scalar(cls, dim: int, c) -> PForm:
        return cls(dim, {(): c}, 0)

    @classmethod
    def basis(cls, dim: int, *idx: int, coeff=Fraction(1)) -> PForm:
        """``coeff * w_{idx[0]} ^ w_{idx[1]} ^ ...`` (indices in any order)."""
        sign, key = _sort_sign(list(idx))
        if not sign:
            return cls(dim, {}, len(idx))
        return cls(dim, {key: coeff * sign}, len(idx))

    @classmethod
    def from_vector(cls, coeffs: Sequence) -> PForm:
        """1-form ``sum_k coeffs[k] w_k``."""
        return cls(len(coeffs), {(k,): c for k, c in enumerate(coeffs) if c}, 1)

    def to_vector(self, zero=Fraction(0)) -> list:
        if self.degree != 1:
            raise ValueError("to_vector needs a 1-form")
        return [self.terms.get((k,), zero) for k in range(self.ambient_dim)]

    # arithmetic -----------------------------------------------------------
    def _check(self, other: PForm):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")

    def __add__(self, other):
        if not isinstance(other, PForm):
            return NotImplemented
        self._check(other)
        if self.degree != other.degree and self.terms and other.terms:
            raise ValueError("cannot add forms of different degrees")
        degree = self.degree if self.terms else other.degree
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return PForm(self.ambient_dim, out, degree)

    def __neg__(self):
        return PForm(self.ambient_dim, {k: -c for k, c in self.terms.items()}, self.degree)

    def __sub__(self, other):
        if not isinstance(other, PForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, PForm):
            return NotImplemented
        return PForm(self.ambient_dim, {k: v * c for k, v in self.terms.items()}, self.degree)

    def __rmul__(self, c):
        if isinstance(c, PForm):
            return NotImplemented
        return PForm(self.ambient_dim, {k: c * v for k, v in self.terms.items()}, self.degree)

    def __xor__(self, other):
        return wedge(self, other)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, PForm):
            if self.ambient_dim != other.ambient_dim:
                return False
            if not self.terms and not other.terms:
                return True
            return self.degree == other.degree and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ambient_dim, self.degree, frozenset(self.terms.items())))

    def conjugate(self) -> PForm:
        return PForm(self.ambient_dim, {k: conj(c) for k, c in self.terms.items()}, self.degree)

    def map(self, fn) -> PForm:
        return PForm(self.ambient_dim, {k: fn(c) for k, c in self.terms.items()}, self.degree)

    def coefficient(self, *idx):
        sign, key = _sort_sign(list(idx))
        if not sign:
            return 0
        c = self.terms.get(key, 0)
        return c * sign if c else c

    def support(self) -> set[int]:
        return {i for k in self.terms for i in k}

    def __repr__(self):
        return f"PForm({self})"

    def __str__(self):
        return format_form(self)


def _coeff_text(c) -> str:
    if isinstance(c, (Fraction, int, GaussianRational)):
        return format_complex(c)
    return f"({c})"


def format_form(a, symbol: str = "w") -> str:
    """``2 w0^w1 - i w2^w3``; the zero form prints as ``0``.  Works for any
    object with a ``terms`` mapping, including mixed-degree spinors."""
    if not a.terms:
        return "0"
    parts = []
    for idx in sorted(a.terms, key=lambda k: (len(k), k)):
        c = a.terms[idx]
        mono = "^".join(f"{symbol}{i}" for i in idx)
        text = _coeff_text(c)
        neg = text.startswith("-") and not ("+" in text[1:] or "-" in text[1:])
        if neg:
            text = text[1:]
        if "+" in text or ("-" in text[1:]):
            text = f"({text})"
        if mono:
            body = mono if text == "1" else f"{text} {mono}"
        else:
            body = text
        parts.append(("-" if neg else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def wedge(a: PForm, b: PForm) -> PForm:
    if not isinstance(a, PForm) or not isinstance(b, PForm):
        raise TypeError("wedge needs two forms")
    a._check(b)
    out: dict = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            sign, key = _merge_sign(ka, kb)
            if not sign:
                continue
            v = ca * cb
            if sign < 0:
                v = -v
            out[key] = out[key] + v if key in out else v
    return PForm(a.ambient_dim, out, a.degree + b.degree)


def wedge_all(forms: Iterable[PForm], dim: int) -> PForm:
    acc = PForm.scalar(dim, Fraction(1))
    for f in forms:
        acc = wedge(acc, f)
    return acc


def power(a: PForm, k: int) -> PForm:
    """Wedge power ``a^k`` (``a^0 = 1``)."""
    return wedge_all([a] * k, a.ambient_dim)


def interior(X: Sequence, a: PForm) -> PForm:
    """Contraction in the first slot."""
    if len(X) != a.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    if a.degree == 0:
        return PForm.zero(a.ambient_dim, 0)
    out: dict = {}
    for idx, c in a.terms.items():
        for s, i in enumerate(idx):
            x = X[i]
            if not x:
                continue
            key = idx[:s] + idx[s + 1:]
            v = c * x
            if s & 1:
                v = -v
            out[key] = out[key] + v if key in out else v
    return PForm(a.ambient_dim, out, a.degree - 1)


def basis_vector(dim: int, i: int) -> list[Fraction]:
    v = [Fraction(0)] * dim
    v[i] = Fraction(1)
    return v


def _dw_table(g: LieAlgebra):
    table = g._cache.get("dw")
    if table is None:
        table = {k: [] for k in range(g.dim)}
        for (i, j), row in g.brackets.items():
            for k, c in row.items():
                table[k].append((i, j, -c))
        g._cache["dw"] = table
    return table


def differential(g: LieAlgebra, a: PForm) -> PForm:
    """Chevalley-Eilenberg differential of an invariant form."""
    if a.ambient_dim != g.dim:
        raise ValueError("ambient dimension mismatch")
    table = _dw_table(g)
    out: dict = {}
    for idx, c in a.terms.items():
        for s, k in enumerate(idx):
            for i, j, coeff in table[k]:
                sign, key = _sort_sign(list(idx[:s]) + [i, j] + list(idx[s + 1:]))
                if not sign:
                    continue
                v = c * coeff
                if (sign < 0) != bool(s & 1):
                    v = -v
                out[key] = out[key] + v if key in out else v
    return PForm(a.ambient_dim, out, a.degree + 1)


def lie_derivative(g: LieAlgebra, X: Sequence, a: PForm) -> PForm:
    """Cartan formula ``L_X = i_X d + d i_X``."""
    first = interior(X, differential(g, a))
    if a.degree == 0:
        return first
    return first + differential(g, interior(X, a))


# --------------------------------------------------------------------------
# filtration

@dataclass(frozen=True)
class Filtration:
    """Annihilator chain ``V_i = ann(g^i)``, ``V_0 = 0`` up to ``V_m = g*``."""

    spaces: tuple[Subspace, ...]
    annihilated: tuple[Subspace, ...]  # g^i, for contraction tests

    @property
    def nilindex(self) -> int:
        return len(self.spaces) - 1

    @property
    def ambient_dim(self) -> int:
        return self.spaces[0].ambient_dim

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(V.dim for V in self.spaces)

    @property
    def quotient_dims(self) -> tuple[int, ...]:
        """``dim V_i / V_{i-1}`` for ``i = 1..m``."""
        d = self.dims
        return tuple(d[i] - d[i - 1] for i in range(1, len(d)))

    @property
    def j_index(self) -> int | None:
        """Smallest ``j >= 1`` with ``dim V_{i+1}/V_i = 1`` for all ``j <= i < m``."""
        q = self.quotient_dims  # q[i] = dim V_{i+1}/V_i
        m = self.nilindex
        for j in range(1, max(m, 1) + 1):
            if all(q[i] == 1 for i in range(j, m)):
                return j
        return None

    def space(self, i: int) -> Subspace:
        return self.spaces[min(i, self.nilindex)]

    def to_dict(self) -> dict:
        return {"dims": list(self.dims), "quotient_dims": list(self.quotient_dims),
                "j_index": self.j_index}


def annihilator_filtration(g: LieAlgebra) -> Filtration:
    cached = g._cache.get("filtration")
    if cached is not None:
        return cached
    ensure_nilpotent(g)
    series = lower_central_series(g)
    spaces = tuple(S.annihilator() for S in series)
    F = Filtration(spaces, tuple(series))
    bad = check_contraction_characterization(g, F)
    if bad is not None:
        raise AssertionError(f"filtration characterizations disagree at {bad}")
    g._cache["filtration"] = F
    return F


def check_contraction_characterization(g: LieAlgebra, F: Filtration):
    """Check ``phi in V_i <=> i_X d phi in V_{i-1}`` for all basis ``X``, on a
    basis of ``V_i`` and on the dual basis forms outside it.  Returns the first
    failing ``(i, form index)`` or None."""
    n = g.dim
    for i in range(1, F.nilindex + 1):
        prev = F.spaces[i - 1]
        candidates = [(True, v) for v in F.spaces[i].basis()]
        candidates += [(basis_vector(n, k) in F.spaces[i], basis_vector(n, k)) for k in range(n)]
        for pos, (expected, v) in enumerate(candidates):
            dphi = differential(g, PForm.from_vector(v))
            got = all(interior(basis_vector(n, x), dphi).to_vector() in prev for x in range(n))
            if got != expected:
                return (i, pos)
    return None


def in_exterior_power(F: Filtration, i: int, a: PForm) -> bool:
    """``a`` lies in ``Lambda^p V_i`` iff every ``X`` in ``g^i`` contracts it to 0."""
    if a.degree == 0:
        return True
    W = F.annihilated[min(i, F.nilindex)]
    return all(not interior(X, a) for X in W.basis())


def nil_degree(F: Filtration, a: PForm) -> int:
    for i in range(F.nilindex + 1):
        if in_exterior_power(F, i, a):
            return i
    return F.nilindex


def ideal_member(a: PForm, thetas: Sequence[PForm]) -> bool:
    """``a`` in the ideal generated by independent 1-forms ``thetas``."""
    dim = a.ambient_dim
    top = wedge_all(thetas, dim)
    if thetas and not top:
        raise ValueError("independence required")
    return not wedge(a, top)


def independent_modulo(V: Subspace, thetas: Sequence[PForm]) -> bool:
    if not thetas:
        return True
    rows = [V.reduce(t.to_vector()) for t in thetas]
    return linalg.rank(rows, V.ambient_dim) == len(thetas)


def is_appropriate(F: Filtration, thetas: Sequence[PForm]) -> bool:
    nils = [nil_degree(F, t) for t in thetas]
    if any(a > b for a, b in zip(nils, nils[1:])):
        return False
    for i in range(F.nilindex + 1):
        later = [t for t, k in zip(thetas, nils) if k > i]
        if not independent_modulo(F.spaces[i], later):
            return False
    return True
