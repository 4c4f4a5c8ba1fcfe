"""Obstruction engine for complex structures (generalized complex structures of
type n) on quasi-filiform algebras.

A profile fixes the nil degrees of an appropriate decomposition
``Omega = theta_1 ^ ... ^ theta_k``.  For each profile the engine runs

* a counting phase (dimensions of the annihilator filtration),
* a branch on ``theta_1``: with ``V_1`` two-dimensional, ``theta_1 = phi_0 + t phi_1``
  (the branch ``lambda_0 = 0`` makes ``theta_1`` real, so ``theta_1 ^ conj = 0``),
* a linear phase over Q(t) for the forms whose generators depend on ``t`` only,
* a univariate phase: equations involving ``t`` alone, their gcd and a Sturm
  count,
* a bounded witness search over Q(i) when a non-real root is available.

Every conclusion carries a certificate that ``replay_profile`` rechecks from
scratch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from . import linalg
from .exact import I, ONE, ZERO, GaussianRational, as_complex, conj, format_complex
from .exterior import (Filtration, PForm, annihilator_filtration, differential,
                       format_form, wedge, wedge_all)
from .liealg import LieAlgebra, ensure_nilpotent, validate
from .poly import (MPoly, RationalFunction, UnivariatePoly, gcd, has_nonreal_root,
                   real_root_count)
from .spinor import Spinor, annihilator, cond_nondegenerate, integrability, spinor_from_data
from .structures import gcs_from_complex, gcs_validate, is_complex_structure, j_from_coframe

T = MPoly.var("t")
DEFAULT_MAX_NODES = 50000


class OutOfScope(ValueError):
    pass


class CertificateError(AssertionError):
    pass


# --------------------------------------------------------------------------
# type bound

@dataclass(frozen=True)
class BoundData:
    n: int
    nilindex: int
    j: int
    k_max: int

    def to_dict(self) -> dict:
        return {"n": self.n, "nilindex": self.nilindex, "j": self.j, "k_max": self.k_max}


def type_bound(g: LieAlgebra) -> BoundData:
    report = ensure_nilpotent(g)
    if g.dim % 2:
        raise ValueError("odd dimension")
    F = annihilator_filtration(g)
    j = F.j_index
    if j is None:
        raise ValueError("theorem inapplicable")
    m = report.nilindex
    n = g.dim // 2
    k_max = 2 * n - m + j - 2 if j > 1 else 2 * n - m
    return BoundData(n, m, j, k_max)


def type_bound_bruteforce(g: LieAlgebra) -> int:
    """Largest ``k <= n`` with ``2k <= dim V_s``, ``s = j+k-2`` (or ``k`` when
    ``j = 1``) capped at the nilindex, read off the raw filtration."""
    F = annihilator_filtration(g)
    j = F.j_index
    m = F.nilindex
    n = g.dim // 2
    best = 0
    for k in range(1, n + 1):
        s = j + k - 2 if j > 1 else k
        if 2 * k <= F.dims[min(max(s, 0), m)]:
            best = k
    return best


# --------------------------------------------------------------------------
# profiles

def _quotient(F: Filtration, s: int) -> int:
    return F.dims[s] - F.dims[s - 1]


def nil_profiles(g: LieAlgebra, k: int) -> list[tuple[int, ...]]:
    """Profiles allowed for a t_r algebra (r >= 3): ``(1, r, r+1, ..., r+k-2)``
    and, when ``k < r``, ``(1, r, r, r+1, ..., r+k-3)``."""
    report = validate(g)
    if report.cls != "quasi-filiform" or report.r is None or report.r < 3:
        raise ValueError("nil profiles need a quasi-filiform algebra of form t_r with r >= 3")
    r = report.r
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return [(1,)]
    p1 = (1,) + tuple(r + i for i in range(k - 1))
    out = [p1]
    if k < r and k >= 3:
        p2 = (1, r) + tuple(r + i for i in range(k - 2))
        if p2 != p1:
            out.append(p2)
    return out


def admissible_profiles(g: LieAlgebra, k: int) -> list[tuple[int, ...]]:
    """Profiles obeying the general rules only: non-decreasing, first entry 1,
    ``nil(theta_i) <= j+i-2`` (``<= i`` when ``j = 1``), entries at most the
    nilindex, and ``s`` in the profile with ``dim V_s/V_{s-1} = 1`` forcing
    ``s-1`` in the profile (``s >= 2``).  No counting filter."""
    F = annihilator_filtration(g)
    j = F.j_index or 1
    m = F.nilindex
    caps = [1] + [min(m, (j + i - 2) if j > 1 else i) for i in range(2, k + 1)]
    out = []

    def rec(prefix):
        if len(prefix) == k:
            S = set(prefix)
            if all(s - 1 in S for s in S if s >= 2 and _quotient(F, s) == 1):
                out.append(tuple(prefix))
            return
        lo = prefix[-1] if prefix else 1
        for v in range(lo, caps[len(prefix)] + 1):
            rec(prefix + [v])

    rec([])
    return out


# --------------------------------------------------------------------------
# dual flag basis and symbolic forms

def dual_flag_basis(F: Filtration) -> list[tuple[int, list[Fraction], str]]:
    """Basis of g* adapted to ``V_1 < V_2 < ...``: ``(level, vector, label)``.
    Labels are the dual index ``k`` for unit vectors, ``b<pos>`` otherwise."""
    d = F.ambient_dim
    out: list = []
    for s in range(1, F.nilindex + 1):
        lower = linalg.Subspace(d, [v for _, v, _ in out])
        for v in F.spaces[s].basis():
            if v not in lower:
                nz = [i for i, x in enumerate(v) if x]
                label = str(nz[0]) if len(nz) == 1 and v[nz[0]] == 1 else f"b{len(out)}"
                out.append((s, v, label))
                lower = linalg.Subspace(d, [u for _, u, _ in out])
    return out


def _basis_upto(flag, s):
    return [(v, lab) for lev, v, lab in flag if lev <= s]


def _top_positions(flag, s):
    """Positions (within ``_basis_upto(flag, s)``) of the level-``s`` vectors."""
    pos = [i for i, (lev, _, _) in enumerate([f for f in flag if f[0] <= s]) if lev == s]
    return pos


def _combine(basis_vectors, coeffs, dim) -> PForm:
    terms: dict = {}
    for v, c in zip(basis_vectors, coeffs):
        if not c:
            continue
        for k, x in enumerate(v):
            if x:
                key = (k,)
                val = c * x
                terms[key] = terms[key] + val if key in terms else val
    return PForm(dim, terms, 1)


def theta_equations(g: LieAlgebra, theta: PForm, gens: Sequence[PForm]) -> list:
    """Coefficients of ``d theta ^ gens_1 ^ ... ^ gens_r`` (all must vanish for
    ``d theta`` to lie in the ideal of the generators)."""
    form = differential(g, theta)
    if gens:
        form = wedge(form, wedge_all(gens, g.dim))
    return [form.terms[k] for k in sorted(form.terms)]


def _dedupe(polys):
    seen = set()
    out = []
    for p in polys:
        if not isinstance(p, MPoly):
            p = MPoly.const(p)
        if not p:
            continue
        key = p.normalized()
        if key in seen:
            continue
        seen.add(key)
        out.append(p)
    return out


@dataclass
class ConstraintSystem:
    profile: tuple[int, ...]
    unknowns: dict[str, tuple[int, str]]
    thetas: list[PForm]
    equations: list[MPoly]
    side_conditions: list[str]

    def normalized_equations(self) -> set[MPoly]:
        return {e.normalized() for e in self.equations}

    def to_dict(self) -> dict:
        return {"profile": list(self.profile), "unknowns": sorted(self.unknowns),
                "thetas": [format_form(t) for t in self.thetas],
                "equations": [str(e) for e in self.equations],
                "side_conditions": list(self.side_conditions)}


def extract_constraints(g: LieAlgebra, profile: Sequence[int]) -> ConstraintSystem:
    """Unknown coefficients ``l<i>_<k>`` of ``theta_i`` on a basis of
    ``V_{nil(theta_i)}``; equations from ``d theta_i`` lying in the ideal of the
    ``theta_j`` with smaller nil degree."""
    profile = tuple(profile)
    F = annihilator_filtration(g)
    flag = dual_flag_basis(F)
    d = g.dim
    unknowns = {}
    thetas = []
    for i, s in enumerate(profile, start=1):
        basis = _basis_upto(flag, s)
        coeffs = []
        for v, lab in basis:
            name = f"l{i}_{lab}"
            unknowns[name] = (i, lab)
            coeffs.append(MPoly.var(name))
        thetas.append(_combine([v for v, _ in basis], coeffs, d))
    equations = []
    for i, s in enumerate(profile):
        if i == 0:
            continue
        gens = [thetas[j] for j in range(len(profile)) if profile[j] < s]
        equations.extend(theta_equations(g, thetas[i], gens))
    side = []
    V1 = _basis_upto(flag, 1)
    if len(V1) == 2:
        a, b = (f"l1_{lab}" for _, lab in V1)
        side.append(f"Im({a} * conj({b})) != 0")
    else:
        side.append("theta1 ^ conj(theta1) != 0")
    for i, s in enumerate(profile, start=1):
        top = [f"l{i}_{lab}" for lev, _, lab in flag if lev == s]
        side.append(f"nil(theta{i}) = {s}: ({', '.join(top)}) not all zero")
    levels = sorted(set(profile))
    for s in levels:
        later = [f"theta{i}" for i, x in enumerate(profile, start=1) if x > s - 1]
        if len(later) > 1:
            where = f"modulo V_{s - 1}" if s > 1 else "over C"
            side.append(f"{', '.join(later)} independent {where}")
    side.append("Omega ^ conj(Omega) != 0")
    return ConstraintSystem(profile, unknowns, thetas, _dedupe(equations), side)


# --------------------------------------------------------------------------
# witness verification

STAGES = ("nondegenerate", "closed", "pure", "complex", "gcs")


@dataclass
class WitnessReport:
    ok: bool
    failed_stage: str | None
    stages: dict
    J: list | None = None

    def to_dict(self) -> dict:
        return {"ok": self.ok, "failed_stage": self.failed_stage, "stages": dict(self.stages)}


def verify_witness(g: LieAlgebra, thetas: Sequence[PForm]) -> WitnessReport:
    """Five checks in order; the report names the first failure."""
    validate(g)
    if g.dim % 2:
        raise ValueError("odd dimension")
    n = g.dim // 2
    if len(thetas) != n:
        raise ValueError(f"a witness needs {n} forms")
    stages: dict = {}

    def fail(stage):
        stages[stage] = False
        return WitnessReport(False, stage, stages)

    if not cond_nondegenerate(g, thetas, None, n):
        return fail("nondegenerate")
    stages["nondegenerate"] = True
    rho = spinor_from_data(thetas, None, None, g.dim)
    if not integrability(g, rho).closed:
        return fail("closed")
    stages["closed"] = True
    L = annihilator(g, rho)
    if not (L.pure and L.transverse()):
        return fail("pure")
    stages["pure"] = True
    J = j_from_coframe(g, thetas)
    if not is_complex_structure(g, J).ok:
        return fail("complex")
    stages["complex"] = True
    rep = gcs_validate(g, gcs_from_complex(g, J))
    if not (rep.valid and rep.type == n):
        return fail("gcs")
    stages["gcs"] = True
    return WitnessReport(True, None, stages, J)


# --------------------------------------------------------------------------
# certificates

@dataclass
class Step:
    kind: str
    data: dict

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        for k, v in self.data.items():
            out[k] = _jsonable(v)
        return out


def _jsonable(v):
    if isinstance(v, (UnivariatePoly, RationalFunction, MPoly)):
        return str(v)
    if isinstance(v, (Fraction, GaussianRational)):
        return format_complex(v)
    if isinstance(v, PForm):
        return format_form(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


@dataclass
class ProfileResult:
    profile: tuple[int, ...]
    outcome: str
    steps: list[Step] = field(default_factory=list)
    witness: list[PForm] | None = None
    polynomial: UnivariatePoly | None = None
    residual: list[str] = field(default_factory=list)
    reason: str = ""

    @property
    def real_root_count(self) -> int | None:
        if self.polynomial is None or self.polynomial.degree < 1:
            return None
        return real_root_count(self.polynomial)

    def to_dict(self) -> dict:
        out = {"profile": list(self.profile), "outcome": self.outcome, "reason": self.reason,
               "certificate": [s.to_dict() for s in self.steps]}
        if self.polynomial is not None:
            p = self.polynomial
            out["polynomial"] = str(p)
            if p.degree >= 1:
                out["real_root_count"] = real_root_count(p)
                out["has_nonreal_root"] = has_nonreal_root(p)
        if self.witness is not None:
            out["witness"] = [format_form(t) for t in self.witness]
        if self.residual:
            out["residual"] = list(self.residual)
        return out


# --------------------------------------------------------------------------
# parametric linear algebra over Q(t)

def _rf_key(x: RationalFunction):
    return (x.num.degree + x.den.degree, len(str(x)))


def parametric_rref(rows: list[dict], ncols: int):
    """RREF over Q(t) preferring simple pivots.  Returns ``(reduced, pivot_cols,
    pivot_rows)`` where ``pivot_rows`` are the original row indices, so that the
    minor on ``pivot_rows x pivot_cols`` is nonsingular."""
    work = [(i, {k: v for k, v in r.items() if v}) for i, r in enumerate(rows)]
    work = [(i, r) for i, r in work if r]
    done: list = []
    pcols, prows = [], []
    for col in range(ncols):
        cands = [x for x in range(len(work)) if col in work[x][1]]
        if not cands:
            continue
        best = min(cands, key=lambda x: _rf_key(work[x][1][col]))
        orig, prow = work.pop(best)
        inv = 1 / prow[col]
        prow = {k: v * inv for k, v in prow.items()}

        def elim(r):
            f = r.get(col)
            if not f:
                return r
            r = dict(r)
            for k, v in prow.items():
                nv = r.get(k, 0) - f * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
            return r

        work = [(i, elim(r)) for i, r in work]
        work = [(i, r) for i, r in work if r]
        done = [elim(r) for r in done]
        done.append(prow)
        pcols.append(col)
        prows.append(orig)
    return done, pcols, prows


def parametric_nullspace(reduced, pcols, ncols):
    pset = set(pcols)
    out = []
    for f in range(ncols):
        if f in pset:
            continue
        v = [RationalFunction(0)] * ncols
        v[f] = RationalFunction(1)
        for r, p in zip(reduced, pcols):
            c = r.get(f)
            if c:
                v[p] = -c
        out.append(v)
    return out


def bareiss_det(M: list[list[UnivariatePoly]]) -> UnivariatePoly:
    """Fraction-free determinant over Q[t]."""
    n = len(M)
    if n == 0:
        return UnivariatePoly([1])
    A = [list(r) for r in M]
    sign = 1
    prev = UnivariatePoly([1])
    for k in range(n - 1):
        if not A[k][k]:
            sw = next((r for r in range(k + 1, n) if A[r][k]), None)
            if sw is None:
                return UnivariatePoly([])
            A[k], A[sw] = A[sw], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                q, rem = divmod(A[i][j] * A[k][k] - A[i][k] * A[k][j], prev)
                if rem:
                    raise ArithmeticError("inexact Bareiss division")
                A[i][j] = q
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return d if sign > 0 else -d


def _rf_rank(vectors, ncols) -> int:
    return len(parametric_rref([{k: x for k, x in enumerate(v) if x} for v in vectors], ncols)[1])


def _lcm(a: UnivariatePoly, b: UnivariatePoly) -> UnivariatePoly:
    return (a * b) // gcd(a, b)


def _clear_denominators(v: list[RationalFunction]) -> list[RationalFunction]:
    den = UnivariatePoly([1])
    for x in v:
        den = _lcm(den, x.den)
    return [x * RationalFunction(den) for x in v]


def _rf_to_mpoly(x: RationalFunction) -> MPoly:
    if not x.is_polynomial:
        raise ValueError("denominator left in a coefficient")
    return MPoly.from_univariate(x.num * (1 / x.den.lc))


def _is_constant(p: UnivariatePoly) -> bool:
    return p.degree <= 0


def _only_real_roots(p: UnivariatePoly) -> bool:
    """True if ``p`` (nonzero) has no non-real root."""
    return _is_constant(p) or not has_nonreal_root(p)


# --------------------------------------------------------------------------
# the engine

@dataclass
class _Theta:
    index: int               # 1-based
    nil: int
    form: PForm              # MPoly coefficients
    t_only: bool             # coefficients involve t alone
    kind: str                # "theta1", "linear", "general"


def _theta1_form(flag, dim) -> PForm:
    (v0, _), (v1, _) = _basis_upto(flag, 1)
    return _combine([v0, v1], [MPoly.const(Fraction(1)), T], dim)


def _counting(F: Filtration, profile) -> Step | None:
    m = F.nilindex
    if max(profile) > m:
        return Step("count", {"rule": "nilindex", "level": max(profile), "needed": max(profile),
                              "available": m})
    for i in range(1, m + 1):
        upto = sum(1 for x in profile if x <= i)
        if 2 * upto > F.dims[i]:
            return Step("count", {"rule": "independence", "level": i, "needed": 2 * upto,
                                  "available": F.dims[i]})
        at = sum(1 for x in profile if x == i)
        if at > _quotient(F, i):
            return Step("count", {"rule": "quotient", "level": i, "needed": at,
                                  "available": _quotient(F, i)})
    return None


def decide_profile(g: LieAlgebra, profile: Sequence[int], max_nodes: int = DEFAULT_MAX_NODES) -> ProfileResult:
    profile = tuple(profile)
    validate(g)
    F = annihilator_filtration(g)
    flag = dual_flag_basis(F)
    d = g.dim
    res = ProfileResult(profile, "undecided")

    step = _counting(F, profile)
    if step is not None:
        res.steps.append(step)
        res.outcome, res.reason = "obstructed", f"counting ({step.data['rule']})"
        return res

    V1 = _basis_upto(flag, 1)
    if len(V1) != 2:
        found = search_witness(g, profile, None, max_nodes=max_nodes)
        if found is not None:
            res.witness, res.outcome, res.reason = found, "admits", "witness found by search"
        else:
            res.reason = "search exhausted without a witness"
        return res

    res.steps.append(Step("branch", {"case": "lambda_0 = 0", "theta1": V1[1][0],
                                     "conclusion": "theta1 is real, theta1 ^ conj(theta1) = 0"}))
    thetas: list[_Theta] = [_Theta(1, 1, _theta1_form(flag, d), True, "theta1")]

    # linear phase
    i = 1
    while i < len(profile):
        s = profile[i]
        group = [x for x in range(i, len(profile)) if profile[x] == s]
        gens_idx = [x for x in range(len(profile)) if profile[x] < s]
        if any(x >= len(thetas) or not thetas[x].t_only for x in gens_idx):
            break
        gens = [thetas[x].form for x in gens_idx]
        basis = _basis_upto(flag, s)
        top = _top_positions(flag, s)
        names = [f"c{x}" for x in range(len(basis))]
        generic = _combine([v for v, _ in basis], [MPoly.var(nm) for nm in names], d)
        eqs = _dedupe(theta_equations(g, generic, gens))
        rows = []
        for e in eqs:
            row = {}
            for k, nm in enumerate(names):
                c = e.coefficient_of(nm)
                if c:
                    row[k] = RationalFunction(c.to_univariate("t"))
            rows.append(row)
        matrix = [[rows[r].get(k, RationalFunction(0)).num for k in range(len(names))]
                  for r in range(len(rows))]
        reduced, pcols, prows = parametric_rref(rows, len(names))
        null = parametric_nullspace(reduced, pcols, len(names))
        minor = [[matrix[r][c] for c in pcols] for r in prows]
        det = bareiss_det(minor) if minor else UnivariatePoly([1])
        tops = [[v[p] for p in top] for v in null]
        top_rank = _rf_rank(tops, len(top))
        data = {"thetas": [x + 1 for x in group], "nil": s, "generators": [x + 1 for x in gens_idx],
                "unknowns": [lab for _, lab in basis], "top": [basis[p][1] for p in top],
                "matrix": matrix, "minor_rows": prows, "minor_cols": pcols, "minor_det": det,
                "solutions": null, "top_rank": top_rank, "needed": len(group)}
        if not _only_real_roots(det):
            res.steps.append(Step("linear", data))
            res.reason = "pivot minor vanishes at a non-real parameter"
            res.residual = [str(e) for e in eqs]
            return res
        if top_rank == 0 and len(group) == 1:
            data["conclusion"] = "forced zero"
            res.steps.append(Step("linear", data))
            res.outcome = "obstructed"
            res.reason = f"theta{i + 1} forced into V_{s - 1}"
            return res
        if top_rank < len(group):
            data["conclusion"] = "dependent modulo V"
            res.steps.append(Step("linear", data))
            res.outcome = "obstructed"
            names_g = ", ".join(f"theta{x + 1}" for x in group)
            res.reason = f"{names_g} dependent modulo V_{s - 1} (top rank {top_rank} < {len(group)})"
            return res
        if len(group) == 1 and top_rank == 1:
            star = next(x for x, tv in enumerate(tops) if any(tv))
            q = next(p for p, x in enumerate(tops[star]) if x)
            pivot = tops[star][q]
            if not _only_real_roots(pivot.num):
                data["conclusion"] = "normalization needs a nonvanishing pivot"
                res.steps.append(Step("linear", data))
                res.reason = "normalizing coefficient may vanish at a non-real parameter"
                return res
            vstar = _clear_denominators(null[star])
            lowers = []
            for x, v in enumerate(null):
                if x == star:
                    continue
                ratio = tops[x][q] / pivot
                w = [a - ratio * b for a, b in zip(v, null[star])]
                if any(w):
                    lowers.append(_clear_denominators(w))
            coeffs = [_rf_to_mpoly(c) for c in vstar]
            for x, w in enumerate(lowers):
                sv = MPoly.var(f"s{i + 1}_{x}")
                coeffs = [c + sv * _rf_to_mpoly(wc) for c, wc in zip(coeffs, w)]
            form = _combine([v for v, _ in basis], coeffs, d)
            data["conclusion"] = "normalized"
            data["normal_form"] = vstar
            data["lower"] = lowers
            res.steps.append(Step("linear", data))
            thetas.append(_Theta(i + 1, s, form, not lowers, "linear"))
            i += 1
            continue
        data["conclusion"] = "parametrized"
        res.steps.append(Step("linear", data))
        for x in group:
            coeffs = [MPoly() for _ in basis]
            for y, v in enumerate(null):
                sv = MPoly.var(f"s{x + 1}_{y}")
                vv = _clear_denominators(v)
                coeffs = [c + sv * _rf_to_mpoly(a) for c, a in zip(coeffs, vv)]
            thetas.append(_Theta(x + 1, s, _combine([v for v, _ in basis], coeffs, d), False, "linear"))
        i += len(group)

    # univariate phase
    for x in range(len(thetas), len(profile)):
        s = profile[x]
        basis = _basis_upto(flag, s)
        top = _top_positions(flag, s)
        coeffs = [MPoly.var(f"l{x + 1}_{lab}") for _, lab in basis]
        if len(top) == 1:
            coeffs[top[0]] = MPoly.const(Fraction(1))
        thetas.append(_Theta(x + 1, s, _combine([v for v, _ in basis], coeffs, d), False, "general"))
    eqs = []
    for x in range(len(profile)):
        th = thetas[x]
        if th.kind != "general":
            continue
        gens = [thetas[y].form for y in range(len(profile)) if profile[y] < th.nil]
        eqs.extend(theta_equations(g, th.form, gens))
    eqs = _dedupe(eqs)
    consts = [e for e in eqs if not e.variables()]
    if consts:
        res.steps.append(Step("univariate", {"parametrization": _param_data(thetas),
                                             "equations": [consts[0]], "gcd": UnivariatePoly([1])}))
        res.outcome, res.reason = "obstructed", "inconsistent normalized equations"
        return res
    univ = [e.to_univariate("t") for e in eqs if e.variables() <= {"t"}]
    p = None
    if univ:
        p = univ[0]
        for q in univ[1:]:
            p = gcd(p, q)
        p = p.monic()
        res.polynomial = p
        sdata = {"parametrization": _param_data(thetas), "equations": univ, "gcd": p}
        if p.degree <= 0:
            res.steps.append(Step("univariate", sdata))
            res.outcome, res.reason = "obstructed", "relations in t have no common root"
            return res
        sdata["real_root_count"] = real_root_count(p)
        sdata["squarefree_degree"] = p.squarefree_part().degree
        res.steps.append(Step("univariate", sdata))
        if not has_nonreal_root(p):
            res.outcome, res.reason = "obstructed", "only real roots in t"
            return res
        candidates = gaussian_rational_roots(p)
    else:
        candidates = [I, -I]
    for t0 in candidates:
        theta1 = _combine([v for v, _ in V1], [ONE, t0], d)
        found = search_witness(g, profile, theta1, max_nodes=max_nodes)
        if found is not None:
            res.witness, res.outcome = found, "admits"
            res.reason = f"witness found at t = {format_complex(t0)}"
            return res
    res.reason = "no witness found within the search bound"
    res.residual = [str(e) for e in eqs]
    return res


def _param_data(thetas: list[_Theta]) -> list:
    return [{"theta": th.index, "nil": th.nil, "kind": th.kind, "form": th.form} for th in thetas]


def gaussian_rational_roots(p: UnivariatePoly) -> list[GaussianRational]:
    """Non-real roots of ``p`` lying in Q(i), ``+i`` parts first."""
    import sympy

    t = sympy.Symbol("t")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * t ** k for k, c in enumerate(p.coeffs))
    out = []
    for r in sympy.roots(sympy.Poly(expr, t)):
        re, im = r.as_real_imag()
        if im != 0 and re.is_Rational and im.is_Rational:
            out.append(GaussianRational(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q))))
    out.sort(key=lambda z: (z.re, -z.im))
    return out


# --------------------------------------------------------------------------
# witness search over Q(i)

def _sparse_combos(m: int):
    """Coefficient tuples over {0, 1, -1, i, -i} with first nonzero entry 1,
    ordered by support size."""
    values = (ONE, -ONE, I, -I)
    for size in range(1, m + 1):
        for support in combinations(range(m), size):
            for rest in product(values, repeat=size - 1):
                c = [ZERO] * m
                c[support[0]] = ONE
                for pos, val in zip(support[1:], rest):
                    c[pos] = val
                yield c


def search_witness(g: LieAlgebra, profile: Sequence[int], theta1: PForm | None = None,
                   max_nodes: int = DEFAULT_MAX_NODES) -> list[PForm] | None:
    """Depth-first search for ``theta_1..theta_k`` (coefficients in {0, +-1, +-i}
    on the solution space of each level) passing ``verify_witness``."""
    F = annihilator_filtration(g)
    flag = dual_flag_basis(F)
    d = g.dim
    budget = [max_nodes]

    def level_space(i, chosen):
        s = profile[i]
        basis = [v for v, _ in _basis_upto(flag, s)]
        gens = [chosen[j] for j in range(i) if profile[j] < s]
        top = wedge_all(gens, d) if gens else None
        rows: dict = {}
        for k, v in enumerate(basis):
            dv = differential(g, PForm.from_vector(v))
            if top is not None:
                dv = wedge(dv, top)
            for key, c in dv.terms.items():
                rows.setdefault(key, {})[k] = as_complex(c)
        null = linalg.nullspace(list(rows.values()), len(basis), ZERO, ONE)
        vecs = [[sum((c * x for c, x in zip(nv, col)), ZERO) for col in zip(*basis)] for nv in null]
        span = linalg.Subspace(d, [t.to_vector(ZERO) for t in chosen])
        red = []
        acc = linalg.Subspace(d, [t.to_vector(ZERO) for t in chosen])
        for v in vecs:
            if v not in acc:
                r = span.reduce(v)
                red.append([r.get(k, ZERO) for k in range(d)])
                acc = linalg.Subspace(d, [t.to_vector(ZERO) for t in chosen] + red)
        return linalg.Subspace(d, red).basis() if red else []

    def rec(i, chosen):
        if i == len(profile):
            return list(chosen) if verify_witness(g, chosen).ok else None
        if i == 0 and theta1 is not None:
            cands = [theta1.to_vector(ZERO)]
        else:
            space = level_space(i, chosen)
            cands = ([sum((c * x for c, x in zip(coeffs, col)), ZERO) for col in zip(*space)]
                     for coeffs in _sparse_combos(len(space)))
        partial = wedge_all(chosen, d)
        for v in cands:
            if budget[0] <= 0:
                return None
            budget[0] -= 1
            th = PForm.from_vector(v)
            om = wedge(partial, th)
            if not wedge(om, om.conjugate()):
                continue
            out = rec(i + 1, chosen + [th])
            if out is not None:
                return out
        return None

    if len(profile) != d // 2:
        raise ValueError("profile length must be n")
    return rec(0, [])


# --------------------------------------------------------------------------
# classification

@dataclass
class Verdict:
    name: str | None
    outcome: str
    bound: BoundData | None
    profiles: list[ProfileResult] = field(default_factory=list)
    witness: list[PForm] | None = None
    J: list | None = None
    reason: str = ""

    def to_dict(self) -> dict:
        out = {"schema": 1, "algebra": self.name, "outcome": self.outcome, "reason": self.reason,
               "bound": self.bound.to_dict() if self.bound else None,
               "profiles": [p.to_dict() for p in self.profiles]}
        if self.witness is not None:
            out["witness"] = [format_form(t) for t in self.witness]
        if self.J is not None:
            out["J"] = [[format_complex(x) for x in row] for row in self.J]
        return out


def classify(g: LieAlgebra, max_nodes: int = DEFAULT_MAX_NODES) -> Verdict:
    report = validate(g)
    if report.cls not in ("quasi-filiform", "filiform"):
        raise OutOfScope("out of classified scope")
    if g.dim % 2:
        raise OutOfScope("out of classified scope (odd dimension)")
    bound = type_bound(g)
    n = bound.n
    if bound.k_max < n:
        return Verdict(g.name, "obstructed", bound,
                       reason=f"type bound k <= {bound.k_max} < n = {n}")
    if report.r is not None and report.r >= 3:
        profiles = nil_profiles(g, n)
    else:
        profiles = admissible_profiles(g, n)
    results = []
    for prof in profiles:
        r = decide_profile(g, prof, max_nodes=max_nodes)
        results.append(r)
        if r.outcome == "admits":
            w = verify_witness(g, r.witness)
            if not w.ok:
                raise AssertionError("witness failed re-verification")
            return Verdict(g.name, "admits", bound, results, r.witness, w.J,
                           reason=f"witness for profile {prof}")
    if all(r.outcome == "obstructed" for r in results):
        return Verdict(g.name, "obstructed", bound, results, reason="every profile obstructed")
    return Verdict(g.name, "undecided", bound, results, reason="some profile undecided")


# --------------------------------------------------------------------------
# replay

def _fail(msg):
    raise CertificateError(msg)


def replay_bound(g: LieAlgebra, bound: BoundData) -> bool:
    F = annihilator_filtration(g)
    q = F.quotient_dims
    m = F.nilindex
    j = next((j for j in range(1, max(m, 1) + 1) if all(q[i] == 1 for i in range(j, m))), None)
    if j != bound.j or m != bound.nilindex or g.dim != 2 * bound.n:
        _fail("bound data does not match the filtration")
    k = 2 * bound.n - m + j - 2 if j > 1 else 2 * bound.n - m
    if k != bound.k_max or not k < bound.n:
        _fail("bound does not exclude type n")
    return True


def replay_profile(g: LieAlgebra, result: ProfileResult) -> bool:
    """Recheck an obstructed profile from the algebra alone plus the recorded
    data; raises ``CertificateError`` on any mismatch."""
    if result.outcome != "obstructed":
        _fail("only obstructed profiles carry certificates")
    validate(g)
    F = annihilator_filtration(g)
    flag = dual_flag_basis(F)
    d = g.dim
    profile = result.profile
    if not result.steps:
        _fail("empty certificate")
    forms: dict[int, PForm] = {}
    t_only: dict[int, bool] = {}
    for idx, step in enumerate(result.steps):
        last = idx == len(result.steps) - 1
        data = step.data
        if step.kind == "count":
            m = F.nilindex
            rule, lev = data["rule"], data["level"]
            if rule == "nilindex":
                ok = max(profile) > m
            elif rule == "independence":
                ok = 2 * sum(1 for x in profile if x <= lev) > F.dims[lev]
            elif rule == "quotient":
                ok = sum(1 for x in profile if x == lev) > F.dims[lev] - F.dims[lev - 1]
            else:
                ok = False
            if not ok or not last:
                _fail("counting step does not hold")
        elif step.kind == "branch":
            V1 = _basis_upto(flag, 1)
            if len(V1) != 2:
                _fail("branch needs a two-dimensional V_1")
            phi1 = PForm.from_vector(V1[1][0])
            if wedge(phi1, phi1.conjugate()):
                _fail("branch form is not real")
            forms[1] = _theta1_form(flag, d)
            t_only[1] = True
        elif step.kind == "linear":
            _replay_linear(g, F, flag, profile, data, forms, t_only, last)
        elif step.kind == "univariate":
            _replay_univariate(g, flag, profile, data, forms, last)
        else:
            _fail(f"unknown step {step.kind}")
    return True


def _replay_linear(g, F, flag, profile, data, forms, t_only, last):
    d = g.dim
    s = data["nil"]
    group = data["thetas"]
    if any(profile[x - 1] != s for x in group):
        _fail("linear step nil degrees disagree with the profile")
    gens_idx = [x + 1 for x in range(len(profile)) if profile[x] < s]
    if gens_idx != data["generators"] or any(not t_only.get(x) for x in gens_idx):
        _fail("linear step generators are not determined")
    basis = _basis_upto(flag, s)
    top = _top_positions(flag, s)
    names = [f"c{x}" for x in range(len(basis))]
    generic = _combine([v for v, _ in basis], [MPoly.var(nm) for nm in names], d)
    eqs = _dedupe(theta_equations(g, generic, [forms[x] for x in gens_idx]))
    matrix = [[e.coefficient_of(nm).to_univariate("t") for nm in names] for e in eqs]
    if matrix != data["matrix"]:
        _fail("recomputed linear system differs")
    rf = [[RationalFunction(x) for x in row] for row in matrix]
    sols = data["solutions"]
    for v in sols:
        for row in rf:
            if sum((a * b for a, b in zip(row, v)), RationalFunction(0)):
                _fail("recorded vector does not solve the system")
    rows, cols = data["minor_rows"], data["minor_cols"]
    det = bareiss_det([[matrix[r][c] for c in cols] for r in rows]) if rows else UnivariatePoly([1])
    if not det or det.monic() != data["minor_det"].monic():
        _fail("pivot minor mismatch")
    if not _only_real_roots(det):
        _fail("pivot minor vanishes at a non-real parameter")
    free = [c for c in range(len(names)) if c not in set(cols)]
    if len(sols) != len(free) or len(cols) + len(free) != len(names):
        _fail("solution count does not match the rank")
    for v, f in zip(sols, free):
        if any((v[c] != (1 if c == f else 0)) for c in free):
            _fail("solutions are not in free-column form")
    tops = [[v[p] for p in top] for v in sols]
    rank = _rf_rank(tops, len(top))
    if rank != data["top_rank"]:
        _fail("top rank mismatch")
    concl = data.get("conclusion")
    if concl in ("forced zero", "dependent modulo V"):
        if not last or not rank < len(group):
            _fail("linear step does not contradict the profile")
        return
    if concl == "normalized":
        vstar = data["normal_form"]
        lowers = data["lower"]
        for v in [vstar] + lowers:
            for row in rf:
                if sum((a * b for a, b in zip(row, v)), RationalFunction(0)):
                    _fail("normal form is not a solution")
        if _rf_rank([[vstar[p] for p in top]], len(top)) != 1 or any(w[p] for w in lowers for p in top):
            _fail("normal form top parts are wrong")
        if _rf_rank([vstar] + lowers, len(names)) != len(sols):
            _fail("normal form does not span the solutions")
        coeffs = [_rf_to_mpoly(c) for c in vstar]
        for x, w in enumerate(lowers):
            sv = MPoly.var(f"s{group[0]}_{x}")
            coeffs = [c + sv * _rf_to_mpoly(wc) for c, wc in zip(coeffs, w)]
        forms[group[0]] = _combine([v for v, _ in basis], coeffs, d)
        t_only[group[0]] = not lowers
        return
    if concl == "parametrized":
        for x in group:
            coeffs = [MPoly() for _ in basis]
            for y, v in enumerate(sols):
                sv = MPoly.var(f"s{x}_{y}")
                vv = _clear_denominators(v)
                coeffs = [c + sv * _rf_to_mpoly(a) for c, a in zip(coeffs, vv)]
            forms[x] = _combine([v for v, _ in basis], coeffs, d)
            t_only[x] = False
        return
    _fail("linear step without a usable conclusion")


def _replay_univariate(g, flag, profile, data, forms, last):
    d = g.dim
    if not last:
        _fail("univariate step must conclude")
    for x in range(1, len(profile) + 1):
        if x in forms:
            continue
        s = profile[x - 1]
        basis = _basis_upto(flag, s)
        top = _top_positions(flag, s)
        coeffs = [MPoly.var(f"l{x}_{lab}") for _, lab in basis]
        if len(top) == 1:
            coeffs[top[0]] = MPoly.const(Fraction(1))
        forms[x] = _combine([v for v, _ in basis], coeffs, d)
    eqs = []
    general = [x for x in range(1, len(profile) + 1)
               if not any(pd["theta"] == x and pd["kind"] != "general" for pd in data["parametrization"])]
    for x in general:
        s = profile[x - 1]
        gens = [forms[y] for y in range(1, len(profile) + 1) if profile[y - 1] < s]
        eqs.extend(theta_equations(g, forms[x], gens))
    eqs = _dedupe(eqs)
    present = {e.normalized() for e in eqs}
    recorded = data["equations"]
    for e in recorded:
        mp = e if isinstance(e, MPoly) else MPoly.from_univariate(e)
        if mp.normalized() not in present:
            _fail("recorded relation is not implied by the system")
    if any(isinstance(e, MPoly) and not e.variables() for e in recorded):
        return
    p = recorded[0]
    for q in recorded[1:]:
        p = gcd(p, q)
    p = p.monic()
    if p != data["gcd"]:
        _fail("gcd mismatch")
    if p.degree <= 0:
        return
    if has_nonreal_root(p):
        _fail("relation has a non-real root; no contradiction")
    if real_root_count(p) != data["real_root_count"]:
        _fail("real root count mismatch")
