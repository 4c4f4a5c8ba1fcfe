"""Exhaustive witness search over coframes with coefficients in {0, +-1, +-i}.

Candidates are the row-reduced ``n x 2n`` matrices with such entries (each row
space appears once).  The two cheap filters run in numpy on Gaussian integer
values, where floating point is exact at these sizes:

* ``Omega ^ conj(Omega) != 0`` (the matrix stacked on its conjugate is invertible),
* integrability, ``d theta_i ^ Omega = 0`` for every row.

Survivors are then passed to the exact ``verify_witness``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

from .classify import verify_witness
from .exact import ONE, ZERO, I
from .exterior import PForm, differential
from .liealg import LieAlgebra, validate

VALUES = np.array([0, 1, -1, 1j, -1j], dtype=np.complex128)
EXACT = (ZERO, ONE, -ONE, I, -I)
CHUNK = 100_000


def _patterns(n: int, d: int):
    """(pivots, free positions) for each RREF shape of rank n."""
    for piv in combinations(range(d), n):
        pset = set(piv)
        free = [(r, c) for r, p in enumerate(piv) for c in range(p + 1, d) if c not in pset]
        yield piv, free


@lru_cache(maxsize=None)
def nondegenerate_coframes(n: int) -> tuple[int, np.ndarray]:
    """All RREF coframes for ``dim = 2n`` and the codes (indices into
    ``VALUES``) of those with ``Omega ^ conj(Omega) != 0``."""
    d = 2 * n
    total = 0
    kept = []
    for piv, free in _patterns(n, d):
        count = 5 ** len(free)
        total += count
        for start in range(0, count, CHUNK):
            idx = np.arange(start, min(count, start + CHUNK))
            codes = np.zeros((len(idx), n, d), dtype=np.int8)
            for r, p in enumerate(piv):
                codes[:, r, p] = 1
            rem = idx.copy()
            for r, c in reversed(free):
                codes[:, r, c] = rem % 5
                rem //= 5
            M = VALUES[codes]
            full = np.concatenate([M, M.conj()], axis=1)
            ok = np.abs(np.linalg.det(full)) > 0.5
            kept.append(codes[ok])
    return total, np.concatenate(kept) if kept else np.zeros((0, n, d), dtype=np.int8)


def _dtable(g: LieAlgebra) -> np.ndarray:
    """``D[k, a, b] = coefficient of w_a ^ w_b (a < b) in d w_k``."""
    d = g.dim
    D = np.zeros((d, d, d))
    for k in range(d):
        for (a, b), c in differential(g, PForm.basis(d, k)).terms.items():
            D[k, a, b] = float(c)
    return D


@lru_cache(maxsize=None)
def coframe_minors(n: int) -> np.ndarray:
    """Coefficients of ``Omega`` (maximal minors) for every nondegenerate
    coframe, columns ordered as ``combinations(range(2n), n)``."""
    codes = nondegenerate_coframes(n)[1]
    cols = list(combinations(range(2 * n), n))
    out = np.zeros((len(codes), len(cols)), dtype=np.complex64)
    for start in range(0, len(codes), CHUNK):
        M = VALUES[codes[start:start + CHUNK]]
        for q, c in enumerate(cols):
            out[start:start + CHUNK, q] = np.linalg.det(M[:, :, list(c)])
    return out


def integrable_mask(g: LieAlgebra, codes: np.ndarray | None = None) -> np.ndarray:
    """``d theta_i ^ theta_1 ^ ... ^ theta_n = 0`` for all rows ``i``, over the
    nondegenerate coframes of ``dim g``."""
    d = g.dim
    n = d // 2
    if codes is None:
        codes = nondegenerate_coframes(n)[1]
        minors = coframe_minors(n)
    else:
        cols = list(combinations(range(d), n))
        M = VALUES[codes]
        minors = np.stack([np.linalg.det(M[:, :, list(c)]) for c in cols], axis=1)
    col_of = {c: q for q, c in enumerate(combinations(range(d), n))}
    D = _dtable(g)
    pairs = [(a, b) for a in range(d) for b in range(a + 1, d) if D[:, a, b].any()]
    alive = np.arange(len(codes))
    for r in combinations(range(d), n + 2):
        terms = []
        for p0, p1 in combinations(range(n + 2), 2):
            a, b = r[p0], r[p1]
            if (a, b) not in pairs:
                continue
            rest = tuple(x for x in r if x not in (a, b))
            sign = -1.0 if (p0 + p1 - 1) % 2 else 1.0
            terms.append((sign, D[:, a, b], col_of[rest]))
        if not terms or not len(alive):
            continue
        keep = np.ones(len(alive), dtype=bool)
        for start in range(0, len(alive), CHUNK):
            sel = alive[start:start + CHUNK]
            M = VALUES[codes[sel]]
            acc = np.zeros((len(sel), n), dtype=np.complex128)
            for sign, col, q in terms:
                acc += sign * (M @ col) * minors[sel, q][:, None]
            keep[start:start + CHUNK] = np.all(np.abs(acc) < 1e-6, axis=1)
        alive = alive[keep]
    out = np.zeros(len(codes), dtype=bool)
    out[alive] = True
    return out


def coframe_forms(code: np.ndarray) -> list[PForm]:
    n, d = code.shape
    return [PForm(d, {(c,): EXACT[int(code[r, c])] for c in range(d) if code[r, c]}, 1)
            for r in range(n)]


@dataclass
class SearchResult:
    total: int
    nondegenerate: int
    integrable: int
    verified_checks: int
    witness: list[PForm] | None

    @property
    def found(self) -> bool:
        return self.witness is not None


def brute_force_search(g: LieAlgebra, stop_at_first: bool = True) -> SearchResult:
    validate(g)
    if g.dim % 2 or g.dim > 6:
        raise ValueError("exhaustive search is limited to even dimension <= 6")
    n = g.dim // 2
    total, cands = nondegenerate_coframes(n)
    mask = integrable_mask(g)
    survivors = cands[mask]
    witness = None
    checks = 0
    for code in survivors:
        checks += 1
        forms = coframe_forms(code)
        if verify_witness(g, forms).ok:
            witness = witness or forms
            if stop_at_first:
                break
    return SearchResult(total, len(cands), int(mask.sum()), checks, witness)


def transport_witness(thetas: Sequence[PForm], T) -> list[PForm]:
    """Pull a coframe back along the basis change ``Y_j = sum_i T[i][j] X_i``:
    the new coefficient of ``w_j`` is ``theta(Y_j)``."""
    d = len(T)
    out = []
    for th in thetas:
        v = th.to_vector(ZERO)
        w = [sum((v[i] * Fraction(T[i][j]) for i in range(d)), ZERO) for j in range(d)]
        out.append(PForm(d, {(j,): c for j, c in enumerate(w) if c}, 1))
    return out
