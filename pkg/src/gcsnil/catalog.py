"""Named nilpotent Lie algebras.

All algebras use the basis X0..X{d-1} except the Salamon presentation of
n_{6,3}, which keeps its labels X1..X6 (stored at indices 0..5).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .liealg import LieAlgebra, validate


class CatalogError(ValueError):
    pass


def _need(cond: bool, msg: str):
    if not cond:
        raise CatalogError(msg)


def _chain(br, start: int, stop: int):
    """[X0, Xi] = X_{i+1} for start <= i <= stop."""
    for i in range(start, stop + 1):
        br[(0, i)] = {i + 1: 1}


def _add(br, i, j, k, c):
    if i > j:
        i, j, c = j, i, -c
    row = br.setdefault((i, j), {})
    row[k] = row.get(k, 0) + c


def l_sum_r(n: int) -> LieAlgebra:
    """L_{2n-1} + R: the model filiform algebra of dimension 2n-1 plus a line."""
    _need(n >= 2, "L_sum_R requires n >= 2")
    br = {}
    _chain(br, 1, 2 * n - 3)
    return LieAlgebra(2 * n, br, name=f"L_{2 * n - 1}+R")


def l_2n_r(n: int, r: int) -> LieAlgebra:
    _need(n >= 3, "L_2n_r requires n >= 3")
    _need(r % 2 == 1 and 3 <= r <= 2 * n - 3, "L_2n_r requires r odd with 3 <= r <= 2n-3")
    br = {}
    _chain(br, 1, 2 * n - 3)
    for i in range(1, (r - 1) // 2 + 1):
        _add(br, i, r - i, 2 * n - 1, (-1) ** (i - 1))
    return LieAlgebra(2 * n, br, name=f"L_{2 * n},{r}")


def t_2n(n: int) -> LieAlgebra:
    """Graded T_{2n,2n-3}."""
    _need(n >= 3, "T_2n requires n >= 3")
    br = {}
    _chain(br, 1, 2 * n - 4)
    br[(0, 2 * n - 1)] = {2 * n - 2: 1}
    for i in range(1, n - 1):
        _add(br, i, 2 * n - 3 - i, 2 * n - 1, (-1) ** (i - 1))
        _add(br, i, 2 * n - 2 - i, 2 * n - 2, (-1) ** (i - 1) * (n - 1 - i))
    return LieAlgebra(2 * n, br, name=f"T_{2 * n},{2 * n - 3}")


def dim6(delta) -> LieAlgebra:
    """Six-dimensional t3 algebras [Y1,Y2] = Y3 + Y5, [Y5,Y1] = delta Y4 written
    in the N_{6,3}-style basis: chain X0..X4, [X1,X2] = X5, [X1,X5] = delta X4.

    delta = 0 gives L_{6,3}; delta = 1 gives N_{6,3}; delta = -1 gives T_{6,3}.
    """
    delta = Fraction(delta)
    _need(delta in (0, 1, -1), "dim6 requires delta in {0, 1, -1}")
    br = {}
    _chain(br, 1, 3)
    br[(1, 2)] = {5: 1}
    if delta:
        br[(1, 5)] = {4: delta}
    return LieAlgebra(6, br, name=f"dim6({delta})")


def n6_3() -> LieAlgebra:
    g = dim6(1)
    g.name = "N_6,3"
    return g


def salamon() -> LieAlgebra:
    """n_{6,3} in Salamon's presentation, labels X1..X6."""
    br = {(0, 1): {2: 1}, (0, 2): {3: 1}, (0, 3): {5: 1},
          (1, 2): {4: -1}, (1, 4): {5: -1}}
    return LieAlgebra(6, br, labels=[f"X{i}" for i in range(1, 7)], name="n_6,3")


def t3_family(a, b) -> LieAlgebra:
    """[X0,Xi] = X_{i+1} (i=1..3), [X1,X3] = b X4, [X1,X2] = b X3 - X5,
    [X5,X1] = a X4."""
    a, b = Fraction(a), Fraction(b)
    br = {}
    _chain(br, 1, 3)
    if b:
        br[(1, 3)] = {4: b}
    br[(1, 2)] = {k: c for k, c in ((3, b), (5, Fraction(-1))) if c}
    if a:
        _add(br, 5, 1, 4, a)
    return LieAlgebra(6, br, name=f"t3({a},{b})")


def filiform(d: int) -> LieAlgebra:
    """Model filiform algebra L_d: [X0,Xi] = X_{i+1}, i = 1..d-2."""
    _need(d >= 3, "filiform requires d >= 3")
    br = {}
    _chain(br, 1, d - 2)
    return LieAlgebra(d, br, name=f"L_{d}")


def abelian(d: int) -> LieAlgebra:
    _need(d >= 1, "abelian requires d >= 1")
    return LieAlgebra(d, {}, name=f"R^{d}")


@dataclass(frozen=True)
class Entry:
    name: str
    params: tuple[str, ...]
    ranges: str
    build: Callable
    description: str


ENTRIES = {
    e.name: e for e in [
        Entry("L_sum_R", ("n",), "n >= 2", l_sum_r, "L_{2n-1} (+) R, form t1"),
        Entry("L_2n_r", ("n", "r"), "n >= 3; r odd, 3 <= r <= 2n-3", l_2n_r,
              "L_{2n,r}, form t_r"),
        Entry("T_2n", ("n",), "n >= 3", t_2n, "graded T_{2n,2n-3}, form t_{2n-3}"),
        Entry("N6_3", (), "-", n6_3, "N_{6,3}, form t3"),
        Entry("n6_3", (), "-", salamon, "n_{6,3}, Salamon presentation (X1..X6)"),
        Entry("dim6", ("delta",), "delta in {0, 1, -1}", dim6,
              "six-dimensional t3 family: L_{6,3}, N_{6,3}, T_{6,3}"),
        Entry("t3", ("a", "b"), "a, b rational", t3_family, "two-parameter t3 family in dim 6"),
        Entry("filiform", ("d",), "d >= 3", filiform, "model filiform L_d"),
        Entry("abelian", ("d",), "d >= 1", abelian, "abelian R^d"),
    ]
}


def catalog(name: str, **params) -> LieAlgebra:
    """Build a named algebra; the result is validated."""
    entry = ENTRIES.get(name)
    if entry is None:
        raise CatalogError(f"unknown catalog name {name!r}")
    missing = [p for p in entry.params if params.get(p) is None]
    if missing:
        raise CatalogError(f"{name} requires parameter(s): {', '.join(missing)} ({entry.ranges})")
    g = entry.build(*(params[p] for p in entry.params))
    validate(g)
    return g


def small_catalog() -> list[LieAlgebra]:
    """Every dim-4 and dim-6 catalog algebra used by the exhaustive checks."""
    return [l_sum_r(2), filiform(4), l_sum_r(3), l_2n_r(3, 3), t_2n(3),
            dim6(0), dim6(1), dim6(-1), salamon(), filiform(6)]


# Salamon basis in the coordinates of dim6(1): S1=Y0, S2=Y1, S3=Y2, S4=Y3,
# S5=-Y5, S6=Y4 (columns).
SALAMON_FROM_N63 = [
    [1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, -1, 0],
]
