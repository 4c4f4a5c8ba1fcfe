import random
from fractions import Fraction

import pytest

from gcsnil.catalog import abelian, dim6, l_sum_r, salamon
from gcsnil.exact import GaussianRational, I, ONE, ZERO
from gcsnil.exterior import PForm, differential, ideal_member, wedge
from gcsnil.formats import parse_form
from gcsnil.spinor import (IsotropicSubspace, Spinor, all_subsets, annihilator, clifford_act,
                           cond_nondegenerate, exp_form, integrability, spinor_differential,
                           spinor_from_data, spinor_line_from_L)
from gcsnil.structures import (GeneralizedVector, gcs_from_complex, gcs_from_symplectic,
                               gcs_validate, j_from_coframe, pairing)

WITNESSES = {
    "L_3+R": (l_sum_r(2), ["w0 + i w1", "w2 + i w3"]),
    "dim6(1)": (dim6(1), ["w0 + i w1", "w3 + i w5", "w2 + i w4"]),
    "n_6,3": (salamon(), ["w0 + i w1", "w3 - i w4", "w2 + i w5"]),
}


def gauss(rng):
    return GaussianRational(Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-2, 2)))


def rand_spinor(rng, d):
    subsets = all_subsets(d)
    picks = rng.sample(subsets, min(len(subsets), rng.randint(1, 6)))
    r = Spinor(d, {s: gauss(rng) for s in picks})
    return r or Spinor.one(d)


def rand_gv(rng, d):
    return GeneralizedVector([gauss(rng) for _ in range(d)], [gauss(rng) for _ in range(d)])


def coframe(name):
    g, exprs = WITNESSES[name]
    return g, [parse_form(s, g.dim) for s in exprs]


@pytest.mark.parametrize("d", [3, 4, 6])
def test_clifford_relation(d):
    rng = random.Random(d)
    for _ in range(200):
        v, r = rand_gv(rng, d), rand_spinor(rng, d)
        assert clifford_act(v, clifford_act(v, r)) == pairing(v, v) * r


def test_clifford_anticommutator():
    rng = random.Random(5)
    for _ in range(50):
        u, v, r = rand_gv(rng, 4), rand_gv(rng, 4), rand_spinor(rng, 4)
        lhs = clifford_act(u, clifford_act(v, r)) + clifford_act(v, clifford_act(u, r))
        assert lhs == (2 * pairing(u, v)) * r


def test_annihilators_isotropic():
    rng = random.Random(11)
    for _ in range(60):
        d = rng.choice([2, 3, 4])
        L = annihilator(l_sum_r(2) if d == 4 else abelian(d), rand_spinor(rng, d))
        assert L.is_isotropic()
        assert L.dim <= d


def test_pure_spinors():
    g = l_sum_r(2)
    assert annihilator(g, Spinor.one(4)).pure
    L = annihilator(g, Spinor.from_form(PForm.basis(4, 0, 1)))
    assert L.pure and L.is_isotropic()
    mixed = Spinor.one(4) + Spinor.from_form(PForm.basis(4, 0, 1, 2, 3))
    assert not annihilator(g, mixed).pure


def test_spinor_from_data_examples():
    w = PForm.basis(4, 0, 1)
    r = spinor_from_data([], None, w, 4)
    assert r == Spinor.one(4) + Spinor.from_form(w.map(lambda c: I * c))
    Om = [parse_form("w0 + i w1", 4)]
    r = spinor_from_data(Om, PForm.basis(4, 2, 3), None)
    assert r == Spinor.from_form(Om[0]) + Spinor.from_form(wedge(Om[0], PForm.basis(4, 2, 3)))
    assert exp_form(PForm.basis(4, 0, 1) + PForm.basis(4, 2, 3)).component(4) == PForm.basis(4, 0, 1, 2, 3)


def test_cond_nondegenerate():
    g = l_sum_r(2)
    _, th = coframe("L_3+R")
    assert cond_nondegenerate(g, th, None)
    assert not cond_nondegenerate(g, [parse_form("w0", 4), parse_form("w2 + i w3", 4)], None)
    w = PForm.basis(4, 0, 2) + PForm.basis(4, 1, 3)
    assert cond_nondegenerate(g, [], w)
    assert not cond_nondegenerate(g, [], None)
    assert cond_nondegenerate(g, [parse_form("w0 + i w1", 4)], PForm.basis(4, 2, 3))


@pytest.mark.parametrize("name", sorted(WITNESSES))
def test_complex_witness_spinor(name):
    g, th = coframe(name)
    r = spinor_from_data(th, None, None, g.dim)
    assert integrability(g, r).closed
    L = annihilator(g, r)
    assert L.pure and L.transverse() and L.is_isotropic()
    assert spinor_line_from_L(g, L).projectively_equal(r)
    # the +i eigenspace of the complex GCS annihilates the same spinor line
    J = j_from_coframe(g, th)
    rep = gcs_validate(g, gcs_from_complex(g, J))
    assert rep.type == g.dim // 2
    assert IsotropicSubspace(g.dim, rep.eigenspace, True) == L
    # d theta_i lies in the ideal of theta_1 .. theta_i
    for i, t in enumerate(th):
        assert ideal_member(differential(g, t), th[:i + 1])


def test_symplectic_spinor():
    g = l_sum_r(2)
    w = PForm.basis(4, 0, 2) + PForm.basis(4, 1, 3)
    r = spinor_from_data([], None, w, 4)
    assert integrability(g, r).closed
    L = annihilator(g, r)
    assert L.pure and L.transverse()
    rep = gcs_validate(g, gcs_from_symplectic(g, w))
    assert rep.type == 0
    assert IsotropicSubspace(4, rep.eigenspace, True) == L
    assert spinor_line_from_L(g, rep.eigenspace).projectively_equal(r)


def test_integrability_with_correction():
    g = dim6(1)
    r = Spinor.from_form(-PForm.basis(6, 3)) + Spinor.from_form(PForm.basis(6, 0, 1, 2))
    res = integrability(g, r)
    assert not res.closed and res.solution is not None
    assert clifford_act(res.solution, r) == spinor_differential(g, r)


def test_integrability_fails():
    g = l_sum_r(2)
    r = exp_form(PForm.basis(4, 2, 3))
    res = integrability(g, r)
    assert not res.closed and res.solution is None


def test_not_maximal_isotropic():
    g = l_sum_r(2)
    col = [ONE] + [ZERO] * 7
    with pytest.raises(ValueError, match="not maximal isotropic"):
        spinor_line_from_L(g, [col])


def test_max_dim_guard():
    g = dim6(1)
    with pytest.raises(ValueError, match="max-dim"):
        spinor_line_from_L(g, [], max_dim=4)


def test_zero_spinor_rejected():
    with pytest.raises(ValueError):
        annihilator(l_sum_r(2), Spinor(4))
