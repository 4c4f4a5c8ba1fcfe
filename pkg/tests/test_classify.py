import copy
import json

import pytest

from gcsnil.catalog import abelian, dim6, filiform, l_2n_r, l_sum_r, n6_3, salamon, t_2n
from gcsnil.classify import (CertificateError, OutOfScope, admissible_profiles, classify,
                             decide_profile, dual_flag_basis, extract_constraints,
                             nil_profiles, replay_bound, replay_profile, type_bound,
                             type_bound_bruteforce, verify_witness)
from gcsnil.exterior import annihilator_filtration
from gcsnil.formats import parse_form
from gcsnil.liealg import LieAlgebra, validate
from gcsnil.poly import MPoly, UnivariatePoly

from conftest import full_catalog

t = UnivariatePoly.x()


def reference_equations(delta):
    """The four displayed relations for the dim 6 family, with lambda, beta,
    gamma renamed to the engine's l1, l2, l3."""
    lam = {k: MPoly.var(f"l1_{k}") for k in range(2)}
    be = {k: MPoly.var(f"l2_{k}") for k in (0, 1, 2, 3, 5)}
    ga = {k: MPoly.var(f"l3_{k}") for k in range(6)}
    return [
        be[5] * lam[0] - be[3] * lam[1],
        -ga[3] * be[3] * lam[1] + ga[4] * be[2] * lam[1] + ga[5] * be[3] * lam[0],
        ga[4] * (be[5] * lam[1] + delta * be[3] * lam[0]),
        -ga[3] * be[5] * lam[1] - delta * ga[4] * be[2] * lam[0] + ga[5] * be[5] * lam[0],
    ]


def forms(g, exprs):
    return [parse_form(s, g.dim) for s in exprs]


# --------------------------------------------------------------------------
# bound and profiles

even_catalog = [g for g in full_catalog()
                if g.dim % 2 == 0 and validate(g).cls in ("filiform", "quasi-filiform")]


@pytest.mark.parametrize("g", even_catalog, ids=lambda g: g.name)
def test_bound_matches_bruteforce(g):
    # the brute-force reading stops at n, the closed formula does not
    b = type_bound(g)
    assert min(b.k_max, b.n) == type_bound_bruteforce(g)


@pytest.mark.parametrize("d", [4, 6])
def test_filiform_bound(d):
    b = type_bound(filiform(d))
    assert b.k_max == 1 < b.n
    assert replay_bound(filiform(d), b)
    v = classify(filiform(d))
    assert v.outcome == "obstructed" and v.profiles == []


def test_bound_values():
    assert type_bound(dim6(0)).to_dict() == {"n": 3, "nilindex": 4, "j": 3, "k_max": 3}
    assert type_bound(t_2n(4)).k_max == 5
    assert type_bound(l_sum_r(3)).k_max == 2


def test_replay_bound_rejects_wrong_data():
    b = type_bound(dim6(0))
    with pytest.raises(CertificateError):
        replay_bound(dim6(0), b)  # k_max = n does not exclude type n


def test_profiles():
    assert nil_profiles(dim6(1), 3) == [(1, 3, 4)]
    assert nil_profiles(t_2n(4), 4) == [(1, 5, 6, 7), (1, 5, 5, 6)]
    assert nil_profiles(l_2n_r(5, 5), 5) == [(1, 5, 6, 7, 8)]
    with pytest.raises(ValueError):
        nil_profiles(filiform(6), 3)


@pytest.mark.parametrize("g", [dim6(0), dim6(1), t_2n(4), l_2n_r(4, 5), l_2n_r(5, 5)],
                         ids=lambda g: g.name)
def test_nil_profiles_are_admissible(g):
    # the general rules drop profiles beyond the nilindex, which counting obstructs
    n = g.dim // 2
    m = annihilator_filtration(g).nilindex
    kept = {p for p in nil_profiles(g, n) if max(p) <= m}
    assert kept <= set(admissible_profiles(g, n))


def test_dual_flag_basis_levels():
    F = annihilator_filtration(dim6(1))
    flag = dual_flag_basis(F)
    assert [lev for lev, _, _ in flag] == [1, 1, 2, 3, 3, 4]
    assert [lab for _, _, lab in flag] == ["0", "1", "2", "3", "5", "4"]


# --------------------------------------------------------------------------
# extracted systems

@pytest.mark.parametrize("delta", [0, 1, -1])
def test_extracted_equations_match_reference(delta):
    cs = extract_constraints(dim6(delta), (1, 3, 4))
    expected = {e.normalized() for e in reference_equations(delta)}
    assert cs.normalized_equations() == expected


@pytest.mark.parametrize("delta", [2, -3])
def test_extracted_equations_other_parameters(delta):
    # the family formula stays valid for other delta, which pins the sign convention
    br = dim6(1).brackets
    br[(1, 5)] = {4: delta}
    g = LieAlgebra(6, br, name=f"dim6({delta})")
    validate(g)
    cs = extract_constraints(g, (1, 3, 4))
    expected = {e.normalized() for e in reference_equations(delta)}
    assert cs.normalized_equations() == expected


def test_case_1b_pair():
    cs = extract_constraints(l_2n_r(4, 5), (1, 5, 5, 6))
    l = MPoly.var
    pair = {(l("l1_1") * l("l2_5") - l("l1_0") * l("l2_7")).normalized(),
            (l("l1_1") * l("l2_7")).normalized()}
    assert pair <= cs.normalized_equations()


def test_abelian_has_no_equations():
    cs = extract_constraints(abelian(2), (1,))
    assert cs.equations == []
    assert "Omega ^ conj(Omega) != 0" in cs.side_conditions


def test_side_conditions():
    cs = extract_constraints(dim6(1), (1, 3, 4))
    assert cs.side_conditions[0] == "Im(l1_0 * conj(l1_1)) != 0"
    assert any("not all zero" in s and "l3_4" in s for s in cs.side_conditions)
    d = cs.to_dict()
    assert d["profile"] == [1, 3, 4]
    assert "l2_5" in d["unknowns"]


# --------------------------------------------------------------------------
# witnesses

def test_verify_witness_stages():
    g = dim6(1)
    rep = verify_witness(g, forms(g, ["w0 + i w1", "w3 + i w5", "w2 + i w4"]))
    assert rep.ok and all(rep.stages.values()) and len(rep.stages) == 5
    bad = verify_witness(dim6(0), forms(g, ["w0 + i w1", "w3 + i w5", "w2 + i w4"]))
    assert bad.failed_stage == "closed"
    deg = verify_witness(g, forms(g, ["w0", "w3 + i w5", "w2 + i w4"]))
    assert deg.failed_stage == "nondegenerate"
    with pytest.raises(ValueError):
        verify_witness(g, forms(g, ["w0 + i w1"]))


# --------------------------------------------------------------------------
# decisions

def test_l3r_admits():
    v = classify(l_sum_r(2))
    assert v.outcome == "admits"
    assert [str(x) for x in v.witness] == ["w0 + i w1", "w2 + i w3"]
    assert verify_witness(l_sum_r(2), v.witness).ok


@pytest.mark.parametrize("delta,poly,roots", [(0, t * t, 1), (-1, t * t - 1, 2)])
def test_dim6_obstructed(delta, poly, roots):
    v = classify(dim6(delta))
    assert v.outcome == "obstructed"
    (res,) = v.profiles
    assert res.polynomial == poly
    assert res.real_root_count == roots
    assert replay_profile(dim6(delta), res)


def test_dim6_admits():
    g = dim6(1)
    v = classify(g)
    assert v.outcome == "admits"
    assert [str(x) for x in v.witness] == ["w0 + i w1", "w3 + i w5", "w2 + i w4"]
    assert v.profiles[0].polynomial == t * t + 1


@pytest.mark.parametrize("g,outcome", [
    (n6_3(), "admits"), (salamon(), "admits"), (t_2n(3), "obstructed"),
    (l_2n_r(3, 3), "obstructed"), (l_sum_r(3), "obstructed"),
], ids=lambda v: getattr(v, "name", v))
def test_catalog_outcomes(g, outcome):
    v = classify(g)
    assert v.outcome == outcome
    for r in v.profiles:
        if r.outcome == "obstructed":
            assert replay_profile(g, r)


def test_t6_3_polynomial():
    (res,) = classify(t_2n(3)).profiles
    assert res.polynomial == t


def test_higher_obstructions():
    v = classify(l_2n_r(5, 5))
    assert v.outcome == "obstructed"
    assert v.profiles[0].reason == "theta2 forced into V_4"
    v = classify(l_2n_r(4, 5))
    assert v.outcome == "obstructed"
    assert [r.profile for r in v.profiles] == [(1, 5, 6, 7), (1, 5, 5, 6)]
    v = classify(t_2n(4))
    assert v.outcome == "obstructed"
    assert v.profiles[1].reason.startswith("theta2, theta3 dependent modulo V_4")
    for g in (l_2n_r(5, 5), l_2n_r(4, 5), t_2n(4)):
        for r in classify(g).profiles:
            assert replay_profile(g, r)


def test_decide_profile_counting():
    r = decide_profile(l_2n_r(4, 5), (1, 5, 6, 7))
    assert r.outcome == "obstructed"
    assert r.steps[0].kind == "count"


# --------------------------------------------------------------------------
# replay tampering

def test_tampered_univariate_rejected():
    g = dim6(-1)
    res = copy.deepcopy(classify(g).profiles[0])
    step = res.steps[-1]
    step.data["equations"] = [t * t + 1]
    step.data["gcd"] = t * t + 1
    with pytest.raises(CertificateError):
        replay_profile(g, res)
    res = copy.deepcopy(classify(g).profiles[0])
    res.steps[-1].data["real_root_count"] = 1
    with pytest.raises(CertificateError, match="real root count"):
        replay_profile(g, res)


def test_tampered_linear_rejected():
    g = l_2n_r(5, 5)
    res = copy.deepcopy(classify(g).profiles[0])
    lin = res.steps[1]
    lin.data["matrix"][0][3] = t + 1
    with pytest.raises(CertificateError, match="linear system differs"):
        replay_profile(g, res)
    res = copy.deepcopy(classify(g).profiles[0])
    res.steps[1].data["top_rank"] = 1
    with pytest.raises(CertificateError):
        replay_profile(g, res)


def test_certificate_for_wrong_algebra_rejected():
    res = classify(dim6(-1)).profiles[0]
    with pytest.raises(CertificateError):
        replay_profile(dim6(1), res)


def test_replay_refuses_admits():
    res = classify(dim6(1)).profiles[0]
    with pytest.raises(CertificateError):
        replay_profile(dim6(1), res)


# --------------------------------------------------------------------------
# reports and scope

def test_verdict_json():
    d = classify(dim6(-1)).to_dict()
    assert d["schema"] == 1
    assert d["profiles"][0]["polynomial"] == "t^2 - 1"
    assert d["profiles"][0]["real_root_count"] == 2
    json.dumps(d)
    d = classify(dim6(1)).to_dict()
    assert d["witness"] == ["w0 + i w1", "w3 + i w5", "w2 + i w4"]
    assert json.loads(json.dumps(d, sort_keys=True)) == d


def test_deterministic():
    a = json.dumps(classify(t_2n(4)).to_dict(), sort_keys=True)
    b = json.dumps(classify(t_2n(4)).to_dict(), sort_keys=True)
    assert a == b


def test_out_of_scope():
    with pytest.raises(OutOfScope, match="out of classified scope"):
        classify(abelian(4))
    g = LieAlgebra(5, {(0, 1): {2: 1}, (0, 2): {3: 1}, (0, 3): {4: 1}})
    with pytest.raises(OutOfScope, match="odd dimension"):
        classify(g)
