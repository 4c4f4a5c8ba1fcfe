import numpy as np
import pytest

from gcsnil.catalog import SALAMON_FROM_N63, dim6, l_sum_r, salamon, small_catalog
from gcsnil.classify import classify, verify_witness
from gcsnil.exterior import differential, wedge, wedge_all
from gcsnil.formats import parse_form
from gcsnil.liealg import verify_isomorphism
from gcsnil.search import (brute_force_search, coframe_forms, integrable_mask,
                           nondegenerate_coframes, transport_witness)

ADMITS = {"L_3+R", "dim6(1)", "n_6,3"}


def test_candidate_counts():
    total, codes = nondegenerate_coframes(2)
    assert (total, len(codes)) == (806, 196)
    total, codes = nondegenerate_coframes(3)
    assert total == 2_558_556
    assert len(codes) <= 10 ** 6


def test_integrable_mask_matches_exact_check():
    g = l_sum_r(2)
    codes = nondegenerate_coframes(2)[1]
    mask = integrable_mask(g)
    for code, flag in zip(codes, mask):
        th = coframe_forms(code)
        top = wedge_all(th, 4)
        exact = all(not wedge(differential(g, x), top) for x in th)
        assert exact == bool(flag)


def test_integrable_mask_on_explicit_codes():
    g = dim6(1)
    codes = nondegenerate_coframes(3)[1][:2000]
    assert np.array_equal(integrable_mask(g, codes), integrable_mask(g)[:2000])


@pytest.mark.parametrize("g", small_catalog(), ids=lambda g: g.name)
def test_concordance_with_classify(g):
    res = brute_force_search(g)
    assert res.found == (g.name in ADMITS)
    assert res.verified_checks <= 10 ** 6
    assert (classify(g).outcome == "admits") == res.found
    if res.found:
        assert verify_witness(g, res.witness).ok


def test_survivor_counts():
    assert int(integrable_mask(l_sum_r(2)).sum()) == 20
    assert int(integrable_mask(dim6(1)).sum()) == 100
    assert int(integrable_mask(dim6(-1)).sum()) == 0


def test_salamon_transport():
    g, h = dim6(1), salamon()
    assert verify_isomorphism(g, h, SALAMON_FROM_N63)
    th = [parse_form(s, 6) for s in ("w0 + i w1", "w3 + i w5", "w2 + i w4")]
    moved = transport_witness(th, SALAMON_FROM_N63)
    assert verify_witness(h, moved).ok
    assert [str(x) for x in moved] == [str(x) for x in classify(h).witness]


def test_search_rejects_large_dimension():
    from gcsnil.catalog import t_2n
    with pytest.raises(ValueError):
        brute_force_search(t_2n(4))
