from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from gcsnil.catalog import (abelian, dim6, filiform, l_2n_r, l_sum_r, n6_3, salamon,
                            t_2n)
from gcsnil.exact import GaussianRational
from gcsnil.exterior import PForm

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

small_fracs = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))
gaussians = st.builds(GaussianRational, small_fracs, small_fracs)


def forms(dim, degree, coeffs=small_fracs):
    from itertools import combinations

    keys = list(combinations(range(dim), degree))
    return st.dictionaries(st.sampled_from(keys), coeffs, max_size=6).map(
        lambda t: PForm(dim, t, degree))


def vectors(dim, coeffs=small_fracs):
    return st.lists(coeffs, min_size=dim, max_size=dim)


def catalog_sample():
    """Five catalog algebras used for the randomized law checks."""
    return [l_sum_r(2), dim6(1), t_2n(4), l_2n_r(4, 5), salamon()]


def full_catalog():
    out = [abelian(2), abelian(4), filiform(4), filiform(6), dim6(0), dim6(1), dim6(-1),
           n6_3(), salamon()]
    for n in (2, 3, 4, 5):
        out.append(l_sum_r(n))
    for n in (3, 4, 5):
        out.append(t_2n(n))
        for r in range(3, 2 * n - 2, 2):
            out.append(l_2n_r(n, r))
    return out


@pytest.fixture(params=full_catalog(), ids=lambda g: g.name)
def catalog_algebra(request):
    return request.param
