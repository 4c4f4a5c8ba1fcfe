from fractions import Fraction

import pytest
from hypothesis import given

from gcsnil.exact import (I, ONE, ZERO, GaussianRational, as_complex, conj, format_complex,
                          format_rational, parse_complex, parse_rational)

from conftest import gaussians, small_fracs


@pytest.mark.parametrize("text,value", [("3", Fraction(3)), ("-2/4", Fraction(-1, 2)),
                                        ("+7/1", Fraction(7)), ("0", Fraction(0))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["", "1/0", "a", "1.5", "1/", "/2", "1//2"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_format_rational_omits_unit_denominator():
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-2, 6)) == "-1/3"


@given(small_fracs)
def test_rational_round_trip(q):
    assert parse_rational(format_rational(q)) == q


@pytest.mark.parametrize("text,re,im", [("i", 0, 1), ("-i", 0, -1), ("1-i", 1, -1),
                                        ("2/3+5i", Fraction(2, 3), 5), ("-1/2i", 0, Fraction(-1, 2)),
                                        ("4", 4, 0)])
def test_parse_complex(text, re, im):
    z = parse_complex(text)
    assert (z.re, z.im) == (Fraction(re), Fraction(im))


@given(gaussians)
def test_complex_round_trip(z):
    assert parse_complex(format_complex(z)) == z


def test_i_squared():
    assert I * I == -ONE
    assert (1 + I) * (1 - I) == 2


@given(gaussians, gaussians, gaussians)
def test_field_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert conj(a * b) == conj(a) * conj(b)
    if b != ZERO:
        assert (a / b) * b == a
    # oracle: Python complex arithmetic on exactly representable values
    pa, pb = complex(float(a.re), float(a.im)), complex(float(b.re), float(b.im))
    prod = a * b
    assert abs(complex(float(prod.re), float(prod.im)) - pa * pb) < 1e-9


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_conj_on_rationals_is_identity():
    assert conj(Fraction(3, 2)) == Fraction(3, 2)
    assert as_complex(Fraction(1, 2)).is_real
