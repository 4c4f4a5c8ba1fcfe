from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import assume, given

from gcsnil.catalog import abelian, n6_3
from gcsnil.exact import GaussianRational, I
from gcsnil.exterior import PForm
from gcsnil.formats import (ParseError, format_algebra, parse_algebra, parse_form,
                            parse_generalized, parse_matrix)
from gcsnil.liealg import JacobiError, validate

from conftest import forms, full_catalog, gaussians

ALGEBRAS = Path(__file__).resolve().parent.parent / "algebras"


@pytest.mark.parametrize("g", full_catalog(), ids=lambda g: g.name)
def test_round_trip(g):
    text = format_algebra(g)
    h = parse_algebra(text)
    assert h == g
    assert format_algebra(h) == text


def test_n6_3_file_is_catalog_equal():
    g = parse_algebra((ALGEBRAS / "n6_3.alg").read_text())
    validate(g)
    assert g == n6_3()


def test_empty_bracket_section_is_abelian():
    assert parse_algebra("dim 2\n") == abelian(2)


def test_labels_and_comments():
    g = parse_algebra("# heisenberg\ndim 3\nbasis A B C\nbracket A B = 1/2 C  # half\n")
    assert g.labels == ("A", "B", "C")
    assert g.brackets == {(0, 1): {2: Fraction(1, 2)}}
    assert "basis A B C" in format_algebra(g)


def test_format_signs():
    g = parse_algebra("dim 4\nbracket X0 X1 = X2 - 2/3 X3\n")
    assert format_algebra(g) == "dim 4\nbracket X0 X1 = 1 X2 - 2/3 X3\n"


@pytest.mark.parametrize("text,msg,line,col", [
    ("dim 3\nbracket X1 X1 = 1 X2\n", "i < j required", 2, 9),
    ("dim 3\nbracket X1 X0 = 1 X2\n", "i < j required", 2, 9),
    ("dim 3\nbracket X0 X1 = 1 X2\nbracket X0 X1 = 1 X2\n", "duplicate bracket line", 3, 1),
    ("dim 3\nbracket X0 X5 = 1 X2\n", "index out of range", 2, 12),
    ("dim 3\nbracket X0 X1 = 1 X7\n", "index out of range", 2, 19),
    ("dim 3\nbracket X0 X1 = 1/0 X2\n", "", 2, 17),
    ("dim 3\nbracket X0 X1 = 1 X2 X1\n", "expected '+' or '-'", 2, 22),
    ("dim 3\ndim 3\n", "duplicate dim", 2, 1),
    ("bracket X0 X1 = 1 X2\n", "dim must come first", 1, 1),
    ("# nothing\n", "missing dim", 1, 1),
    ("dim 2\nfoo\n", "unknown directive", 2, 1),
], ids=lambda v: str(v)[:20])
def test_parse_errors(text, msg, line, col):
    with pytest.raises(ParseError) as info:
        parse_algebra(text)
    e = info.value
    assert msg in e.message
    assert (e.line, e.col) == (line, col)
    assert str(e).startswith(f"line {line}, col {col}: ")


def test_example_files():
    with pytest.raises(ParseError, match="i < j required"):
        parse_algebra((ALGEBRAS / "bad_syntax.alg").read_text())
    g = parse_algebra((ALGEBRAS / "broken.alg").read_text())
    with pytest.raises(JacobiError):
        validate(g)


def test_parse_form_examples():
    assert parse_form("w0 + i w1", 4) == PForm(4, {(0,): 1, (1,): I}, 1)
    assert parse_form("2/3 w2 - i w3", 4) == PForm(4, {(2,): Fraction(2, 3), (3,): -I}, 1)
    assert parse_form("w1^w0", 4) == PForm.basis(4, 0, 1) * -1
    assert parse_form("(1+i) w2^w3", 4) == PForm.basis(4, 2, 3) * GaussianRational(1, 1)
    assert parse_form("w0 ∧ w1", 4) == PForm.basis(4, 0, 1)


@pytest.mark.parametrize("text,col", [("w0 + w9", 6), ("w0 w1", 4), ("", 1), ("2/0 w1", 1),
                                      ("v0", 1), ("w0 + * w1", 6)])
def test_parse_form_errors(text, col):
    with pytest.raises(ParseError) as info:
        parse_form(text, 4)
    assert info.value.col == col


def test_mixed_degrees_rejected():
    with pytest.raises(ParseError, match="mixed degrees"):
        parse_form("w0 + w1^w2", 4)


@given(forms(5, 2, gaussians))
def test_form_print_parse_round_trip(a):
    assume(a)
    assert parse_form(str(a), 5) == a


def test_parse_generalized():
    v = parse_generalized("X0 + 2 w1 - i X3", 4)
    assert v.vec == (1, 0, 0, -I)
    assert v.form == (0, 2, 0, 0)


def test_parse_matrix():
    assert parse_matrix("1 0; 0 -1/2") == [[1, 0], [0, Fraction(-1, 2)]]
    with pytest.raises(ValueError):
        parse_matrix("1 0; 0")
