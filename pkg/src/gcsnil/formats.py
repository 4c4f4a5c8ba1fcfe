"""Text formats: algebra files, form expressions and generalized vectors.

Algebra files are line oriented::

    # comment
    dim 4
    basis X0 X1 X2 X3          (optional)
    bracket X0 X1 = 1 X2       (i < j, rational coefficients)

``format_algebra`` prints the canonical form, which parses back to itself.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .exact import GaussianRational, ONE, ZERO, format_rational, parse_complex, parse_rational
from .exterior import PForm, _sort_sign
from .liealg import LieAlgebra

_LABEL = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUMBER = re.compile(r"\d+(?:/\d*)?")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        self.message, self.line, self.col = message, line, col
        super().__init__(f"line {line}, col {col}: {message}")


def _words(text: str):
    return [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", text)]


def parse_algebra(text: str, name: str | None = None) -> LieAlgebra:
    """Parse an algebra file into a raw (unvalidated) ``LieAlgebra``."""
    dim = None
    labels = None
    brackets: dict = {}
    where: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        words = _words(line)
        if not words:
            continue
        col, head = words[0]
        if head == "dim":
            if dim is not None:
                raise ParseError("duplicate dim line", lineno, col)
            if len(words) != 2 or not words[1][1].isdigit() or int(words[1][1]) < 1:
                raise ParseError("expected 'dim N' with N >= 1", lineno, col)
            dim = int(words[1][1])
        elif head == "basis":
            if dim is None:
                raise ParseError("dim must come first", lineno, col)
            if labels is not None:
                raise ParseError("duplicate basis line", lineno, col)
            names = [w for _, w in words[1:]]
            if len(names) != dim:
                raise ParseError(f"basis lists {len(names)} labels, dim is {dim}", lineno, col)
            for c, w in words[1:]:
                if not _LABEL.fullmatch(w):
                    raise ParseError(f"bad label {w!r}", lineno, c)
            if len(set(names)) != dim:
                raise ParseError("repeated basis label", lineno, col)
            labels = names
        elif head == "bracket":
            if dim is None:
                raise ParseError("dim must come first", lineno, col)
            index = {lab: k for k, lab in enumerate(labels or [f"X{k}" for k in range(dim)])}
            if len(words) < 4 or words[3][1] != "=":
                raise ParseError("expected 'bracket A B = ...'", lineno, col)
            ids = []
            for c, w in words[1:3]:
                if w not in index:
                    raise ParseError(f"unknown basis element {w!r} (index out of range)", lineno, c)
                ids.append(index[w])
            i, j = ids
            if i >= j:
                raise ParseError("i < j required", lineno, words[1][0])
            if (i, j) in brackets:
                raise ParseError(f"duplicate bracket line (first at line {where[(i, j)]})",
                                 lineno, col)
            eq_col = words[3][0]
            brackets[(i, j)] = _parse_terms(line[eq_col:], eq_col + 1, lineno, index)
            where[(i, j)] = lineno
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, col)
    if dim is None:
        raise ParseError("missing dim line", 1, 1)
    return LieAlgebra(dim, brackets, labels, name)


def _parse_terms(s: str, offset: int, lineno: int, index: dict) -> dict:
    """``c1 A + c2 B - ...``; a lone ``0`` is the zero vector."""
    out: dict = {}
    pos = 0
    first = True

    def skip(p):
        while p < len(s) and s[p].isspace():
            p += 1
        return p

    pos = skip(pos)
    if s[pos:].strip() == "0":
        return out
    if pos >= len(s):
        raise ParseError("empty right-hand side", lineno, offset + pos)
    while pos < len(s):
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos = skip(pos + 1)
        elif not first:
            raise ParseError("expected '+' or '-'", lineno, offset + pos)
        coeff = Fraction(1)
        m = _NUMBER.match(s, pos)
        if m:
            try:
                coeff = parse_rational(m.group())
            except ValueError as e:
                raise ParseError(str(e), lineno, offset + pos) from None
            pos = skip(m.end())
        m = _LABEL.match(s, pos)
        if not m:
            raise ParseError("expected a basis element", lineno, offset + pos)
        if m.group() not in index:
            raise ParseError(f"unknown basis element {m.group()!r} (index out of range)",
                             lineno, offset + pos)
        k = index[m.group()]
        out[k] = out.get(k, Fraction(0)) + sign * coeff
        pos = skip(m.end())
        first = False
    return out


def format_algebra(g: LieAlgebra) -> str:
    lines = [f"dim {g.dim}"]
    if g.labels != tuple(f"X{k}" for k in range(g.dim)):
        lines.append("basis " + " ".join(g.labels))
    for (i, j), row in sorted(g.brackets.items()):
        parts = []
        for k, c in sorted(row.items()):
            text = f"{format_rational(abs(c))} {g.labels[k]}"
            if not parts:
                parts.append(("-" if c < 0 else "") + text)
            else:
                parts.append(("- " if c < 0 else "+ ") + text)
        lines.append(f"bracket {g.labels[i]} {g.labels[j]} = {' '.join(parts)}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# form expressions

_COEFF = re.compile(r"\((?P<paren>[^)]*)\)|(?P<num>\d+(?:/\d+)?)?(?P<i>i(?![A-Za-z0-9_]))?")
_SYMBOL = re.compile(r"(?P<sym>[A-Za-z]+)(?P<idx>\d+)")


def _parse_linear(text: str, dim: int, symbols: tuple[str, ...]):
    """Terms ``coeff sym_a ^ sym_b ...``; returns a list of
    ``(coefficient, [(symbol, index), ...])``."""
    s = text
    pos = 0
    terms = []

    def skip(p):
        while p < len(s) and s[p].isspace():
            p += 1
        return p

    def err(msg, p):
        raise ParseError(msg, 1, p + 1)

    pos = skip(pos)
    if pos >= len(s):
        err("empty expression", pos)
    first = True
    while pos < len(s):
        sign = ONE
        if s[pos] in "+-":
            sign = -ONE if s[pos] == "-" else ONE
            pos = skip(pos + 1)
        elif not first:
            err("expected '+' or '-'", pos)
        coeff = ONE
        start = pos
        m = _COEFF.match(s, pos)
        if m and m.group("paren") is not None:
            try:
                coeff = parse_complex(m.group("paren"))
            except ValueError as e:
                err(str(e), pos)
            pos = skip(m.end())
        elif m and (m.group("num") or m.group("i")):
            lit = (m.group("num") or "") + (m.group("i") or "")
            try:
                coeff = parse_complex(lit)
            except ValueError as e:
                err(str(e), pos)
            pos = skip(m.end())
        factors = []
        while True:
            m = _SYMBOL.match(s, pos)
            if not m:
                break
            sym, k = m.group("sym"), int(m.group("idx"))
            if sym not in symbols:
                err(f"unknown symbol {sym!r}", pos)
            if k >= dim:
                err(f"index {k} out of range for dim {dim}", pos)
            factors.append((sym, k))
            pos = skip(m.end())
            if pos < len(s) and s[pos] in "^∧":
                pos = skip(pos + 1)
                continue
            break
        if not factors and pos == start:
            err("expected a term", pos)
        if pos < len(s) and s[pos] not in "+-":
            err(f"unexpected {s[pos]!r}", pos)
        terms.append((sign * coeff, factors))
        first = False
    return terms


def parse_form(text: str, dim: int, symbol: str = "w") -> PForm:
    """``w0 + i w1``, ``2/3 w2 - i w5``, ``w0^w1 + (1+i) w2^w3``."""
    out: dict = {}
    degree = None
    for coeff, factors in _parse_linear(text, dim, (symbol,)):
        idx = [k for _, k in factors]
        if degree is None:
            degree = len(idx)
        elif degree != len(idx):
            raise ParseError("mixed degrees in a form expression", 1, 1)
        sign, key = _sort_sign(idx)
        if not sign:
            continue
        c = coeff if sign > 0 else -coeff
        out[key] = out[key] + c if key in out else c
    out = {k: (c.re if isinstance(c, GaussianRational) and not c.im else c) for k, c in out.items()}
    return PForm(dim, out, degree or 0)


def parse_generalized(text: str, dim: int):
    """``X0 + 2 w1 - i X3``: vector part on ``X``, form part on ``w``."""
    from .structures import GeneralizedVector

    vec = [ZERO] * dim
    form = [ZERO] * dim
    for coeff, factors in _parse_linear(text, dim, ("X", "w")):
        if len(factors) != 1:
            raise ParseError("generalized vectors take single symbols", 1, 1)
        sym, k = factors[0]
        target = vec if sym == "X" else form
        target[k] = target[k] + coeff
    return GeneralizedVector(vec, form)


def parse_matrix(text: str):
    """Rows separated by ``;``, entries by commas or spaces."""
    rows = [r for r in text.split(";") if r.strip()]
    out = [[parse_rational(x) for x in re.split(r"[,\s]+", r.strip()) if x] for r in rows]
    if not out or any(len(r) != len(out) for r in out):
        raise ValueError("matrix must be square")
    return out
