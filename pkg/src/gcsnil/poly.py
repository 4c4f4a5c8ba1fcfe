"""Polynomials with exact coefficients.

``UnivariatePoly`` lives over Q and carries the Sturm machinery used to
certify that a relation in ``t`` has only real roots.  ``RationalFunction``
is its fraction field, used for linear algebra with a symbolic parameter.
``MPoly`` is a sparse multivariate polynomial over Q(i) used to write
constraint systems in named unknowns.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .exact import GaussianRational, format_complex, format_rational


class UnivariatePoly:
    """Polynomial over Q, coefficients stored lowest degree first."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "t"):
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def from_roots(cls, roots, var="t"):
        p = cls([1], var)
        for r in roots:
            p = p * cls([-Fraction(r), 1], var)
        return p

    @classmethod
    def x(cls, var="t"):
        return cls([0, 1], var)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UnivariatePoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UnivariatePoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def _wrap(self, other):
        if isinstance(other, UnivariatePoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UnivariatePoly([other], self.var)
        return None

    def __add__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = o.coeffs + (Fraction(0),) * (n - len(o.coeffs))
        return UnivariatePoly([x + y for x, y in zip(a, b)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UnivariatePoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return UnivariatePoly([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return UnivariatePoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = UnivariatePoly([1], self.var)
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other):
        o = self._wrap(other)
        if o is None or o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(len(rem) - len(o.coeffs) + 1, 0)
        lc = o.lc
        while len(rem) >= len(o.coeffs) and rem:
            shift = len(rem) - len(o.coeffs)
            f = rem[-1] / lc
            quot[shift] = f
            for i, c in enumerate(o.coeffs):
                rem[shift + i] -= f * c
            rem.pop()
            while rem and not rem[-1]:
                rem.pop()
        return UnivariatePoly(quot, self.var), UnivariatePoly(rem, self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> UnivariatePoly:
        if not self.coeffs:
            return self
        return UnivariatePoly([c / self.lc for c in self.coeffs], self.var)

    def derivative(self) -> UnivariatePoly:
        return UnivariatePoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def squarefree_part(self) -> UnivariatePoly:
        if self.degree <= 0:
            return self
        return (self // gcd(self, self.derivative())).monic()

    def content_normalized(self) -> UnivariatePoly:
        """Scale to integer coefficients with positive leading coefficient and gcd 1."""
        from math import gcd as igcd, lcm

        if not self.coeffs:
            return self
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = igcd(g, v)
        sign = 1 if ints[-1] > 0 else -1
        return UnivariatePoly([Fraction(sign * v, g) for v in ints], self.var)

    def __repr__(self):
        return f"UnivariatePoly({str(self)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{format_rational(mag)}*{mono}"
            else:
                body = format_rational(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def gcd(a: UnivariatePoly, b: UnivariatePoly) -> UnivariatePoly:
    """Monic gcd (zero if both are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def sturm_sequence(p: UnivariatePoly) -> list[UnivariatePoly]:
    seq = [p, p.derivative()]
    while seq[-1]:
        r = seq[-2] % seq[-1]
        if not r:
            break
        seq.append(-r)
    return seq


def _sign_changes(signs: Iterable[int]) -> int:
    vals = [s for s in signs if s]
    return sum(1 for a, b in zip(vals, vals[1:]) if a != b)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def real_root_count(p: UnivariatePoly) -> int:
    """Number of distinct real roots, via the Sturm sequence of the square-free part."""
    if p.is_zero():
        raise ValueError("indeterminate root count")
    q = p.squarefree_part()
    if q.degree <= 0:
        return 0
    seq = sturm_sequence(q)
    at_pos_inf = [_sign(s.lc) for s in seq]
    at_neg_inf = [_sign(s.lc) * (-1 if s.degree % 2 else 1) for s in seq]
    return _sign_changes(at_neg_inf) - _sign_changes(at_pos_inf)


def has_nonreal_root(p: UnivariatePoly) -> bool:
    if p.degree < 1:
        raise ValueError("no roots")
    return p.squarefree_part().degree > real_root_count(p)


class RationalFunction:
    """Element of Q(t) kept as num/den with monic, coprime denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, UnivariatePoly) else UnivariatePoly([num])
        den = UnivariatePoly([1]) if den is None else (
            den if isinstance(den, UnivariatePoly) else UnivariatePoly([den]))
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = num, UnivariatePoly([1], num.var)
            return
        g = gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        lc = den.lc
        self.num = UnivariatePoly([c / lc for c in num.coeffs], num.var)
        self.den = UnivariatePoly([c / lc for c in den.coeffs], num.var)

    @staticmethod
    def _coerce(x):
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, (int, Fraction, UnivariatePoly)):
            return RationalFunction(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("rational function division by zero")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __str__(self):
        if self.is_polynomial:
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


# --------------------------------------------------------------------------
# multivariate

Monomial = tuple  # sorted tuple of (name, exponent)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _scalar_str(c) -> str:
    return format_complex(c)


class MPoly:
    """Sparse polynomial in named variables with Q(i) (or Q) coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def var(cls, name: str) -> MPoly:
        return cls({((name, 1),): Fraction(1)})

    @classmethod
    def const(cls, c) -> MPoly:
        return cls({(): c})

    def variables(self) -> set[str]:
        return {v for m in self.terms for v, _ in m}

    def __bool__(self):
        return bool(self.terms)

    @staticmethod
    def _coerce(x):
        if isinstance(x, MPoly):
            return x
        if isinstance(x, (int, Fraction, GaussianRational)):
            return MPoly({(): x})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out.get(m, 0) + c
        return MPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            if not other:
                return MPoly()
            return MPoly({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return MPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).terms == {}

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def substitute(self, values: Mapping[str, object]) -> MPoly:
        """Replace variables by scalars or MPolys."""
        out = MPoly()
        for m, c in self.terms.items():
            term = MPoly({(): c})
            rest = []
            for v, e in m:
                if v in values:
                    val = values[v]
                    for _ in range(e):
                        term = term * val
                else:
                    rest.append((v, e))
            if rest:
                term = term * MPoly({tuple(rest): Fraction(1)})
            out = out + term
        return out

    def degree_in(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self.terms), default=-1)

    def coefficient_of(self, name: str) -> MPoly:
        """Coefficient of the degree-1 part in ``name`` (requires degree <= 1)."""
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            if d.get(name, 0) == 1:
                del d[name]
                out[tuple(sorted(d.items()))] = c
            elif d.get(name, 0) > 1:
                raise ValueError(f"{name} appears non-linearly")
        return MPoly(out)

    def to_univariate(self, name: str = "t") -> UnivariatePoly:
        coeffs: dict[int, Fraction] = {}
        for m, c in self.terms.items():
            d = dict(m)
            if set(d) - {name}:
                raise ValueError("not univariate")
            if isinstance(c, GaussianRational):
                if c.im:
                    raise ValueError("non-rational coefficient")
                c = c.re
            e = d.get(name, 0)
            coeffs[e] = coeffs.get(e, Fraction(0)) + Fraction(c)
        top = max(coeffs, default=-1)
        return UnivariatePoly([coeffs.get(k, 0) for k in range(top + 1)], name)

    @classmethod
    def from_univariate(cls, p, name: str = "t") -> MPoly:
        if isinstance(p, RationalFunction):
            if not p.is_polynomial:
                raise ValueError("rational function with a denominator")
            p = p.num * (1 / p.den.lc)
        return cls({((((name, k),) if k else ())): c for k, c in enumerate(p.coeffs)})

    def leading_coefficient(self):
        """Coefficient of the largest monomial in a fixed (sorted) order."""
        if not self.terms:
            return Fraction(0)
        return self.terms[max(self.terms, key=_mono_key)]

    def normalized(self) -> MPoly:
        """Scalar multiple with leading coefficient 1 (canonical up to scaling)."""
        lc = self.leading_coefficient()
        if not lc:
            return self
        inv = 1 / lc if not isinstance(lc, GaussianRational) else lc.inverse()
        return self * inv

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for m in sorted(self.terms, key=_mono_key, reverse=True):
            c = self.terms[m]
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            cs = _scalar_str(c)
            if mono:
                if cs == "1":
                    body = mono
                elif cs == "-1":
                    body = "-" + mono
                elif "+" in cs[1:] or "-" in cs[1:]:
                    body = f"({cs})*{mono}"
                else:
                    body = f"{cs}*{mono}"
            else:
                body = cs
            pieces.append(body)
        out = pieces[0]
        for p in pieces[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __repr__ = __str__


def _mono_key(m: Monomial):
    return (sum(e for _, e in m), m)
