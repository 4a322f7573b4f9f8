"""Exact coefficient arithmetic.

Three number types live here:

* :class:`Scalar`, a Gaussian rational ``re + im*i`` (the default coefficient field),
* :class:`QuadRational`, an element ``a + b*sqrt2`` of Q(sqrt2), used as the
  coefficient field of the higher rank Virasoro algebra over Z + Z*sqrt2,
* :class:`QuadInt`, an element ``a + b*sqrt2`` of Z + Z*sqrt2 with its exact order.

Rationals are :class:`fractions.Fraction`.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from typing import Union

__all__ = [
    "Fraction",
    "Scalar",
    "QuadRational",
    "QuadInt",
    "quad_sign",
    "scalar_arith",
    "parse_rational",
    "format_rational",
    "parse_scalar",
    "parse_quad_rational",
    "parse_quad_int",
    "ZERO",
    "ONE",
    "I",
]

Rationalish = Union[int, Fraction]


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


_RAT = r"[+-]?\d+(?:/\d+)?"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not re.fullmatch(_RAT, text):
        raise ValueError(f"not a rational: {text!r}")
    return Fraction(text)


def _as_fraction(x) -> Fraction | None:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return None


def _join_parts(first: str, second: str, suffix: str) -> str:
    """Render ``first + second*suffix`` omitting zero parts."""
    if first == "0" and second == "0":
        return "0"
    if second == "0":
        return first
    tail = f"{second}*{suffix}"
    if first == "0":
        return tail
    if tail.startswith("-"):
        return f"{first}{tail}"
    return f"{first}+{tail}"


class Scalar:
    """Gaussian rational ``re + im*i``. Immutable."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re: Rationalish = 0, im: Rationalish = 0):
        object.__setattr__(self, "re", re if type(re) is Fraction else Fraction(re))
        object.__setattr__(self, "im", im if type(im) is Fraction else Fraction(im))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        q = _as_fraction(x)
        if q is None:
            raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")
        return cls(q)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Scalar):
            return Scalar(self.re + other.re, self.im + other.im)
        q = _as_fraction(other)
        if q is None:
            return NotImplemented
        return Scalar(self.re + q, self.im)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, Scalar):
            return Scalar(self.re - other.re, self.im - other.im)
        q = _as_fraction(other)
        if q is None:
            return NotImplemented
        return Scalar(self.re - q, self.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Scalar):
            if not other.im and not self.im:
                return Scalar(self.re * other.re)
            return Scalar(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        q = _as_fraction(other)
        if q is None:
            return NotImplemented
        return Scalar(self.re * q, self.im * q)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError("Scalar division by zero")
        if not self.im:
            return Scalar(1 / self.re)
        n = self.re * self.re + self.im * self.im
        return Scalar(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            q = _as_fraction(other)
            if q is None:
                return NotImplemented
            if q == 0:
                raise ZeroDivisionError("Scalar division by zero")
            return Scalar(self.re / q, self.im / q)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    # comparison -----------------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        q = _as_fraction(other)
        if q is None:
            return NotImplemented
        return self.im == 0 and self.re == q

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(self.re) if not self.im else hash((self.re, self.im))
            object.__setattr__(self, "_hash", h)
        return h

    def is_real(self) -> bool:
        return self.im == 0

    # text -----------------------------------------------------------------
    def __str__(self):
        return _join_parts(format_rational(self.re), format_rational(self.im), "i")

    def __repr__(self):
        return f"Scalar({self})"


def _split_two_part(text: str, suffix: str) -> tuple[Fraction, Fraction]:
    """Split ``a/b+c/d*<suffix>`` (zero parts optional) into its two rationals."""
    s = text.strip().replace(" ", "")
    if s.startswith("(") and s.endswith(")") and "," not in s:
        s = s[1:-1]
    if not s:
        raise ValueError("empty number")
    if not s.endswith(suffix):
        return parse_rational(s), Fraction(0)
    body = s[: -len(suffix)]
    cut = max(body.rfind("+"), body.rfind("-"))
    if cut > 0:
        first, second = body[:cut], body[cut:]
    else:
        first, second = "", body
    if second.endswith("*"):
        second = second[:-1]
        if second in ("", "+", "-"):
            raise ValueError(f"malformed number: {text!r}")
    if second in ("", "+"):
        coef = Fraction(1)
    elif second == "-":
        coef = Fraction(-1)
    else:
        coef = parse_rational(second)
    return (parse_rational(first) if first else Fraction(0)), coef


def parse_scalar(text: str) -> Scalar:
    """Parse ``a/b``, ``a/b+c/d*i`` or ``c/d*i`` (bare ``i`` allowed), optionally in parens."""
    return Scalar(*_split_two_part(text, "i"))


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def scalar_arith(x: Scalar, y: Scalar, op: str) -> Scalar:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


# --------------------------------------------------------------------------
# Z + Z*sqrt2 and Q(sqrt2)


def quad_sign(v: "QuadInt | tuple[int, int]") -> int:
    """Sign of ``a + b*sqrt2`` computed with integers only."""
    a, b = (v.a, v.b) if isinstance(v, (QuadInt, QuadRational)) else v
    if a >= 0 and b >= 0:
        return 1 if (a or b) else 0
    if a <= 0 and b <= 0:
        return -1
    # opposite signs: compare a^2 with 2 b^2
    lhs, rhs = a * a, 2 * b * b
    if a > 0:
        return 1 if lhs > rhs else -1
    return 1 if rhs > lhs else -1


@total_ordering
class QuadInt:
    """Element ``a + b*sqrt2`` of the ordered group Z + Z*sqrt2."""

    __slots__ = ("a", "b")

    def __init__(self, a: int = 0, b: int = 0):
        if not isinstance(a, int) or not isinstance(b, int):
            raise TypeError("QuadInt components must be integers")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("QuadInt is immutable")

    def __add__(self, other):
        if isinstance(other, int):
            return QuadInt(self.a + other, self.b)
        if not isinstance(other, QuadInt):
            return NotImplemented
        return QuadInt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(-self.a, -self.b)

    def __sub__(self, other):
        if isinstance(other, int):
            return QuadInt(self.a - other, self.b)
        if not isinstance(other, QuadInt):
            return NotImplemented
        return QuadInt(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return QuadInt(self.a * k, self.b * k)

    __rmul__ = __mul__

    def sign(self) -> int:
        return quad_sign((self.a, self.b))

    def __bool__(self):
        return bool(self.a or self.b)

    def __eq__(self, other):
        if isinstance(other, QuadInt):
            return self.a == other.a and self.b == other.b
        if isinstance(other, int):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, int):
            other = QuadInt(other)
        if not isinstance(other, QuadInt):
            return NotImplemented
        return quad_sign((self.a - other.a, self.b - other.b)) < 0

    def __hash__(self):
        return hash(self.a) if not self.b else hash((self.a, self.b))

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def to_field(self) -> "QuadRational":
        return QuadRational(self.a, self.b)

    def approx(self) -> float:
        """Floating point value, for display only."""
        return self.a + self.b * 2 ** 0.5

    def __str__(self):
        return _join_parts(str(self.a), str(self.b), "sqrt2")

    def __repr__(self):
        return f"QuadInt({self.a}, {self.b})"


def parse_quad_int(text: str) -> QuadInt:
    """Parse ``(a,b)`` or ``a+b*sqrt2``."""
    s = text.strip().replace(" ", "")
    m = re.fullmatch(r"\(([+-]?\d+),([+-]?\d+)\)", s)
    if m:
        return QuadInt(int(m.group(1)), int(m.group(2)))
    q = parse_quad_rational(s)
    if q.a.denominator != 1 or q.b.denominator != 1:
        raise ValueError(f"not an element of Z+Z*sqrt2: {text!r}")
    return QuadInt(q.a.numerator, q.b.numerator)


class QuadRational:
    """Element ``a + b*sqrt2`` of the field Q(sqrt2). Immutable."""

    __slots__ = ("a", "b")

    def __init__(self, a: Rationalish = 0, b: Rationalish = 0):
        object.__setattr__(self, "a", a if type(a) is Fraction else Fraction(a))
        object.__setattr__(self, "b", b if type(b) is Fraction else Fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("QuadRational is immutable")

    @classmethod
    def coerce(cls, x) -> "QuadRational":
        if isinstance(x, QuadRational):
            return x
        if isinstance(x, QuadInt):
            return cls(x.a, x.b)
        q = _as_fraction(x)
        if q is None:
            raise TypeError(f"cannot coerce {type(x).__name__} to QuadRational")
        return cls(q)

    def _other(self, other):
        if isinstance(other, QuadRational):
            return other
        if isinstance(other, QuadInt):
            return QuadRational(other.a, other.b)
        q = _as_fraction(other)
        return None if q is None else QuadRational(q)

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return QuadRational(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadRational(-self.a, -self.b)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return QuadRational(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return QuadRational(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inverse(self) -> "QuadRational":
        n = self.a * self.a - 2 * self.b * self.b
        if n == 0:
            raise ZeroDivisionError("QuadRational division by zero")
        return QuadRational(self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return QuadRational.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = QuadRational(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def sign(self) -> int:
        d = self.a.denominator * self.b.denominator
        return quad_sign(((self.a * d).numerator, (self.b * d).numerator))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash(self.a) if not self.b else hash((self.a, self.b))

    def __str__(self):
        return _join_parts(format_rational(self.a), format_rational(self.b), "sqrt2")

    def __repr__(self):
        return f"QuadRational({self})"


def parse_quad_rational(text: str) -> QuadRational:
    return QuadRational(*_split_two_part(text, "sqrt2"))


# --------------------------------------------------------------------------
# linear combinations as text


def _signed_parts(coef) -> tuple[int, str]:
    """Return ``(sign, text of |coef|)``; mixed two-part coefficients get parens."""
    first, second = (coef.re, coef.im) if isinstance(coef, Scalar) else (coef.a, coef.b)
    if isinstance(coef, (Scalar, QuadRational)):
        if first and second:
            return 1, f"({coef})"
        lead = first or second
        return (1 if lead > 0 else -1), str(-coef if lead < 0 else coef)
    q = Fraction(coef)
    return (1 if q >= 0 else -1), format_rational(abs(q))


def format_combination(items) -> str:
    """Render ``[(coef, label), ...]`` as ``c1*l1 + c2*l2 - ...``; empty gives ``0``."""
    out = []
    for coef, label in items:
        sign, mag = _signed_parts(coef)
        term = f"{mag}*{label}"
        if not out:
            out.append(term if sign > 0 else f"-{term}")
        else:
            out.append(f"{'+' if sign > 0 else '-'} {term}")
    return " ".join(out) if out else "0"


def parse_combination(text: str, parse_label, parse_coef=parse_scalar):
    """Inverse of :func:`format_combination`.

    Terms are separated by `` + `` or `` - `` with surrounding whitespace, so
    that signs inside labels such as ``e-2`` stay attached.  A bare label has
    coefficient one.
    """
    s = text.strip()
    if s == "0":
        return []
    pieces = re.split(r"\s+([+-])\s+", s)
    terms = [(1, pieces[0])]
    for k in range(1, len(pieces), 2):
        terms.append((1 if pieces[k] == "+" else -1, pieces[k + 1]))
    out = []
    for sign, term in terms:
        term = term.strip()
        if not term:
            raise ValueError(f"empty term in {text!r}")
        coef, label = _split_term(term, parse_label, parse_coef)
        out.append((coef * sign, label))
    return out


def _split_term(term: str, parse_label, parse_coef):
    # longest coefficient first, so "1*i*c" reads as (1*i)*c
    for pos in range(len(term) - 1, -1, -1):
        if term[pos] != "*":
            continue
        try:
            coef = parse_coef(term[:pos])
            label = parse_label(term[pos + 1:])
        except ValueError:
            continue
        return coef, label
    one = parse_coef("1")
    if term.startswith("-"):
        try:
            return -one, parse_label(term[1:])
        except ValueError:
            pass
    return one, parse_label(term)
