"""Dense univariate polynomials with exact rational coefficients."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

__all__ = [
    "NEG_INF",
    "Polynomial",
    "Scalar",
    "to_rational",
    "parse_rational",
    "format_rational",
    "parse_poly",
    "add",
    "mul",
    "evaluate",
]

NEG_INF = float("-inf")

Scalar = Union[int, Fraction]


def to_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {value!r} as an exact rational")


_RATIONAL_RE = re.compile(r"^\s*([+-]?)(\d+(?:\.\d+)?)(?:\s*/\s*(\d+(?:\.\d+)?))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse "p", "p/q" or a terminating decimal such as "112.5" exactly."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    sign, num, den = m.groups()
    value = Fraction(num)
    if den is not None:
        d = Fraction(den)
        if d == 0:
            raise ValueError(f"zero denominator in {text!r}")
        value /= d
    return -value if sign == "-" else value


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Polynomial:
    """Immutable polynomial; ``coeffs[i]`` multiplies ``x**i``.

    Trailing zeros are stripped on construction, so ``==`` is
    mathematical equality.  The zero polynomial has no coefficients and
    degree ``NEG_INF``.
    """

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)
        self._hash = None

    @classmethod
    def monomial(cls, n: int, coeff: Scalar = 1) -> "Polynomial":
        if n < 0:
            raise ValueError("monomial degree must be non-negative")
        return cls([0] * n + [coeff])

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        return cls([c])

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> Union[int, float]:
        return len(self._coeffs) - 1 if self._coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self._coeffs

    def __getitem__(self, i: int) -> Fraction:
        if i < 0:
            raise IndexError("negative coefficient index")
        return self._coeffs[i] if i < len(self._coeffs) else Fraction(0)

    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == Polynomial([other])._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._coeffs)
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial([other])

    def __add__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self._coeffs)

    def __sub__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            try:
                s = to_rational(other)
            except TypeError:
                return NotImplemented
            return Polynomial(c * s for c in self._coeffs)
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return Polynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return Polynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Polynomial":
        s = to_rational(other)
        return Polynomial(c / s for c in self._coeffs)

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x0) -> Fraction:
        x0 = to_rational(x0)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x0 + c
        return acc

    def to_text(self) -> str:
        """Render in descending degree, e.g. ``x^3 - 4*x^2 + 3*x``."""
        parts = []
        for deg in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[deg]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if deg == 0:
                body = format_rational(mag)
            else:
                power = "x" if deg == 1 else f"x^{deg}"
                body = power if mag == 1 else f"{format_rational(mag)}*{power}"
            if not parts:
                parts.append(f"-{body}" if sign == "-" else body)
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts) if parts else "0"

    def to_triples(self) -> list[list[int]]:
        """``[degree, numerator, denominator]`` for every nonzero coefficient, descending."""
        return [
            [deg, c.numerator, c.denominator]
            for deg, c in reversed(list(enumerate(self._coeffs)))
            if c != 0
        ]

    @classmethod
    def from_triples(cls, triples: Sequence[Sequence[int]]) -> "Polynomial":
        size = max((t[0] for t in triples), default=-1) + 1
        cs = [Fraction(0)] * size
        for deg, num, den in triples:
            cs[deg] += Fraction(num, den)
        return cls(cs)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r})"


_TERM_RE = re.compile(
    r"""\s*([+-])?\s*
        (\d+(?:\.\d+)?(?:\s*/\s*\d+(?:\.\d+)?)?)?   # coefficient
        \s*\*?\s*
        (x(?:\s*\^\s*(\d+))?)?                      # power of x
    """,
    re.VERBOSE,
)


def parse_poly(text: str) -> Polynomial:
    """Parse a polynomial written like ``x^5-20x^4+112.5x^3`` or ``x^2 + x + 1/2``."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    pos = 0
    coeffs: dict[int, Fraction] = {}
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        sign, coeff, xpart, exp = m.groups() if m else (None, None, None, None)
        if not m or (coeff is None and xpart is None) or (sign is None and not first):
            raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
        c = parse_rational(coeff) if coeff is not None else Fraction(1)
        if sign == "-":
            c = -c
        deg = 0 if xpart is None else (int(exp) if exp is not None else 1)
        coeffs[deg] = coeffs.get(deg, Fraction(0)) + c
        pos = m.end()
        first = False
    size = max(coeffs) + 1
    return Polynomial([coeffs.get(i, 0) for i in range(size)])


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def evaluate(p: Polynomial, x0) -> Fraction:
    """Horner evaluation at an exact rational point."""
    return p(x0)
