"""Shift-invariant operators as truncated formal series in the F-derivative.

An :class:`OperatorSeries` of order ``N`` stores plain coefficients
``c_0 .. c_N`` and stands for ``sum_k c_k dF**k``.  Acting on a polynomial
of degree ``d <= N`` is exact because ``dF**k`` kills it for ``k > d``.
The same coefficient list doubles as the operator's indicator series in
``z``, which is what composition and reversion work on.  The divided view
``a_k = c_k * F_k!`` is available as :attr:`OperatorSeries.divided`.

Orders never auto-promote: combining series of different orders raises
:class:`OrderMismatchError`, and applying a series to a polynomial of
higher degree raises :class:`TruncationError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import Polynomial, Scalar, format_rational, to_rational
from .sequences import FIBONACCI, SequenceSpec, f_factorial, f_falling, term

__all__ = [
    "OperatorError",
    "OrderMismatchError",
    "TruncationError",
    "NotInvertibleError",
    "NotDeltaError",
    "OperatorSeries",
    "DeltaOperator",
    "identity",
    "zero",
    "f_derivative",
    "translation",
    "f_shift_value",
    "apply",
    "multiply",
    "invert",
    "power",
    "pincherle",
    "xhat_apply",
    "xhat_inverse_apply",
    "is_delta",
    "as_delta",
    "divide_by_derivative",
    "forward_difference",
    "backward_difference",
    "abel",
    "laguerre_op",
    "compose",
    "compositional_inverse",
    "exp_f",
]


class OperatorError(ValueError):
    pass


class OrderMismatchError(OperatorError):
    pass


class TruncationError(OperatorError):
    pass


class NotInvertibleError(OperatorError, ZeroDivisionError):
    pass


class NotDeltaError(OperatorError):
    pass


@dataclass(frozen=True, eq=False)
class OperatorSeries:
    coeffs: tuple[Fraction, ...]
    spec: SequenceSpec = FIBONACCI

    def __post_init__(self) -> None:
        cs = tuple(to_rational(c) for c in self.coeffs)
        if not cs:
            raise ValueError("an operator series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, spec: SequenceSpec = FIBONACCI) -> "OperatorSeries":
        return cls(tuple(coeffs), spec)

    @classmethod
    def from_divided(cls, divided: Iterable, spec: SequenceSpec = FIBONACCI) -> "OperatorSeries":
        """Build from ``a_k`` with the operator equal to ``sum a_k dF**k / F_k!``."""
        return cls(
            tuple(to_rational(a) / f_factorial(spec, k) for k, a in enumerate(divided)),
            spec,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, OperatorSeries):
            return NotImplemented
        return self.coeffs == other.coeffs and self.spec == other.spec

    def __hash__(self) -> int:
        return hash((self.coeffs, self.spec))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def divided(self) -> tuple[Fraction, ...]:
        return tuple(c * f_factorial(self.spec, k) for k, c in enumerate(self.coeffs))

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def truncate(self, order: int) -> "OperatorSeries":
        if order > self.order:
            raise TruncationError(f"cannot extend a series of order {self.order} to {order}")
        return OperatorSeries(self.coeffs[: order + 1], self.spec)

    def plain(self) -> "OperatorSeries":
        """Drop any subclass (e.g. the delta-operator marker)."""
        return OperatorSeries(self.coeffs, self.spec)

    def _check_compatible(self, other: "OperatorSeries") -> None:
        if self.spec != other.spec:
            raise OrderMismatchError("operators are built over different sequences")
        if self.order != other.order:
            raise OrderMismatchError(f"operator orders differ: {self.order} vs {other.order}")

    def __add__(self, other: "OperatorSeries") -> "OperatorSeries":
        if not isinstance(other, OperatorSeries):
            return NotImplemented
        self._check_compatible(other)
        return OperatorSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.spec)

    def __neg__(self) -> "OperatorSeries":
        return OperatorSeries(tuple(-c for c in self.coeffs), self.spec)

    def __sub__(self, other: "OperatorSeries") -> "OperatorSeries":
        if not isinstance(other, OperatorSeries):
            return NotImplemented
        return self + (-other)

    def scale(self, s: Scalar) -> "OperatorSeries":
        s = to_rational(s)
        return OperatorSeries(tuple(c * s for c in self.coeffs), self.spec)

    def __mul__(self, other):
        if isinstance(other, OperatorSeries):
            return multiply(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, k: int) -> "OperatorSeries":
        return power(self, k)

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply(self, p)

    def render(self) -> str:
        c = ", ".join(format_rational(v) for v in self.coeffs)
        a = ", ".join(format_rational(v) for v in self.divided)
        return f"c: [{c}]\na: [{a}]"

    def __repr__(self) -> str:
        c = ", ".join(format_rational(v) for v in self.coeffs)
        return f"{type(self).__name__}([{c}])"


class DeltaOperator(OperatorSeries):
    """A series with zero constant term and nonzero linear term."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.order < 1 or self.coeffs[0] != 0 or self.coeffs[1] == 0:
            raise NotDeltaError(f"not a delta operator: {self!r}")


def _zeros(n: int) -> list[Fraction]:
    return [Fraction(0)] * n


def zero(spec: SequenceSpec = FIBONACCI, order: int = 8) -> OperatorSeries:
    return OperatorSeries(tuple(_zeros(order + 1)), spec)


def identity(spec: SequenceSpec = FIBONACCI, order: int = 8) -> OperatorSeries:
    cs = _zeros(order + 1)
    cs[0] = Fraction(1)
    return OperatorSeries(tuple(cs), spec)


def f_derivative(spec: SequenceSpec = FIBONACCI, order: int = 8) -> DeltaOperator:
    if order < 1:
        raise ValueError("the F-derivative needs order >= 1")
    cs = _zeros(order + 1)
    cs[1] = Fraction(1)
    return DeltaOperator(tuple(cs), spec)


def exp_f(spec: SequenceSpec, order: int, y: Scalar = 1) -> list[Fraction]:
    """Coefficients y**k / F_k! of the F-exponential, k = 0..order."""
    y = to_rational(y)
    return [y**k / f_factorial(spec, k) for k in range(order + 1)]


def translation(spec: SequenceSpec = FIBONACCI, y: Scalar = 1, order: int = 8) -> OperatorSeries:
    """The F-translation ``E^y = exp_F{y dF}``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    return OperatorSeries(tuple(exp_f(spec, order, y)), spec)


def apply(T: OperatorSeries, p: Polynomial) -> Polynomial:
    """Exact action ``sum_k c_k dF**k p``; refuses degrees above the order."""
    d = p.degree
    if d > T.order:
        raise TruncationError(
            f"polynomial of degree {d} exceeds operator order {T.order}"
        )
    if p.is_zero():
        return p
    spec = T.spec
    out = _zeros(len(p.coeffs))
    for n, pn in enumerate(p.coeffs):
        if pn == 0:
            continue
        for k in range(n + 1):
            ck = T.coeffs[k]
            if ck:
                out[n - k] += ck * pn * f_falling(spec, n, k)
    return Polynomial(out)


def f_shift_value(p: Polynomial, y: Scalar, spec: SequenceSpec = FIBONACCI) -> Polynomial:
    """``p(x +_F y)``, i.e. ``E^y`` applied to ``p``."""
    order = max(int(p.degree), 0) if not p.is_zero() else 0
    return apply(translation(spec, y, order), p)


def multiply(T: OperatorSeries, S: OperatorSeries) -> OperatorSeries:
    """Operator product; a Cauchy product of the plain coefficients."""
    T._check_compatible(S)
    n = T.order + 1
    a, b = T.coeffs, S.coeffs
    out = _zeros(n)
    for i in range(n):
        if a[i] == 0:
            continue
        for j in range(n - i):
            out[i + j] += a[i] * b[j]
    return OperatorSeries(tuple(out), T.spec)


def invert(T: OperatorSeries) -> OperatorSeries:
    """Multiplicative inverse; exists iff the constant term (``T 1``) is nonzero."""
    c = T.coeffs
    if c[0] == 0:
        raise NotInvertibleError(f"operator annihilates constants and has no inverse: {T!r}")
    inv0 = 1 / c[0]
    u = [inv0]
    for k in range(1, T.order + 1):
        acc = sum((c[j] * u[k - j] for j in range(1, k + 1)), Fraction(0))
        u.append(-acc * inv0)
    return OperatorSeries(tuple(u), T.spec)


def power(T: OperatorSeries, k: int) -> OperatorSeries:
    if k < 0:
        return power(invert(T), -k)
    result = identity(T.spec, T.order)
    base = T.plain()
    while k:
        if k & 1:
            result = multiply(result, base)
        k >>= 1
        if k:
            base = multiply(base, base)
    return result


def pincherle(T: OperatorSeries) -> OperatorSeries:
    """Graves-Pincherle derivative ``T x^ - x^ T``: formal d/d(dF) of the series.

    The result has order one less than ``T``.
    """
    if T.order < 1:
        raise TruncationError("the Pincherle derivative of an order-0 series is undetermined")
    return OperatorSeries(
        tuple(k * T.coeffs[k] for k in range(1, T.order + 1)), T.spec
    )


def xhat_apply(spec: SequenceSpec, p: Polynomial) -> Polynomial:
    """``x^_F x**n = (n+1)/F_{n+1} x**(n+1)``; lies outside the shift-invariant algebra."""
    out = _zeros(len(p.coeffs) + 1)
    for n, c in enumerate(p.coeffs):
        if c:
            out[n + 1] = c * Fraction(n + 1, term(spec, n + 1))
    return Polynomial(out)


def xhat_inverse_apply(spec: SequenceSpec, p: Polynomial) -> Polynomial:
    """Left inverse of :func:`xhat_apply`: ``x**(n+1) -> F_{n+1}/(n+1) x**n``, constants to 0."""
    cs = p.coeffs
    return Polynomial(cs[n + 1] * Fraction(term(spec, n + 1), n + 1) for n in range(len(cs) - 1))


def is_delta(T: OperatorSeries) -> bool:
    return T.order >= 1 and T.coeffs[0] == 0 and T.coeffs[1] != 0


def as_delta(T: OperatorSeries) -> DeltaOperator:
    if isinstance(T, DeltaOperator):
        return T
    if not is_delta(T):
        raise NotDeltaError(f"not a delta operator: {T!r}")
    return DeltaOperator(T.coeffs, T.spec)


def divide_by_derivative(Q: OperatorSeries) -> OperatorSeries:
    """Factor ``Q = dF * P`` and return ``P`` (order drops by one).

    ``P`` is invertible exactly when ``Q`` is a delta operator.
    """
    if Q.order < 1 or Q.coeffs[0] != 0:
        raise NotDeltaError("only a series without constant term is divisible by dF")
    return OperatorSeries(Q.coeffs[1:], Q.spec)


def forward_difference(spec: SequenceSpec = FIBONACCI, order: int = 8) -> DeltaOperator:
    """``Delta_F = E^1 - I``."""
    T = translation(spec, 1, order) - identity(spec, order)
    return DeltaOperator(T.coeffs, spec)


def backward_difference(spec: SequenceSpec = FIBONACCI, order: int = 8) -> DeltaOperator:
    """``nabla_F = I - E^{-1}``."""
    T = identity(spec, order) - translation(spec, -1, order)
    return DeltaOperator(T.coeffs, spec)


def abel(spec: SequenceSpec = FIBONACCI, a: Scalar = 1, order: int = 8) -> DeltaOperator:
    """F-Abel operator ``dF E^a = sum_k a**k/F_k! dF**(k+1)``."""
    if order < 1:
        raise ValueError("order must be >= 1")
    return DeltaOperator(tuple([Fraction(0)] + exp_f(spec, order - 1, a)), spec)


def laguerre_op(spec: SequenceSpec = FIBONACCI, order: int = 8) -> DeltaOperator:
    """F-Laguerre operator ``dF/(dF - I) = -(dF + dF**2 + dF**3 + ...)``."""
    if order < 1:
        raise ValueError("order must be >= 1")
    return DeltaOperator(tuple([Fraction(0)] + [Fraction(-1)] * order), spec)


def _compose_coeffs(outer: Sequence[Fraction], inner: Sequence[Fraction], order: int) -> list[Fraction]:
    """Coefficients of ``outer(inner(z))`` through ``z**order``."""
    if inner[0] != 0:
        raise OperatorError("inner series of a composition must have zero constant term")
    n = order + 1
    result = _zeros(n)
    pw = _zeros(n)
    pw[0] = Fraction(1)
    for k in range(n):
        ck = outer[k] if k < len(outer) else 0
        if ck:
            for i in range(n):
                result[i] += ck * pw[i]
        nxt = _zeros(n)
        for i in range(n):
            if pw[i] == 0:
                continue
            for j in range(1, n - i):
                nxt[i + j] += pw[i] * inner[j]
        pw = nxt
    return result


def compose(outer: OperatorSeries, inner: OperatorSeries) -> OperatorSeries:
    """Indicator composition ``outer(inner(z))``, truncated at the common order."""
    outer._check_compatible(inner)
    return OperatorSeries(tuple(_compose_coeffs(outer.coeffs, inner.coeffs, outer.order)), outer.spec)


def compositional_inverse(q: OperatorSeries) -> OperatorSeries:
    """The series ``r`` with ``q(r(z)) = z`` through the order of ``q``.

    Solved coefficient by coefficient: the ``z**n`` coefficient of
    ``q(r(z))`` equals ``q_1 r_n`` plus terms in ``r_1 .. r_{n-1}``.
    """
    if not is_delta(q):
        raise NotDeltaError("reversion needs zero constant term and nonzero linear term")
    N = q.order
    q1 = q.coeffs[1]
    r = _zeros(N + 1)
    r[1] = 1 / q1
    for n in range(2, N + 1):
        partial = _compose_coeffs(q.coeffs, r, n)
        r[n] = -partial[n] / q1
    return OperatorSeries(tuple(r), q.spec)
