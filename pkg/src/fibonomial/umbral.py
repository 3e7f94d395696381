"""Basic and Sheffer polynomial sequences of F-delta operators.

Generation goes through the Rodrigues recursion
``q_n = (F_n/n) x^ (Q')^{-1} q_{n-1}``; the other three Lagrange/Rodrigues
forms and the two transfer formulas are kept as independent routes for
cross-checking.  The named Sheffer families (Hermite, Laguerre of order
alpha, Bernoulli) are generated from their closed sums, and their
operator pairs ``(Q, S)`` are exposed so the closed sums can be checked
against ``S^{-1} q_n``.

Each identity has a ``check_*`` function returning the first
:class:`Violation` (or ``None``) and a boolean ``verify_*`` wrapper.

Operator pipelines run at order ``N + 2`` (see :func:`working_order`) so
that the degree-raising ``x^`` steps never hit the truncation limit.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .operators import (
    OperatorSeries,
    apply,
    as_delta,
    compose,
    compositional_inverse,
    divide_by_derivative,
    f_derivative,
    f_shift_value,
    identity,
    invert,
    multiply,
    pincherle,
    power,
    xhat_apply,
    xhat_inverse_apply,
    laguerre_op,
)
from .poly import Polynomial, Scalar, to_rational
from .sequences import FIBONACCI, SequenceSpec, f_factorial, f_falling, fibonomial, term

__all__ = [
    "FamilyKind",
    "PolySequence",
    "Violation",
    "IdentityError",
    "working_order",
    "basic_sequence",
    "rodrigues_variants",
    "check_rodrigues",
    "check_lowering",
    "check_binomial_type",
    "verify_binomial_type",
    "expand_operator",
    "reassemble",
    "check_first_expansion",
    "verify_first_expansion",
    "sheffer_from_S",
    "sheffer_recurrence",
    "hermite",
    "hermite_operators",
    "laguerre_alpha",
    "laguerre_operators",
    "bernoulli",
    "bernoulli_operators",
    "check_sheffer_binomial",
    "verify_sheffer_binomial",
    "check_s_inverse_expansion",
    "verify_s_inverse_expansion",
    "check_second_expansion",
    "verify_second_expansion",
    "umbral_transfer",
    "check_transfer",
    "check_gf",
    "verify_gf",
    "check_sheffer_gf",
    "verify_sheffer_gf",
]


class FamilyKind(enum.Enum):
    BASIC = "basic"
    SHEFFER = "sheffer"


class IdentityError(ArithmeticError):
    """A generated object failed an identity it must satisfy by construction."""


@dataclass(frozen=True)
class Violation:
    identity: str
    index: int
    detail: str = ""

    def __str__(self) -> str:
        msg = f"{self.identity} violated at n={self.index}"
        return f"{msg}: {self.detail}" if self.detail else msg


@dataclass(frozen=True)
class PolySequence:
    polys: tuple[Polynomial, ...]
    label: str = ""
    kind: FamilyKind = FamilyKind.BASIC
    spec: SequenceSpec = FIBONACCI

    def __post_init__(self) -> None:
        polys = tuple(self.polys)
        object.__setattr__(self, "polys", polys)
        if not polys:
            raise ValueError("a polynomial sequence needs at least q_0")
        for n, p in enumerate(polys):
            if p.degree != n:
                raise ValueError(f"{self.label or 'sequence'}: degree of entry {n} is {p.degree}")
        if self.kind is FamilyKind.BASIC:
            if polys[0] != Polynomial([1]):
                raise ValueError("a basic sequence starts with q_0 = 1")
            for n, p in enumerate(polys[1:], 1):
                if p[0] != 0:
                    raise ValueError(f"a basic sequence has q_n(0) = 0; entry {n} does not")

    @property
    def max_index(self) -> int:
        return len(self.polys) - 1

    def __len__(self) -> int:
        return len(self.polys)

    def __getitem__(self, n: int) -> Polynomial:
        return self.polys[n]

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.polys)

    def replace(self, n: int, p: Polynomial) -> "PolySequence":
        polys = list(self.polys)
        polys[n] = p
        return PolySequence(tuple(polys), self.label, self.kind, self.spec)

    def to_text(self) -> str:
        return "\n".join(f"n={n}: {p.to_text()}" for n, p in enumerate(self.polys))

    def to_structured(self) -> list[list[list[int]]]:
        return [p.to_triples() for p in self.polys]


def working_order(n_max: int) -> int:
    return n_max + 2


def _monomial(n: int) -> Polynomial:
    return Polynomial.monomial(n)


def _ratio(spec: SequenceSpec, n: int) -> Fraction:
    return Fraction(term(spec, n), n)


def _require_order(T: OperatorSeries, needed: int, what: str) -> None:
    if T.order < needed:
        raise ValueError(f"{what} has order {T.order}; at least {needed} is needed")


# -- basic sequences ---------------------------------------------------------


def check_lowering(seq: PolySequence, Q: OperatorSeries) -> Optional[Violation]:
    """First ``n`` with ``Q s_n != F_n s_{n-1}``."""
    spec = Q.spec
    if not apply(Q, seq[0]).is_zero():
        return Violation("lowering relation Q s_n = F_n s_(n-1)", 0, "Q s_0 is not zero")
    for n in range(1, len(seq)):
        if apply(Q, seq[n]) != seq[n - 1] * term(spec, n):
            return Violation("lowering relation Q s_n = F_n s_(n-1)", n)
    return None


def basic_sequence(Q: OperatorSeries, n_max: int, label: str = "") -> PolySequence:
    """Basic sequence ``q_0 .. q_N`` of the delta operator ``Q``."""
    Q = as_delta(Q)
    _require_order(Q, n_max + 1, "delta operator")
    spec = Q.spec
    qp = pincherle(Q)
    if qp.coeffs[0] == 0:
        raise IdentityError("Pincherle derivative of a delta operator must be invertible")
    qp_inv = invert(qp)
    polys = [Polynomial([1])]
    for n in range(1, n_max + 1):
        step = xhat_apply(spec, apply(qp_inv, polys[-1]))
        polys.append(step * _ratio(spec, n))
    seq = PolySequence(tuple(polys), label, FamilyKind.BASIC, spec)
    bad = check_lowering(seq, Q)
    if bad is not None:
        raise IdentityError(str(bad))
    return seq


def rodrigues_variants(Q: OperatorSeries, n: int) -> tuple[Polynomial, Polynomial, Polynomial, Polynomial]:
    """``q_n`` from each of the four Lagrange/Rodrigues forms, in order (1)-(4).

    With ``Q = dF P``:

    1. ``Q' P^{-n-1} x^n``
    2. ``P^{-n} x^n - (F_n/n) (P^{-n})' x^{n-1}``
    3. ``(F_n/n) x^ P^{-n} x^{n-1}``
    4. the Rodrigues recursion, as used by :func:`basic_sequence`
    """
    Q = as_delta(Q)
    _require_order(Q, n + 1, "delta operator")
    if n == 0:
        one = Polynomial([1])
        return one, one, one, one
    spec = Q.spec
    P = divide_by_derivative(Q)
    qp = pincherle(Q)
    xn, xn1 = _monomial(n), _monomial(n - 1)
    c = _ratio(spec, n)

    v1 = apply(multiply(qp, power(P, -n - 1)), xn)
    p_neg_n = power(P, -n)
    v2 = apply(p_neg_n, xn) - apply(pincherle(p_neg_n), xn1) * c
    v3 = xhat_apply(spec, apply(p_neg_n, xn1)) * c
    v4 = basic_sequence(Q, n)[n]
    return v1, v2, v3, v4


def check_rodrigues(Q: OperatorSeries, n_max: int) -> Optional[Violation]:
    for n in range(n_max + 1):
        v = rodrigues_variants(Q, n)
        for i in range(1, 4):
            if v[i] != v[0]:
                return Violation("Rodrigues forms agree", n, f"form (1) != form ({i + 1})")
    return None


def check_binomial_type(seq: PolySequence, y: Scalar) -> Optional[Violation]:
    """``p_n(x +_F y) = sum_k fib(n,k) p_k(x) p_{n-k}(y)`` for every entry."""
    y = to_rational(y)
    spec = seq.spec
    at_y = [p(y) for p in seq]
    for n in range(len(seq)):
        lhs = f_shift_value(seq[n], y, spec)
        rhs = Polynomial()
        for k in range(n + 1):
            rhs = rhs + seq[k] * (fibonomial(spec, n, k) * at_y[n - k])
        if lhs != rhs:
            return Violation("binomial-type identity", n, f"y={y}")
    return None


def verify_binomial_type(seq: PolySequence, y: Scalar) -> bool:
    return check_binomial_type(seq, y) is None


# -- first expansion ---------------------------------------------------------


def expand_operator(T: OperatorSeries, Q: OperatorSeries, basic: PolySequence) -> list[Fraction]:
    """Coefficients ``a_n = [T q_n](0)`` of ``T`` in powers of ``Q``."""
    return [apply(T, q)(0) for q in basic]


def reassemble(coeffs: Sequence[Fraction], Q: OperatorSeries) -> OperatorSeries:
    """``sum_n a_n/F_n! Q**n`` at the order of ``Q``."""
    spec = Q.spec
    out = identity(spec, Q.order).scale(0)
    Qn = identity(spec, Q.order)
    for n, a in enumerate(coeffs):
        if n > 0:
            Qn = multiply(Qn, Q.plain())
        if a:
            out = out + Qn.scale(Fraction(a) / f_factorial(spec, n))
    return out


def check_first_expansion(T: OperatorSeries, Q: OperatorSeries, basic: PolySequence) -> Optional[Violation]:
    """Re-assembling ``T`` from its expansion coefficients reproduces its action."""
    coeffs = expand_operator(T, Q, basic)
    R = reassemble(coeffs, Q)
    for d in range(len(basic)):
        xd = _monomial(d)
        if apply(R, xd) != apply(T, xd):
            return Violation("first expansion reconstruction", d, "action on x^n differs")
    return None


def verify_first_expansion(T: OperatorSeries, Q: OperatorSeries, basic: PolySequence) -> bool:
    return check_first_expansion(T, Q, basic) is None


# -- Sheffer sequences -------------------------------------------------------


def sheffer_from_S(Q: OperatorSeries, S: OperatorSeries, n_max: int, label: str = "") -> PolySequence:
    """``s_n = S^{-1} q_n`` where ``q_n`` is the basic sequence of ``Q``."""
    Q = as_delta(Q)
    basic = basic_sequence(Q, n_max)
    s_inv = invert(S)
    polys = tuple(apply(s_inv, q) for q in basic)
    seq = PolySequence(polys, label, FamilyKind.SHEFFER, Q.spec)
    bad = check_lowering(seq, Q)
    if bad is not None:
        raise IdentityError(str(bad))
    return seq


def sheffer_recurrence(Q: OperatorSeries, S: OperatorSeries, s_n: Polynomial, n: int) -> Polynomial:
    """``s_{n+1} = F_{n+1}/(n+1) [x^ - S'/S] (Q')^{-1} s_n``."""
    Q = as_delta(Q)
    spec = Q.spec
    qp_inv = invert(pincherle(Q))
    sp = pincherle(S)
    log_deriv = multiply(sp, invert(S).truncate(sp.order))
    u = apply(qp_inv, s_n)
    return (xhat_apply(spec, u) - apply(log_deriv, u)) * _ratio(spec, n + 1)


def _exp_f_of_square(spec: SequenceSpec, scale: Fraction, order: int) -> OperatorSeries:
    """``exp_F{scale * dF**2} = sum_k scale**k dF**(2k) / F_k!``."""
    cs = [Fraction(0)] * (order + 1)
    for k in range(order // 2 + 1):
        cs[2 * k] = scale**k / f_factorial(spec, k)
    return OperatorSeries(tuple(cs), spec)


def hermite(a: Scalar, n_max: int, spec: SequenceSpec = FIBONACCI) -> PolySequence:
    """Closed sum ``H_n = sum_k (-a)^k/(2^k F_k!) F-falling(n, 2k) x^(n-2k)``."""
    a = to_rational(a)
    polys = []
    for n in range(n_max + 1):
        cs = [Fraction(0)] * (n + 1)
        for k in range(n // 2 + 1):
            cs[n - 2 * k] = (-a) ** k / (2**k * f_factorial(spec, k)) * f_falling(spec, n, 2 * k)
        polys.append(Polynomial(cs))
    return PolySequence(tuple(polys), f"Hermite-F a={a}", FamilyKind.SHEFFER, spec)


def hermite_operators(a: Scalar, spec: SequenceSpec = FIBONACCI, order: int = 10) -> tuple[OperatorSeries, OperatorSeries]:
    """``(Q, S)`` reproducing :func:`hermite` as ``S^{-1} x^n``.

    ``S^{-1} = exp_F{-a dF^2/2}``.  Because ``exp_F{u} exp_F{-u} != 1``
    for the F-exponential, this ``S`` is not ``exp_F{a dF^2/2}``; the two
    first differ in the ``dF^4`` coefficient.
    """
    s_inv = _exp_f_of_square(spec, -to_rational(a) / 2, order)
    return f_derivative(spec, order), invert(s_inv)


def _binom(top: int, k: int) -> Fraction:
    """Ordinary binomial coefficient with an arbitrary integer top."""
    if k < 0:
        return Fraction(0)
    num = 1
    for i in range(k):
        num *= top - i
    return Fraction(num, math.factorial(k))


def laguerre_alpha(alpha: int, n_max: int, spec: SequenceSpec = FIBONACCI) -> PolySequence:
    """``L^(alpha)_n = sum_k F_n!/F_k! C(alpha+n, n-k) (-x)^k``; ordinary binomial.

    ``alpha = -1`` gives the basic sequence of the F-Laguerre operator.
    """
    if isinstance(alpha, bool) or not isinstance(alpha, int) or alpha < -1:
        raise ValueError(f"alpha must be an integer >= -1, got {alpha!r}")
    polys = []
    for n in range(n_max + 1):
        fn = f_factorial(spec, n)
        cs = [Fraction(fn, f_factorial(spec, k)) * _binom(alpha + n, n - k) * (-1) ** k for k in range(n + 1)]
        polys.append(Polynomial(cs))
    kind = FamilyKind.BASIC if alpha == -1 else FamilyKind.SHEFFER
    return PolySequence(tuple(polys), f"Laguerre-F alpha={alpha}", kind, spec)


def laguerre_operators(alpha: int, spec: SequenceSpec = FIBONACCI, order: int = 10) -> tuple[OperatorSeries, OperatorSeries]:
    """``(L, S)`` with ``S = (I - dF)^{-alpha-1}``."""
    base = identity(spec, order) - f_derivative(spec, order).plain()
    return laguerre_op(spec, order), power(base, -alpha - 1)


def bernoulli(n_max: int, spec: SequenceSpec = FIBONACCI) -> PolySequence:
    """``B_n = sum_k fib(n,k)/F_{k+1} x^(n-k)``."""
    polys = []
    for n in range(n_max + 1):
        cs = [Fraction(0)] * (n + 1)
        for k in range(n + 1):
            cs[n - k] = Fraction(fibonomial(spec, n, k)) / term(spec, k + 1)
        polys.append(Polynomial(cs))
    return PolySequence(tuple(polys), "Bernoulli-F", FamilyKind.SHEFFER, spec)


def bernoulli_operators(spec: SequenceSpec = FIBONACCI, order: int = 10) -> tuple[OperatorSeries, OperatorSeries]:
    """``(dF, S)`` with ``S^{-1} = sum_{k>=1} dF**(k-1)/F_k!``."""
    s_inv = OperatorSeries(tuple(Fraction(1, f_factorial(spec, j + 1)) for j in range(order + 1)), spec)
    return f_derivative(spec, order), invert(s_inv)


def check_sheffer_binomial(sheffer: PolySequence, basic: PolySequence, y: Scalar) -> Optional[Violation]:
    """``s_n(x +_F y) = sum_k fib(n,k) s_k(x) q_{n-k}(y)``, then ``s_n = sum_k fib(n,k) s_k(0) q_{n-k}``."""
    y = to_rational(y)
    spec = sheffer.spec
    N = min(len(sheffer), len(basic)) - 1
    q_at_y = [q(y) for q in basic]
    for n in range(N + 1):
        lhs = f_shift_value(sheffer[n], y, spec)
        rhs = Polynomial()
        for k in range(n + 1):
            rhs = rhs + sheffer[k] * (fibonomial(spec, n, k) * q_at_y[n - k])
        if lhs != rhs:
            return Violation("Sheffer binomial identity", n, f"y={y}")
    for n in range(N + 1):
        rhs = Polynomial()
        for k in range(n + 1):
            rhs = rhs + basic[n - k] * (fibonomial(spec, n, k) * sheffer[k](0))
        if sheffer[n] != rhs:
            return Violation("Sheffer expansion s_n = sum fib(n,k) s_k(0) q_(n-k)", n)
    return None


def verify_sheffer_binomial(sheffer: PolySequence, basic: PolySequence, y: Scalar) -> bool:
    return check_sheffer_binomial(sheffer, basic, y) is None


def check_s_inverse_expansion(sheffer: PolySequence, Q: OperatorSeries, S: OperatorSeries) -> Optional[Violation]:
    """``S^{-1} = sum_k s_k(0)/F_k! Q^k``, compared by action on ``x^0 .. x^N``."""
    rhs = reassemble([s(0) for s in sheffer], Q)
    s_inv = invert(S)
    for d in range(len(sheffer)):
        xd = _monomial(d)
        if apply(rhs, xd) != apply(s_inv, xd):
            return Violation("S^-1 expansion in powers of Q", d, "action on x^n differs")
    return None


def verify_s_inverse_expansion(sheffer: PolySequence, Q: OperatorSeries, S: OperatorSeries) -> bool:
    return check_s_inverse_expansion(sheffer, Q, S) is None


def check_second_expansion(
    Q: OperatorSeries, S: OperatorSeries, sheffer: PolySequence, p: Polynomial, y: Scalar
) -> Optional[Violation]:
    """``p(x +_F y) = sum_k s_k(y)/F_k! Q^k S p``."""
    y = to_rational(y)
    spec = Q.spec
    if p.is_zero():
        return None
    d = int(p.degree)
    if d >= len(sheffer):
        raise ValueError(f"need s_0 .. s_{d} for a degree-{d} polynomial")
    lhs = f_shift_value(p, y, spec)
    term_k = apply(S, p)
    rhs = Polynomial()
    for k in range(d + 1):
        if k:
            term_k = apply(Q, term_k)
        rhs = rhs + term_k * (sheffer[k](y) / f_factorial(spec, k))
    if lhs != rhs:
        return Violation("second expansion identity", d, f"y={y}")
    return None


def verify_second_expansion(
    Q: OperatorSeries, S: OperatorSeries, sheffer: PolySequence, p: Polynomial, y: Scalar
) -> bool:
    return check_second_expansion(Q, S, sheffer, p, y) is None


# -- umbral transfer ---------------------------------------------------------


def umbral_transfer(
    Q1: OperatorSeries, basic1: PolySequence, Q2: OperatorSeries, basic2: PolySequence, n: int
) -> Polynomial:
    """``q_n`` of ``Q1 = dF S`` from ``r_n`` of ``Q2 = dF P`` by both transfer formulas.

    (1) ``q_n = Q1' (Q2')^{-1} S^{-n-1} P^{n+1} r_n``
    (2) ``q_n = x^ (P S^{-1})^n x^{-1} r_n`` (``n >= 1``)

    Raises :class:`IdentityError` unless both agree with ``basic1[n]``.
    """
    bad = _transfer_violation(Q1, basic1, Q2, basic2, n)
    if bad is not None:
        raise IdentityError(str(bad))
    return basic1[n]


def _transfer_routes(Q1: OperatorSeries, Q2: OperatorSeries, r_n: Polynomial, n: int) -> tuple[Polynomial, Optional[Polynomial]]:
    Q1, Q2 = as_delta(Q1), as_delta(Q2)
    Q1._check_compatible(Q2)
    spec = Q1.spec
    S = divide_by_derivative(Q1)
    P = divide_by_derivative(Q2)
    op1 = multiply(
        multiply(pincherle(Q1), invert(pincherle(Q2))),
        multiply(power(S, -n - 1), power(P, n + 1)),
    )
    v1 = apply(op1, r_n)
    if n == 0:
        return v1, None
    op2 = power(multiply(P, invert(S)), n)
    v2 = xhat_apply(spec, apply(op2, xhat_inverse_apply(spec, r_n)))
    return v1, v2


def _transfer_violation(Q1, basic1, Q2, basic2, n) -> Optional[Violation]:
    v1, v2 = _transfer_routes(Q1, Q2, basic2[n], n)
    if v1 != basic1[n]:
        return Violation("umbral transfer (1)", n)
    if v2 is not None and v2 != basic1[n]:
        return Violation("umbral transfer (2)", n)
    return None


def check_transfer(Q1: OperatorSeries, basic1: PolySequence, Q2: OperatorSeries, basic2: PolySequence) -> Optional[Violation]:
    for n in range(min(len(basic1), len(basic2))):
        bad = _transfer_violation(Q1, basic1, Q2, basic2, n)
        if bad is not None:
            return bad
    return None


# -- generating functions ----------------------------------------------------


def _exp_f_x_series(r: OperatorSeries, n_max: int) -> list[Polynomial]:
    """z-coefficients of ``exp_F{x r(z)} = sum_m x^m r(z)^m / F_m!`` through ``z**n_max``."""
    spec = r.spec
    r = r.truncate(n_max)
    out = [Polynomial() for _ in range(n_max + 1)]
    rm = identity(spec, n_max)
    for m in range(n_max + 1):
        if m:
            rm = multiply(rm, r)
        scale = Fraction(1, f_factorial(spec, m))
        for k in range(n_max + 1):
            if rm.coeffs[k]:
                out[k] = out[k] + Polynomial.monomial(m, rm.coeffs[k] * scale)
    return out


def check_gf(basic: PolySequence, Q: OperatorSeries) -> Optional[Violation]:
    """``sum_k q_k(x) z^k / F_k! = exp_F{x Q^{-1}(z)}`` through ``z**N``."""
    N = basic.max_index
    spec = Q.spec
    if N == 0:
        return None if basic[0] == Polynomial([1]) else Violation("generating function", 0)
    r = compositional_inverse(Q.truncate(N))
    rhs = _exp_f_x_series(r, N)
    for k in range(N + 1):
        if basic[k] / f_factorial(spec, k) != rhs[k]:
            return Violation("generating function", k)
    return None


def verify_gf(basic: PolySequence, Q: OperatorSeries) -> bool:
    return check_gf(basic, Q) is None


def check_sheffer_gf(sheffer: PolySequence, Q: OperatorSeries, S: OperatorSeries) -> Optional[Violation]:
    """``sum_k s_k(x) z^k / F_k! = exp_F{x q^{-1}(z)} / s(q^{-1}(z))`` through ``z**N``."""
    N = sheffer.max_index
    spec = Q.spec
    if N == 0:
        expected = Polynomial([1 / S.coeffs[0]])
        return None if sheffer[0] == expected else Violation("Sheffer generating function", 0)
    r = compositional_inverse(Q.truncate(N))
    s_at_r = compose(S.truncate(N), r)
    if s_at_r.coeffs[0] == 0:
        raise IdentityError("s(q^-1(z)) has zero constant term; S is not invertible")
    recip = invert(s_at_r).coeffs
    ex = _exp_f_x_series(r, N)
    for k in range(N + 1):
        rhs = Polynomial()
        for j in range(k + 1):
            if recip[j]:
                rhs = rhs + ex[k - j] * recip[j]
        if sheffer[k] / f_factorial(spec, k) != rhs:
            return Violation("Sheffer generating function", k)
    return None


def verify_sheffer_gf(sheffer: PolySequence, Q: OperatorSeries, S: OperatorSeries) -> bool:
    return check_sheffer_gf(sheffer, Q, S) is None
