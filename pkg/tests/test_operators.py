from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fibonomial.operators import (
    DeltaOperator,
    NotDeltaError,
    NotInvertibleError,
    OperatorSeries,
    OrderMismatchError,
    TruncationError,
    abel,
    apply,
    backward_difference,
    compose,
    compositional_inverse,
    divide_by_derivative,
    f_derivative,
    f_shift_value,
    forward_difference,
    identity,
    invert,
    is_delta,
    laguerre_op,
    multiply,
    pincherle,
    power,
    translation,
    xhat_apply,
    xhat_inverse_apply,
)
from fibonomial.poly import Polynomial
from fibonomial.sequences import FIBONACCI as F, SequenceSpec, fibonomial
from oracles import d_f, series_action, trim, xhat

rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 6))
x = Polynomial.x()


def series(order, const=None):
    coeffs = st.lists(rationals, min_size=order + 1, max_size=order + 1)
    if const is not None:
        coeffs = coeffs.map(lambda cs: [const] + cs[1:])
    return coeffs.map(lambda cs: OperatorSeries(tuple(cs), F))


def poly_upto(deg):
    return st.lists(rationals, max_size=deg + 1).map(Polynomial)


def invertible(order):
    return series(order).filter(lambda T: T.coeffs[0] != 0)


def test_f_derivative_examples():
    D = f_derivative(F, 6)
    assert apply(D, x**5) == 5 * x**4
    assert apply(D, Polynomial([7])).is_zero()
    assert apply(D, x**3 + x) == 2 * x**2 + 1


def test_apply_examples():
    assert apply(identity(F, 4), x**3 - 2) == x**3 - 2
    assert apply(translation(F, 1, 2), x**2) == x**2 + x + 1
    assert apply(forward_difference(F, 3), x**3) == 2 * x**2 + 2 * x + 1


def test_apply_refuses_truncation():
    with pytest.raises(TruncationError):
        apply(f_derivative(F, 3), x**4)


@given(series(7), poly_upto(7))
def test_apply_matches_repeated_single_derivatives(T, p):
    assert list(apply(T, p).coeffs) == series_action(T.coeffs, list(p.coeffs))


def test_translation_examples():
    assert translation(F, 0, 5) == identity(F, 5)
    assert translation(F, 1, 2).coeffs == (1, 1, 1)
    y = Fraction(-3, 7)
    assert apply(translation(F, y, 1), x) == x + y
    assert f_shift_value(x, y) == x + y


@given(poly_upto(6), rationals)
def test_f_shift_value_is_translation(p, y):
    assert f_shift_value(p, y) == apply(translation(F, y, 6), p)


def test_multiply_examples():
    T = OperatorSeries((Fraction(2), 3, Fraction(-1, 2), 4), F)
    assert multiply(T, identity(F, 3)) == T
    D = f_derivative(F, 4)
    assert multiply(D, D).coeffs == (0, 0, 1, 0, 0)
    ones = OperatorSeries.from_divided([1] * 5, F)
    prod = multiply(ones, ones)
    expected = [sum(fibonomial(F, k, l) for l in range(k + 1)) for k in range(5)]
    assert list(prod.divided) == expected
    assert prod.divided[2] == 3


def test_multiply_rejects_mismatch():
    with pytest.raises(OrderMismatchError):
        multiply(identity(F, 3), identity(F, 4))
    with pytest.raises(OrderMismatchError):
        multiply(identity(F, 3), identity(SequenceSpec.custom(range(10)), 3))


@given(series(10), series(10))
def test_isomorphism_fibonomial_convolution(T, S):
    a, b = T.divided, S.divided
    c = multiply(T, S).divided
    for k in range(11):
        assert c[k] == sum(fibonomial(F, k, l) * a[l] * b[k - l] for l in range(k + 1))


@given(series(8), series(8), series(8))
def test_multiply_commutative_associative(T, S, U):
    assert multiply(T, S) == multiply(S, T)
    assert multiply(multiply(T, S), U) == multiply(T, multiply(S, U))


@given(series(6), series(6), poly_upto(6))
def test_multiply_is_composition_of_actions(T, S, p):
    assert apply(multiply(T, S), p) == apply(T, apply(S, p))


def test_invert_examples():
    assert invert(identity(F, 6)) == identity(F, 6)
    geometric = invert(identity(F, 7) - f_derivative(F, 7))
    assert geometric.coeffs == (1,) * 8
    # L = dF/(dF - I) = -dF (I - dF)^{-1}
    L = multiply(f_derivative(F, 7), geometric).scale(-1)
    assert L == laguerre_op(F, 7)


@given(invertible(8))
def test_invert_involution_and_identity(T):
    U = invert(T)
    assert multiply(T, U) == identity(F, 8)
    assert invert(U) == T


def test_invert_refuses_delta():
    for Q in (f_derivative(F, 4), forward_difference(F, 4), abel(F, 2, 4)):
        with pytest.raises(NotInvertibleError):
            invert(Q)


def test_pincherle_examples():
    assert pincherle(f_derivative(F, 5)) == identity(F, 4)
    for n in range(1, 7):
        Dn = power(f_derivative(F, 7), n)
        assert pincherle(Dn) == power(f_derivative(F, 6), n - 1).scale(n)
    assert pincherle(identity(F, 5).scale(Fraction(5, 3))).coeffs == (0,) * 5


@given(series(7), poly_upto(6))
def test_pincherle_is_commutator_with_xhat(T, p):
    lhs = series_action(T.coeffs, xhat(list(p.coeffs)))
    rhs = xhat(series_action(T.coeffs, list(p.coeffs)))
    commutator = trim([a - b for a, b in zip(lhs + [0] * 10, rhs + [0] * 10)])
    assert list(apply(pincherle(T), p).coeffs) == commutator


def test_xhat_examples():
    assert xhat_apply(F, Polynomial([1])) == x
    assert xhat_apply(F, x) == 2 * x**2
    assert xhat_apply(F, x**2) == Fraction(3, 2) * x**3


@given(poly_upto(10))
def test_commutator_is_identity(p):
    D = f_derivative(F, 12)
    assert apply(D, xhat_apply(F, p)) - xhat_apply(F, apply(D, p)) == p


@given(poly_upto(8))
def test_xhat_inverse(p):
    assert xhat_inverse_apply(F, xhat_apply(F, p)) == p
    assert xhat_inverse_apply(F, Polynomial([5])).is_zero()


def test_is_delta_examples():
    assert is_delta(f_derivative(F, 3))
    assert not is_delta(translation(F, 1, 3))
    assert is_delta(forward_difference(F, 3))
    assert not is_delta(OperatorSeries((0, 0, 1), F))


def test_named_constructors():
    assert forward_difference(F, 3).coeffs == (0, 1, 1, Fraction(1, 2))
    assert backward_difference(F, 3).coeffs == (0, 1, -1, Fraction(1, 2))
    a = Fraction(2, 3)
    assert abel(F, a, 4).coeffs == (0, 1, a, a**2, a**3 / 2)
    assert laguerre_op(F, 3).coeffs == (0, -1, -1, -1)
    for Q in (f_derivative(F, 6), forward_difference(F, 6), backward_difference(F, 6), abel(F, a, 6), laguerre_op(F, 6)):
        assert isinstance(Q, DeltaOperator) and is_delta(Q)


def test_delta_operator_validates():
    with pytest.raises(NotDeltaError):
        DeltaOperator((1, 1), F)


def test_abel_is_derivative_times_translation():
    a = Fraction(-5, 4)
    expected = multiply(f_derivative(F, 6), translation(F, a, 6))
    assert abel(F, a, 6) == expected


def test_power_examples():
    T = OperatorSeries((2, 1, 0, 3), F)
    assert power(T, 0) == identity(F, 3)
    assert power(f_derivative(F, 5), 3).coeffs == (0, 0, 0, 1, 0, 0)
    assert power(T, -1) == invert(T)
    assert power(T, -3) == invert(multiply(T, multiply(T, T)))
    with pytest.raises(NotInvertibleError):
        power(f_derivative(F, 3), -1)


@given(series(10), series(10))
def test_leibniz_rule(T, S):
    lhs = pincherle(multiply(T, S))
    rhs = multiply(pincherle(T), S.truncate(9)) + multiply(T.truncate(9), pincherle(S))
    assert lhs == rhs


@given(series(8), st.integers(1, 6))
def test_power_rule(S, n):
    lhs = pincherle(power(S, n))
    rhs = multiply(pincherle(S), power(S.truncate(7), n - 1)).scale(n)
    assert lhs == rhs


@given(series(8), rationals, poly_upto(8))
def test_shift_invariance(T, y, p):
    E = translation(F, y, 8)
    assert apply(T, apply(E, p)) == apply(E, apply(T, p))


@given(st.sampled_from(["d", "delta", "nabla", "abel", "lag"]), rationals, poly_upto(9))
def test_delta_operators_lower_degree_by_one(name, a, p):
    Q = {
        "d": f_derivative(F, 9),
        "delta": forward_difference(F, 9),
        "nabla": backward_difference(F, 9),
        "abel": abel(F, a, 9),
        "lag": laguerre_op(F, 9),
    }[name]
    out = apply(Q, p)
    if p.degree >= 1:
        assert out.degree == p.degree - 1
    else:
        assert out.is_zero()


def test_delta_factorization():
    for Q in (f_derivative(F, 6), forward_difference(F, 6), backward_difference(F, 6), abel(F, 3, 6), laguerre_op(F, 6)):
        P = divide_by_derivative(Q)
        assert P.coeffs[0] != 0
        assert multiply(f_derivative(F, 5), P) == Q.truncate(5)


def test_compositional_inverse_examples():
    z = f_derivative(F, 6)
    assert compositional_inverse(z) == z.plain()
    q = forward_difference(F, 6)
    r = compositional_inverse(q)
    assert compose(q, r) == z.plain()
    assert r.coeffs[1] == 1 / q.coeffs[1]
    q = abel(F, Fraction(3, 5), 6).scale(Fraction(-7, 2))
    r = compositional_inverse(q)
    assert r.coeffs[1] == 1 / q.coeffs[1]
    assert compose(q, r) == z.plain()
    assert compose(r, q) == z.plain()


@given(series(7, const=Fraction(0)).filter(lambda T: T.coeffs[1] != 0))
def test_compositional_inverse_round_trip(q):
    r = compositional_inverse(q)
    z = f_derivative(F, 7).plain()
    assert compose(q, r) == z
    assert compose(r, q) == z


def test_compositional_inverse_rejects_non_delta():
    with pytest.raises(NotDeltaError):
        compositional_inverse(translation(F, 1, 4))


def test_render_both_bases():
    text = forward_difference(F, 3).render()
    assert text == "c: [0, 1, 1, 1/2]\na: [0, 1, 1, 1]"


def test_from_divided_round_trip():
    T = OperatorSeries.from_divided([1, 2, 3, 4, 5], F)
    assert list(T.divided) == [1, 2, 3, 4, 5]
    assert T.coeffs[4] == Fraction(5, 6)


def test_custom_naturals_recover_classical_derivative():
    spec = SequenceSpec.custom(range(20))
    D = f_derivative(spec, 5)
    assert apply(D, x**5) == 5 * x**4
    # E^1 becomes the ordinary shift p(x) -> p(x + 1)
    assert apply(translation(spec, 1, 3), x**3) == (x + 1) ** 3
    assert d_f([0, 0, 1], list(range(20))) == [0, 2]
