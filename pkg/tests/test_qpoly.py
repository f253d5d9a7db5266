from fractions import Fraction

import pytest

from app.errors import InvalidParams, NonExactDivision
from app.services.qpoly import (
    QPoly,
    format_rational,
    parse_rational,
    qpoly_arith,
    qpoly_eval,
    qpoly_exact_div,
    qpoly_geq_q,
    qpoly_is_nonneg,
    rational_to_json,
)

q = QPoly.q()


def _random_poly(rng, degree=4, low=-5, high=5):
    return QPoly(tuple(rng.randint(low, high) for _ in range(rng.randint(0, degree) + 1)))


def test_normalization_trims_trailing_zeros():
    assert QPoly((1, 2, 0, 0)).coeffs == (1, 2)
    assert QPoly((0, 0)).is_zero
    assert QPoly.zero().degree == float("-inf")


def test_integral_fractions_are_stored_as_int():
    p = QPoly((Fraction(4, 2), Fraction(1, 3)))
    assert p.coeffs[0] == 2 and isinstance(p.coeffs[0], int)
    assert p.coeffs[1] == Fraction(1, 3)


def test_binomial_square():
    assert (1 + q) ** 2 == QPoly((1, 2, 1))
    assert (1 + q) * (1 - q) == QPoly((1, 0, -1))


def test_ring_laws_on_random_polynomials(rng):
    for _ in range(50):
        a, b, c = (_random_poly(rng) for _ in range(3))
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a - a == QPoly.zero()


def test_exact_division():
    assert ((1 + q) ** 3).exact_div(1 + q) == (1 + q) ** 2
    assert QPoly((2, 4)).exact_div(2) == QPoly((1, 2))
    assert QPoly((1, Fraction(1, 2))).exact_div(QPoly((2, 1))) == QPoly.constant(Fraction(1, 2))


def test_exact_division_with_remainder_raises():
    with pytest.raises(NonExactDivision):
        (q ** 2 + 1).exact_div(q + 1)
    with pytest.raises(NonExactDivision):
        q.exact_div(QPoly.zero())


def test_non_exact_division_is_an_arithmetic_error():
    with pytest.raises(ArithmeticError):
        QPoly.one().exact_div(q)


def test_q_nonnegativity():
    assert QPoly.zero().is_nonneg()
    assert QPoly((1, 0, 3)).is_nonneg()
    assert not QPoly((1, -1)).is_nonneg()
    assert qpoly_geq_q((1 + q) ** 2, 1 + q ** 2)
    assert not qpoly_geq_q(1 + q ** 2, (1 + q) ** 2)


def test_evaluate_at_rationals():
    assert ((1 + q) ** 2).evaluate(Fraction(1, 2)) == Fraction(9, 4)
    assert ((1 + q) ** 2).evaluate(1) == 4
    assert QPoly.zero().evaluate(7) == 0


def test_parse_rational():
    assert parse_rational("3/6") == Fraction(1, 2)
    value = parse_rational("4/2")
    assert value == 2 and isinstance(value, int)
    assert parse_rational(" -7 ") == -7


@pytest.mark.parametrize("literal", ["0.5", "1e3", "abc", "1/0"])
def test_parse_rational_rejects_non_exact_literals(literal):
    with pytest.raises(InvalidParams):
        parse_rational(literal)


def test_json_encoding_of_coefficients():
    assert rational_to_json(5) == 5
    assert rational_to_json(2 ** 70) == str(2 ** 70)
    assert rational_to_json(Fraction(-1, 3)) == "-1/3"
    assert format_rational(Fraction(6, 3)) == "2"
    assert QPoly.zero().to_json() == [0]


def test_from_json_accepts_arrays_and_scalars():
    assert QPoly.from_json(["1/2", 3]) == QPoly((Fraction(1, 2), 3))
    assert QPoly.from_json(7) == QPoly.constant(7)
    assert QPoly.from_json(str(2 ** 70)).constant_term == 2 ** 70


def test_string_form():
    assert str(QPoly((1, -2, 1))) == "1 - 2*q + q^2"
    assert str(QPoly.zero()) == "0"
    assert str(q) == "q"


def test_arith_dispatch():
    assert qpoly_arith(q, QPoly.one(), "add") == 1 + q
    assert qpoly_arith(q, q, "mul") == q ** 2
    with pytest.raises(InvalidParams):
        qpoly_arith(q, q, "div")


def test_evaluation_is_multiplicative(rng):
    for _ in range(30):
        a, b = _random_poly(rng), _random_poly(rng)
        x = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        assert qpoly_eval(a * b, x) == qpoly_eval(a, x) * qpoly_eval(b, x)


def test_exact_division_inverts_multiplication(rng):
    for _ in range(30):
        p, d = _random_poly(rng), _random_poly(rng)
        if d.is_zero:
            continue
        assert qpoly_exact_div(p * d, d) == p


def test_nonnegativity_helper():
    assert qpoly_is_nonneg(QPoly.zero())
    assert qpoly_is_nonneg(1 + q)
    assert not qpoly_is_nonneg(q - 1)


def test_geq_q_is_a_partial_order(rng):
    for _ in range(40):
        f = _random_poly(rng)
        g = f + _random_poly(rng, low=0, high=3)
        h = g + _random_poly(rng, low=0, high=3)
        assert qpoly_geq_q(f, f)
        assert qpoly_geq_q(g, f) and qpoly_geq_q(h, g)
        assert qpoly_geq_q(h, f)
        if qpoly_geq_q(f, g):
            assert f == g
        other = _random_poly(rng)
        if qpoly_geq_q(f, other) and qpoly_geq_q(other, f):
            assert f == other
