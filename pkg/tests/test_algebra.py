"""Exact arithmetic: bivariate polynomials, rational functions, eps-jets."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from folint.algebra import (
    ONE,
    ZERO,
    BivarPoly,
    EpsSeries,
    NonInvertibleSeries,
    PolyParseError,
    RationalFunction,
    SeriesOrderMismatch,
    X,
    Y,
    divexact,
    grlex_key,
    parse_poly,
    poly_gcd,
)
from helpers import random_poly


# ---------------------------------------------------------------------------
# BivarPoly
# ---------------------------------------------------------------------------


def test_constructor_drops_zero_terms():
    p = BivarPoly({(0, 0): 0, (1, 0): 2, (0, 1): Fraction(0)})
    assert p.terms == {(1, 0): Fraction(2)}


def test_constructor_rejects_negative_exponents():
    with pytest.raises(ValueError):
        BivarPoly({(-1, 0): 1})


def test_binomial_square():
    assert (X + Y) ** 2 == X * X + X * Y * 2 + Y * Y


def test_known_sums_and_products():
    assert X - X == ZERO
    assert (X + 1) * (X - 1) == X * X - 1
    assert ONE * X == X
    assert X * 0 == ZERO


def test_degree_and_leading_term():
    p = X * X * Y + Y * 3
    assert p.degree() == 3
    assert p.leading_term() == ((2, 1), Fraction(1))
    assert ZERO.degree() == -1


def test_grlex_key_orders_by_total_degree_then_x():
    assert grlex_key((0, 3)) < grlex_key((1, 2)) < grlex_key((0, 4))


def test_homogeneous_parts_sum_back():
    rng = random.Random(11)
    for _ in range(20):
        p = random_poly(rng, 5)
        parts = p.homogeneous_parts()
        assert sum(parts.values(), ZERO) == p
        for d, part in parts.items():
            assert all(a + b == d for (a, b) in part.terms)


def test_partial_product_rule():
    rng = random.Random(7)
    for _ in range(25):
        p = random_poly(rng, 4)
        q = random_poly(rng, 4)
        for var in ("x", "y"):
            lhs = (p * q).partial(var)
            rhs = p.partial(var) * q + p * q.partial(var)
            assert lhs == rhs


def test_partials_commute():
    rng = random.Random(8)
    for _ in range(25):
        p = random_poly(rng, 5)
        assert p.partial("x").partial("y") == p.partial("y").partial("x")


def test_eval_is_exact():
    p = X * X + Y * 3 - 1
    assert p.eval(Fraction(1, 2), Fraction(1, 3)) == Fraction(1, 4) + 1 - 1


def test_as_callable_matches_eval():
    rng = random.Random(3)
    for _ in range(10):
        p = random_poly(rng, 4)
        f = p.as_callable()
        # dyadic points are exact in binary, so the comparison is tight
        for x, y in [(0.25, -0.75), (1.5, 0.125), (0.0, 0.0)]:
            exact = float(p.eval(Fraction(x), Fraction(y)))
            assert math.isclose(f(x, y), exact, rel_tol=1e-12, abs_tol=1e-12)


def test_to_text_graded_lex_with_rationals():
    assert (X * X + Y * Y).to_text() == "x^2 + y^2"
    p = X**3 * Fraction(2, 3) + X * Y * Y
    assert p.to_text() == "2/3x^3 + xy^2"
    assert ZERO.to_text() == "0"
    assert (-X + 1).to_text() in ("-x + 1", "- x + 1")


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "text, poly",
    [
        ("x^2 + y^2", X * X + Y * Y),
        ("1/2xy - 3", X * Y * Fraction(1, 2) - 3),
        ("y", Y),
        ("0", ZERO),
        ("-x + x", ZERO),
        ("2/3x^3 + xy^2", X**3 * Fraction(2, 3) + X * Y**2),
    ],
)
def test_parse_known_inputs(text, poly):
    assert parse_poly(text) == poly


@pytest.mark.parametrize(
    "bad", ["", "  ", "x^", "x++y", "2//3", "(x)", "x z", "x^-2", "+"]
)
def test_parse_rejects_malformed(bad):
    with pytest.raises(PolyParseError):
        parse_poly(bad)


def test_parse_whitespace_is_insignificant():
    assert parse_poly("x y") == X * Y
    assert parse_poly("3 4") == BivarPoly.constant(34)
    assert parse_poly("x ^ 2") == X * X


def test_parse_error_carries_column():
    with pytest.raises(PolyParseError) as err:
        parse_poly("x + qq")
    assert err.value.column == 5


coeffs_strategy = st.dictionaries(
    st.tuples(st.integers(0, 4), st.integers(0, 4)),
    st.fractions(min_value=-20, max_value=20, max_denominator=7),
    max_size=8,
)


@given(coeffs_strategy)
@settings(max_examples=80, deadline=None)
def test_parse_print_round_trip(terms):
    p = BivarPoly(terms)
    assert parse_poly(p.to_text()) == p


# ---------------------------------------------------------------------------
# Exact division and gcd
# ---------------------------------------------------------------------------


def test_divexact_round_trip():
    rng = random.Random(19)
    for _ in range(25):
        p = random_poly(rng, 3)
        d = random_poly(rng, 3) + 1  # keep the divisor nonzero
        assert divexact(p * d, d) == p


def test_divexact_rejects_nondivisor():
    with pytest.raises(ValueError):
        divexact(X, Y)
    with pytest.raises(ValueError):
        divexact(X * X + 1, X + 1)


def test_divexact_by_zero():
    with pytest.raises(ZeroDivisionError):
        divexact(X, ZERO)


def test_poly_gcd_recovers_common_factor():
    g = X + Y * 2
    d = poly_gcd((X + 1) * g, Y * g)
    assert d == g  # already grlex-monic
    assert poly_gcd(X * X, ZERO) == X * X


def test_poly_gcd_divides_both():
    rng = random.Random(23)
    for _ in range(15):
        p = random_poly(rng, 3) + 1
        q = random_poly(rng, 3) + X
        g = random_poly(rng, 2) + Y + 1
        d = poly_gcd(p * g, q * g)
        assert divexact(p * g, d) * d == p * g
        assert divexact(q * g, d) * d == q * g


# ---------------------------------------------------------------------------
# RationalFunction
# ---------------------------------------------------------------------------


def test_rational_reduces_on_construction():
    r = RationalFunction(X * X - Y * Y, X - Y)
    assert r == RationalFunction(X + Y)
    assert r.is_poly()


def test_rational_denominator_is_monic():
    r = RationalFunction(Y, X * 2)
    assert r.den == X
    assert r.num == Y * Fraction(1, 2)


def test_rational_zero_denominator_raises():
    with pytest.raises(ZeroDivisionError):
        RationalFunction(X, ZERO)


def test_rational_field_identities():
    one_plus_x = ONE + X
    a = RationalFunction(ONE, one_plus_x)
    b = RationalFunction(X, one_plus_x)
    assert a + b == RationalFunction(ONE)
    assert a * one_plus_x == RationalFunction(ONE)
    assert (a / a) == RationalFunction(ONE)
    assert a.reciprocal() == RationalFunction(one_plus_x)


def test_rational_partial_quotient_rule():
    rng = random.Random(31)
    for _ in range(10):
        u = random_poly(rng, 3)
        v = random_poly(rng, 2) + 1
        r = RationalFunction(u, v)
        for var in ("x", "y"):
            expected = RationalFunction(
                u.partial(var) * v - u * v.partial(var), v * v
            )
            assert r.partial(var) == expected


def test_rational_eval_and_pole():
    r = RationalFunction(ONE, ONE + X)
    assert r.eval(1, 0) == Fraction(1, 2)
    with pytest.raises(ZeroDivisionError):
        r.eval(-1, 0)


def test_rational_as_callable():
    r = RationalFunction(X * X + Y * Y, ONE + X)
    f = r.as_callable()
    assert math.isclose(f(0.5, 0.5), (0.25 + 0.25) / 1.5, rel_tol=1e-15)


# ---------------------------------------------------------------------------
# EpsSeries
# ---------------------------------------------------------------------------


def test_series_pads_with_zeros():
    s = EpsSeries([X], 3)
    assert s.coeffs == (X, ZERO, ZERO, ZERO)
    assert s.order == 3


def test_series_too_many_coeffs():
    with pytest.raises(ValueError):
        EpsSeries([1, 2, 3], 1)


def test_series_order_mismatch():
    with pytest.raises(SeriesOrderMismatch):
        EpsSeries([1], 1) + EpsSeries([1], 2)


def test_series_product_truncates():
    s = EpsSeries([Fraction(1), Fraction(1)], 2)
    t = EpsSeries([Fraction(1), Fraction(-1)], 2)
    assert (s * t).coeffs == (Fraction(1), Fraction(0), Fraction(-1))


def test_series_geometric_inverse():
    # 1/(1 - eps) = 1 + eps + eps^2 + ...
    s = EpsSeries([Fraction(1), Fraction(-1)], 5)
    assert s.invert().coeffs == tuple(Fraction(1) for _ in range(6))


@given(st.lists(st.integers(-5, 5), min_size=0, max_size=5))
@settings(max_examples=60, deadline=None)
def test_series_invert_round_trip(tail):
    s = EpsSeries([Fraction(1)] + [Fraction(c) for c in tail], len(tail))
    assert s * s.invert() == EpsSeries.constant(Fraction(1), len(tail))


def test_series_invert_lifts_polynomial_unit():
    s = EpsSeries([ONE + X, Y], 2)
    inv = s.invert()
    assert isinstance(inv.coeffs[0], RationalFunction)
    assert (s.lift_to_rf() * inv) == EpsSeries.constant(RationalFunction(1), 2)


def test_series_invert_requires_unit():
    with pytest.raises(NonInvertibleSeries):
        EpsSeries([ZERO, X], 1).invert()


def test_series_eps_derivative():
    s = EpsSeries([X, Y, X * Y], 2)
    d = s.eps_derivative()
    assert d.coeffs == (Y, X * Y * 2, ZERO)


def test_series_shift_and_truncate_extend():
    s = EpsSeries([1, 2, 3], 2)
    assert s.shift().coeffs == (0, 1, 2)
    assert s.truncate(1).coeffs == (1, 2)
    assert s.extend(4).coeffs == (1, 2, 3, 0, 0)
    with pytest.raises(SeriesOrderMismatch):
        s.truncate(3)
    with pytest.raises(SeriesOrderMismatch):
        s.extend(1)


def test_series_leibniz_rule():
    """(st)' = s't + st' holds in every slot except the unreliable top one."""
    rng = random.Random(41)
    for _ in range(10):
        s = EpsSeries([random_poly(rng, 2) for _ in range(4)], 3)
        t = EpsSeries([random_poly(rng, 2) for _ in range(4)], 3)
        lhs = (s * t).eps_derivative()
        rhs = s.eps_derivative() * t + s * t.eps_derivative()
        assert lhs.coeffs[:-1] == rhs.coeffs[:-1]
