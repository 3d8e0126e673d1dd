"""Relative-exactness decomposition and the iterated Melnikov sequence."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from folint.abelian import CIRCLE, PeriodPoly, period_of_form
from folint.algebra import BivarPoly, X, Y
from folint.exterior import Form1Planar, d_planar_scalar
from folint.francoise import (
    ExceedsMax,
    FrancoisePair,
    FrancoiseSequence,
    NoSolution,
    decompose,
    melnikov_sequence,
    sequence_length,
)
from folint.oracle import HolonomyConfig, melnikov_estimate
from helpers import random_form, random_poly, zero_period_form

F = X * X + Y * Y
DF = d_planar_scalar(F)
ZERO = BivarPoly.zero()


# ---------------------------------------------------------------------------
# decompose
# ---------------------------------------------------------------------------


def test_decompose_recovers_constructed_splits():
    # feed g dF + dr back in; the canonical pair may differ from (g, r) by the
    # s(F) gauge but must satisfy the same identity exactly
    rng = random.Random(201)
    for _ in range(25):
        g = random_poly(rng, 3)
        r = random_poly(rng, 4) - BivarPoly.constant(random_poly(rng, 4).constant_term())
        w = DF.scale(g) + d_planar_scalar(r)
        pair = decompose(w)
        assert isinstance(pair, FrancoisePair)
        assert pair.verify(BivarPoly.one(), w, F)
        rebuilt = DF.scale(pair.g) + d_planar_scalar(pair.r)
        assert (rebuilt - w).is_zero()


def test_decompose_iff_zero_period():
    rng = random.Random(202)
    for _ in range(60):
        w = random_form(rng, 4)
        out = decompose(w)
        if period_of_form(w).is_zero():
            assert isinstance(out, FrancoisePair)
        else:
            assert isinstance(out, NoSolution)


def test_decompose_witness_is_the_period():
    out = decompose(Form1Planar(Y, ZERO))
    assert isinstance(out, NoSolution)
    assert out.witness == PeriodPoly.single(1, -1)
    assert out.witness == period_of_form(Form1Planar(Y, ZERO))


def test_decompose_zero_period_inputs_always_split():
    rng = random.Random(203)
    for _ in range(40):
        w = zero_period_form(rng, 5)
        pair = decompose(w)
        assert isinstance(pair, FrancoisePair)
        assert pair.verify(BivarPoly.one(), w, F)


def test_decompose_canonical_gauge_kills_pure_even_y_in_g():
    # the s(F)-shift freedom lives exactly on the y^{2j} coefficients of g
    rng = random.Random(204)
    for _ in range(30):
        pair = decompose(zero_period_form(rng, 5))
        assert all(not (a == 0 and b % 2 == 0) for (a, b) in pair.g.terms)


def test_decompose_gelfand_leray_identity():
    # differentiating w = g dF + dr gives dw = dg ^ dF
    rng = random.Random(205)
    for _ in range(20):
        w = zero_period_form(rng, 4)
        pair = decompose(w)
        assert w.d() == d_planar_scalar(pair.g).wedge(DF)


def test_pair_rejects_constant_term_in_r():
    with pytest.raises(ValueError, match="constant term"):
        FrancoisePair(g=X, r=BivarPoly.one() + X * Y)


# ---------------------------------------------------------------------------
# melnikov_sequence
# ---------------------------------------------------------------------------


def test_square_dx_iterates_forever():
    res = melnikov_sequence(CIRCLE, Form1Planar(Y * Y, ZERO), 4)
    assert res.first_nonzero is None
    assert res.order_reached() == 4
    assert all(m.is_zero() for m in res.melnikov)
    seq = res.sequence
    assert len(seq) == 4
    assert seq.g(0) == BivarPoly.one()
    # g_i = (-1)^i x^i / i!, pinned by the worked factorial pattern
    assert seq.g(1) == -X
    assert seq.r(1) == Fraction(2, 3) * X**3 + X * Y * Y
    assert seq.g(2) == Fraction(1, 2) * X * X
    assert seq.r(2) == Fraction(-1, 4) * X**4 - Fraction(1, 2) * X * X * Y * Y
    assert seq.g(3) == Fraction(-1, 6) * X**3
    assert seq.g(4) == Fraction(1, 24) * X**4


def test_multiple_of_df_gives_monomial_sequence():
    w = DF.scale(X)  # 2x^2 dx + 2xy dy
    res = melnikov_sequence(CIRCLE, w, 3)
    assert res.first_nonzero is None
    for i in range(1, 4):
        assert res.sequence.g(i) == X**i
        assert res.sequence.r(i).is_zero()
    assert sequence_length(res.sequence, 3) == ExceedsMax(max_order=3)


def test_first_order_sign_convention():
    # y dx has period -pi t, and M_1 = -period, so the first coefficient is +pi t
    res = melnikov_sequence(CIRCLE, Form1Planar(Y, ZERO), 5)
    assert res.first_nonzero == 1
    assert res.melnikov == (PeriodPoly.single(1, 1),)
    assert len(res.sequence) == 0

    res = melnikov_sequence(CIRCLE, Form1Planar(ZERO, X), 5)
    assert res.melnikov == (PeriodPoly.single(1, -1),)


def test_stopping_leaves_pairs_one_short():
    rng = random.Random(206)
    for _ in range(10):
        w = zero_period_form(rng, 3)
        res = melnikov_sequence(CIRCLE, w, 5)
        if res.first_nonzero is None:
            assert len(res.sequence) == 5
        else:
            assert len(res.sequence) == res.first_nonzero - 1
            assert not res.melnikov[-1].is_zero()
            assert all(m.is_zero() for m in res.melnikov[:-1])


def test_zero_form_trivial_sequence():
    res = melnikov_sequence(CIRCLE, Form1Planar.zero(), 3)
    assert res.first_nonzero is None
    assert all(m.is_zero() for m in res.melnikov)
    assert all(p.g.is_zero() and p.r.is_zero() for p in res.sequence.pairs)
    assert sequence_length(res.sequence) == 0


def test_max_order_validation():
    with pytest.raises(ValueError):
        melnikov_sequence(CIRCLE, Form1Planar(Y, ZERO), 0)


def test_pairs_certify_each_step():
    rng = random.Random(207)
    w = zero_period_form(rng, 4)
    res = melnikov_sequence(CIRCLE, w, 4)
    seq = res.sequence
    for i in range(1, len(seq) + 1):
        assert seq.pairs[i - 1].verify(seq.g(i - 1), w, F)
        # Gelfand-Leray shape of the same identity
        assert (w.scale(seq.g(i - 1))).d() == d_planar_scalar(seq.g(i)).wedge(DF)


def test_second_order_value_matches_holonomy():
    # independent numerics: fit Delta(1, eps) against the RK4 transport
    rng = random.Random(31)
    w = zero_period_form(rng, 3)
    res = melnikov_sequence(CIRCLE, w, 3)
    assert res.first_nonzero == 2
    exact = res.melnikov[1].eval_float(1.0)
    est = melnikov_estimate(F, w, 1.0, 3, HolonomyConfig(step_count=2000))
    assert est[0] == pytest.approx(0.0, abs=1e-6)
    assert est[1] == pytest.approx(exact, rel=1e-3)


def test_sequence_length_finds_first_zero_g():
    # hand-built sequence: g_2 = 0 means length 1
    pairs = (
        FrancoisePair(g=X, r=ZERO),
        FrancoisePair(g=ZERO, r=ZERO),
        FrancoisePair(g=Y * Y * X, r=ZERO),
    )
    seq = FrancoiseSequence(family=CIRCLE, omega=Form1Planar(Y * Y, ZERO), pairs=pairs)
    assert sequence_length(seq) == 1
    assert sequence_length(seq, max_order=1) == ExceedsMax(max_order=1)
    assert repr(ExceedsMax(7)) == "ExceedsMax(max_order=7)"
