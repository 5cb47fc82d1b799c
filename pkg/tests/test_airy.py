"""Airy evaluation against independent series / high-precision oracles."""
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from airylab.airy import ai_values, airy_ai, airy_ai_batch, first_airy_zero
from airylab.errors import DomainError

mp.mp.dps = 30

# Maclaurin oracle: Ai(0) = 3^(-2/3)/Gamma(2/3) summed independently below
AI_ZERO_VALUE = 0.3550280538878172
FIRST_ZERO = -2.3381074104597670


def maclaurin_oracle(x: float, terms: int = 120) -> float:
    """Independent series evaluation in mpmath arithmetic."""
    xm = mp.mpf(x)
    c1 = mp.mpf(3) ** mp.mpf("-2/3") / mp.gamma(mp.mpf(2) / 3)
    c2 = mp.mpf(3) ** mp.mpf("-1/3") / mp.gamma(mp.mpf(1) / 3)
    f_term, g_term = mp.mpf(1), xm
    f_sum, g_sum = f_term, g_term
    for k in range(1, terms):
        f_term *= xm ** 3 / ((3 * k) * (3 * k - 1))
        g_term *= xm ** 3 / ((3 * k + 1) * (3 * k))
        f_sum += f_term
        g_sum += g_term
    return float(c1 * f_sum - c2 * g_sum)


class TestPointValues:
    def test_origin(self):
        assert airy_ai(0.0).value == pytest.approx(AI_ZERO_VALUE, abs=1e-15)
        assert airy_ai(0.0).value == pytest.approx(maclaurin_oracle(0.0), abs=1e-15)

    def test_first_zero_by_bisection(self):
        zero = first_airy_zero()
        assert zero == pytest.approx(FIRST_ZERO, abs=1e-12)
        assert abs(airy_ai(zero).value) < 1e-10

    def test_against_series_oracle_inside_switch(self):
        for x in [-7.5, -5.0, -2.3, -0.7, 0.0, 1.3, 4.0, 7.9]:
            assert airy_ai(x).value == pytest.approx(maclaurin_oracle(x), abs=1e-13)

    def test_against_mpmath_through_twenty(self):
        for x in np.linspace(-20.0, 20.0, 81):
            exact = float(mp.airyai(float(x)))
            assert airy_ai(float(x)).value == pytest.approx(exact, abs=1e-12)

    def test_branch_overlap_at_switch(self):
        # both branches stay within 1e-12 of truth near the switch point
        for x in [7.99, 8.0, 8.01, -7.99, -8.0, -8.01]:
            exact = float(mp.airyai(x))
            assert airy_ai(x).value == pytest.approx(exact, abs=1e-12)

    def test_series_asymptotic_overlap_direct(self):
        # the two evaluation branches agree with each other at the switch
        from airylab.airy import _asym_neg, _asym_scaled_pos, _series

        xs = np.array([8.0])
        series_val = float(_series(xs)[0])
        asym_val = float(_asym_scaled_pos(xs)[0]) * math.exp(-(2.0 / 3.0) * 8.0 ** 1.5)
        assert abs(series_val - asym_val) <= 1e-12
        xs = np.array([-8.0])
        assert abs(float(_series(xs)[0]) - float(_asym_neg(xs)[0])) <= 1e-12

    def test_positive_axis_decay_monotone(self):
        vals = [airy_ai(float(x)).value for x in range(1, 11)]
        assert all(v > 0 for v in vals)
        assert all(a > b for a, b in zip(vals, vals[1:]))


class TestScaledRepresentation:
    def test_log_scaled_valid_far_right(self):
        for x in [25.0, 40.0, 56.0]:
            scaled = airy_ai(x).log_scaled_value
            exact = float(mp.airyai(x) * mp.exp(mp.mpf(2) / 3 * mp.mpf(x) ** mp.mpf("1.5")))
            assert scaled == pytest.approx(exact, rel=1e-12)

    def test_value_and_scaled_consistent(self):
        x = 12.0
        ev = airy_ai(x)
        assert ev.value == pytest.approx(ev.log_scaled_value * math.exp(-(2 / 3) * x ** 1.5), rel=1e-13)

    def test_value_positive_and_bounded_on_positive_axis(self):
        for x in np.linspace(0.0, 30.0, 61):
            v = airy_ai(float(x)).value
            assert 0.0 < v <= AI_ZERO_VALUE + 1e-15


class TestBatch:
    def test_empty(self):
        assert airy_ai_batch([]) == []

    def test_singleton(self):
        assert airy_ai_batch([0.0]) == [airy_ai(0.0)]

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.floats(min_value=-30, max_value=30), max_size=12))
    def test_matches_scalar_calls(self, xs):
        batch = airy_ai_batch(xs)
        singles = [airy_ai(float(x)) for x in xs]
        assert batch == singles


class TestInvariants:
    def test_second_derivative_identity(self):
        # Ai''(x) = x Ai(x), central difference at step 1e-4
        h = 1e-4
        for x in np.linspace(-5.0, 5.0, 41):
            x = float(x)
            d2 = (airy_ai(x + h).value - 2 * airy_ai(x).value + airy_ai(x - h).value) / h ** 2
            assert d2 == pytest.approx(x * airy_ai(x).value, abs=1e-6)

    def test_rejects_non_finite(self):
        for bad in [math.nan, math.inf, -math.inf]:
            with pytest.raises(DomainError):
                airy_ai(bad)
        with pytest.raises(DomainError):
            ai_values(np.array([1.0, math.nan]))
