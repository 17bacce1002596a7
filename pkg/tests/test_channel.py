import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crystalrates import ChannelGains, rates, rates_for_profile

gain_values = st.floats(min_value=0.01, max_value=100.0,
                        allow_nan=False, allow_infinity=False)
power_values = st.floats(min_value=0.0, max_value=1.0,
                         allow_nan=False, allow_infinity=False)


def test_zero_power_gives_zero_rates():
    g = ChannelGains.two_user(2, 0.2, 1, 0.1)
    assert np.array_equal(rates(g, [0.0, 0.0]), [0.0, 0.0])


def test_two_user_rates_match_hand_evaluation():
    g = ChannelGains.two_user(2, 0.2, 1, 0.1, p_max=1.0)
    r = rates(g, [1.0, 1.0])
    expected = [math.log2(1 + 2 / 1.2), math.log2(1 + 1 / 1.1)]
    assert np.allclose(r, expected, atol=1e-15)
    assert round(r[0], 4) == 1.4150 and round(r[1], 4) == 0.9329


def test_single_transmitter_rate_is_interference_free():
    g = ChannelGains.two_user(2, 0.2, 1, 0.1)
    r = rates(g, [1.0, 0.0])
    assert r[0] == math.log2(3.0)
    assert r[1] == 0.0


def test_profile_rates_match_power_rates_exactly():
    g = ChannelGains.two_user(2, 0.2, 1, 0.1, p_max=0.7)
    for bits in [(0, 0), (1, 0), (0, 1), (1, 1)]:
        direct = rates(g, np.asarray(bits, dtype=float) * g.p_max)
        assert np.array_equal(rates_for_profile(g, bits), direct)


def test_silent_strong_user_leaves_clean_rate():
    g = ChannelGains.two_user(20, 2, 1, 1)
    assert np.allclose(rates_for_profile(g, (0, 1)), [0.0, 1.0], atol=1e-15)


def test_rate_is_zero_iff_power_is_zero():
    g = ChannelGains.two_user(5, 3, 2, 4)
    r = rates(g, [0.0, 0.3])
    assert r[0] == 0.0 and r[1] > 0.0


@pytest.mark.parametrize("powers", [[1.0], [1.0, 1.0, 1.0], [-0.1, 0.5], [0.5, 1.5]])
def test_invalid_powers_rejected(powers):
    g = ChannelGains.two_user(1, 1, 1, 1, p_max=1.0)
    with pytest.raises(ValueError):
        rates(g, powers)


def test_invalid_gain_matrices_rejected():
    with pytest.raises(ValueError):
        ChannelGains(np.array([[1.0, 0.5]]))          # not square
    with pytest.raises(ValueError):
        ChannelGains(np.array([[1.0]]))               # one user
    with pytest.raises(ValueError):
        ChannelGains(np.array([[1.0, -0.1], [0.2, 1.0]]))
    with pytest.raises(ValueError):
        ChannelGains(np.array([[0.0, 0.1], [0.2, 1.0]]))  # dead direct link
    with pytest.raises(ValueError):
        ChannelGains.two_user(1, 1, 1, 1, p_max=0.0)


def test_bad_profile_bits_rejected():
    g = ChannelGains.two_user(1, 1, 1, 1)
    with pytest.raises(ValueError):
        rates_for_profile(g, (1, 2))
    with pytest.raises(ValueError):
        rates_for_profile(g, (1, 0, 1))


@given(a=gain_values, b=gain_values, c=gain_values, d=gain_values,
       p1=power_values, p2=power_values)
@settings(max_examples=60, deadline=None)
def test_rate_increases_in_own_power(a, b, c, d, p1, p2):
    g = ChannelGains.two_user(a, b, c, d)
    lower = rates(g, [p1 * 0.5, p2])
    upper = rates(g, [p1 * 0.5 + 0.25, p2])
    assert upper[0] > lower[0]


@given(a=gain_values, b=gain_values, c=gain_values, d=gain_values, p2=power_values)
@settings(max_examples=60, deadline=None)
def test_rate_decreases_in_interfering_power(a, b, c, d, p2):
    g = ChannelGains.two_user(a, b, c, d)
    quiet = rates(g, [1.0, p2 * 0.5])
    loud = rates(g, [1.0, p2 * 0.5 + 0.25])
    assert loud[0] < quiet[0]


@given(direct=gain_values, p_max=st.floats(min_value=0.1, max_value=10.0))
@settings(max_examples=60, deadline=None)
def test_lone_transmitter_consistency(direct, p_max):
    g = ChannelGains.two_user(direct, 0.3, 1.0, 0.7, p_max=p_max)
    r = rates_for_profile(g, (1, 0))
    assert r[0] == math.log2(1 + direct * p_max)


@given(direct=gain_values)
@settings(max_examples=60, deadline=None)
def test_doubling_direct_gain_shifts_rate_by_log_ratio(direct):
    base = ChannelGains.two_user(direct, 0.5, 1.0, 0.5)
    doubled = ChannelGains.two_user(2 * direct, 0.5, 1.0, 0.5)
    r0 = rates_for_profile(base, (1, 0))[0]
    r1 = rates_for_profile(doubled, (1, 0))[0]
    assert math.isclose(r1 - r0, math.log2((1 + 2 * direct) / (1 + direct)),
                        rel_tol=0, abs_tol=1e-12)
