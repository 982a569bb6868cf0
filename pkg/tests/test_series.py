import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logcoeff.series import (
    SeriesError,
    TruncatedSeries,
    derivative,
    divide,
    exp1,
    gamma_from_a,
    integrate_from_zero,
    log1,
    log_coefficients,
    multiply,
    sqrt1,
)

from conftest import random_normalized, random_series


def koebe(order):
    return TruncatedSeries(np.arange(order + 1, dtype=float))


# independent oracles: plain power sums, no recurrences


def exp_by_powers(s):
    term = TruncatedSeries.one(s.order)
    total = term
    for k in range(1, s.order + 1):
        term = multiply(term, s) / k
        total = total + term
    return total


def log_by_mercator(s):
    u = s - 1
    power = TruncatedSeries.one(s.order)
    total = TruncatedSeries.zero(s.order)
    for k in range(1, s.order + 1):
        power = multiply(power, u)
        total = total + power * ((-1) ** (k + 1) / k)
    return total


def test_multiply_difference_of_squares():
    a = TruncatedSeries([1, 1], 3)
    b = TruncatedSeries([1, -1], 3)
    np.testing.assert_array_equal(multiply(a, b).coeffs, [1, 0, -1, 0])


def test_divide_gives_koebe_prefix():
    z = TruncatedSeries.identity(4)
    one_minus_z_sq = TruncatedSeries([1, -2, 1], 4)
    np.testing.assert_allclose(divide(z, one_minus_z_sq).coeffs, [0, 1, 2, 3, 4], atol=1e-15)


def test_derivative_power_rule():
    np.testing.assert_array_equal(derivative(TruncatedSeries([0, 1, 0, 1])).coeffs, [1, 0, 3, 0])


def test_integrate_from_zero():
    s = integrate_from_zero(TruncatedSeries([1, 2, 3, 4]))
    np.testing.assert_allclose(s.coeffs, [0, 1, 1, 1])


def test_divide_non_unit():
    with pytest.raises(SeriesError, match="non-unit divisor"):
        divide(TruncatedSeries.one(3), TruncatedSeries.identity(3))


def test_order_mismatch():
    with pytest.raises(SeriesError):
        multiply(TruncatedSeries.one(3), TruncatedSeries.one(4))


def test_truncation_never_reads_past_order():
    a = TruncatedSeries([1, 1, 1, 1])
    assert multiply(a, a).order == 3
    np.testing.assert_array_equal(multiply(a, a).coeffs, [1, 2, 3, 4])


def test_immutable():
    s = TruncatedSeries([1, 2])
    with pytest.raises(ValueError):
        s.coeffs[0] = 5


def test_log1_identity_and_mercator():
    assert np.all(log1(TruncatedSeries.one(5)).coeffs == 0)
    geom = TruncatedSeries(np.ones(5))  # 1/(1-z)
    np.testing.assert_allclose(log1(geom).coeffs, [0, 1, 1 / 2, 1 / 3, 1 / 4], atol=1e-15)


def test_log1_rejects_non_unit():
    with pytest.raises(SeriesError, match="log of non-unit"):
        log1(TruncatedSeries([2, 1]))


def test_exp1_sqrt1_preconditions():
    with pytest.raises(SeriesError, match="0.5"):
        exp1(TruncatedSeries([0.5, 1]))
    with pytest.raises(SeriesError, match="2"):
        sqrt1(TruncatedSeries([2, 1]))


def test_exp1_of_zero():
    np.testing.assert_array_equal(exp1(TruncatedSeries.zero(4)).coeffs, [1, 0, 0, 0, 0])


def test_sqrt1_of_square():
    s = TruncatedSeries([1, 0, -1], 6)
    np.testing.assert_allclose(sqrt1(multiply(s, s)).coeffs, s.coeffs, atol=1e-14)


def test_sqrt1_odd_koebe():
    # h = Koebe: h(z^2)/z^2 = 1/(1-z^2)^2, square root 1/(1-z^2) = 1 + z^2 + z^4 + ...
    n = 8
    s = np.zeros(n + 1)
    s[0::2] = np.arange(1, n // 2 + 2)
    np.testing.assert_allclose(sqrt1(TruncatedSeries(s)).coeffs, [1, 0, 1, 0, 1, 0, 1, 0, 1], atol=1e-14)


def test_log_exp_against_power_sum_oracles(rng):
    for _ in range(10):
        s = random_series(rng, 16, const=1.0)
        np.testing.assert_allclose(log1(s).coeffs, log_by_mercator(s).coeffs, atol=1e-9, rtol=1e-12)
        L = random_series(rng, 16, const=0.0)
        np.testing.assert_allclose(exp1(L).coeffs, exp_by_powers(L).coeffs, atol=1e-12)


def test_round_trip_exp_log(rng):
    for _ in range(20):
        s = random_series(rng, 24, const=1.0)
        np.testing.assert_allclose(exp1(log1(s)).coeffs, s.coeffs, atol=1e-12)
        L = random_series(rng, 24, const=0.0)
        np.testing.assert_allclose(log1(exp1(L)).coeffs, L.coeffs, atol=1e-12)


def test_round_trip_sqrt(rng):
    for _ in range(20):
        s = random_series(rng, 24, const=1.0)
        q = sqrt1(s)
        np.testing.assert_allclose(multiply(q, q).coeffs, s.coeffs, atol=1e-12)
        np.testing.assert_allclose(sqrt1(multiply(s, s)).coeffs, s.coeffs, atol=1e-9)


coeff = st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 32).flatmap(lambda n: st.tuples(*[st.lists(coeff, min_size=n + 1, max_size=n + 1)] * 3)))
def test_multiply_commutative_associative(abc):
    a, b, c = (TruncatedSeries(x) for x in abc)
    np.testing.assert_allclose(multiply(a, b).coeffs, multiply(b, a).coeffs, atol=1e-13)
    np.testing.assert_allclose(
        multiply(multiply(a, b), c).coeffs, multiply(a, multiply(b, c)).coeffs, atol=1e-13
    )


def test_log_coefficients_koebe():
    gam = log_coefficients(koebe(11))
    assert gam.count == 10
    np.testing.assert_allclose(gam.as_array(), 1 / np.arange(1, 11), atol=1e-12)
    with pytest.raises(IndexError):
        gam[11]


def test_log_coefficients_identity_and_half_koebe():
    assert np.all(log_coefficients(TruncatedSeries.identity(8)).as_array() == 0)
    f = TruncatedSeries(np.r_[0.0, np.ones(10)])  # z/(1-z)
    np.testing.assert_allclose(log_coefficients(f).as_array(), 1 / (2 * np.arange(1, 10)), atol=1e-14)


def test_log_coefficients_rejects_unnormalized():
    with pytest.raises(SeriesError):
        log_coefficients(TruncatedSeries([0, 2, 1]))
    with pytest.raises(SeriesError):
        log_coefficients(TruncatedSeries([1, 1, 1]))


def test_gamma_from_a():
    assert gamma_from_a(2, 3, 4) == pytest.approx((1, 0.5, 1 / 3))
    assert gamma_from_a(0, 0, 0) == (0, 0, 0)


def test_gamma_from_a_matches_series(rng):
    for _ in range(50):
        f = random_normalized(rng, 12)
        g = log_coefficients(f)
        ref = gamma_from_a(f[2], f[3], f[4])
        np.testing.assert_allclose([g[1], g[2], g[3]], ref, atol=1e-12)


def test_rotation_covariance(rng):
    f = random_normalized(rng, 16)
    base = log_coefficients(f).as_array()
    n = np.arange(1, base.size + 1)
    for theta in rng.uniform(0, 2 * math.pi, 20):
        rot = log_coefficients(f.rotate(theta)).as_array()
        np.testing.assert_allclose(rot, np.exp(1j * n * theta) * base, atol=1e-12)
        np.testing.assert_allclose(np.abs(rot), np.abs(base), atol=1e-12)


def test_json_round_trip():
    s = TruncatedSeries([0, 1, 2 + 1j])
    assert s.to_json() == "[[0.0, 0.0], [1.0, 0.0], [2.0, 1.0]]"
    assert TruncatedSeries.from_json(s.to_json()) == s
