import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dynlab.special import std_normal_cdf, std_normal_pdf, std_normal_quantile

mpmath.mp.dps = 40


@pytest.mark.parametrize("z", [-8.0, -5.5, -3.0, -1.0, -0.1, 0.0, 0.3, 1.7, 4.0, 8.0])
def test_cdf_matches_high_precision(z):
    exact = float(mpmath.ncdf(z))
    assert std_normal_cdf(z) == pytest.approx(exact, rel=1e-14, abs=1e-300)


def test_cdf_array_agrees_with_scalar():
    zs = np.linspace(-8, 8, 257)
    arr = std_normal_cdf(zs)
    scalar = np.array([std_normal_cdf(float(z)) for z in zs])
    assert np.allclose(arr, scalar, rtol=1e-14, atol=0.0)


def test_cdf_rejects_nan():
    with pytest.raises(ValueError):
        std_normal_cdf(float("nan"))


def test_pdf_peak():
    assert std_normal_pdf(0.0) == pytest.approx(1.0 / math.sqrt(2 * math.pi), rel=1e-15)


def test_quantile_known_values():
    assert std_normal_quantile(0.5) == 0.0
    # 50-digit root of Phi(z) = 0.975
    assert std_normal_quantile(0.975) == pytest.approx(1.9599639845400542355, abs=1e-12)
    assert std_normal_quantile(0.01) == pytest.approx(-2.3263478740408411009, abs=1e-12)


@pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5])
def test_quantile_domain(p):
    with pytest.raises(ValueError):
        std_normal_quantile(p)


def test_quantile_round_trip_dense_grid():
    ps = np.concatenate([np.geomspace(1e-12, 0.02, 200), np.linspace(0.02, 0.98, 2001),
                         1.0 - np.geomspace(1e-10, 0.02, 200)])
    worst = max(abs(std_normal_cdf(std_normal_quantile(float(p))) - p) for p in ps)
    assert worst <= 1e-12


@pytest.mark.parametrize("p", ["1e-10", "0.0001", "0.3", "0.7", "0.999999"])
def test_quantile_vs_mpmath_root(p):
    exact = mpmath.sqrt(2) * mpmath.erfinv(2 * mpmath.mpf(p) - 1)
    assert std_normal_quantile(float(p)) == pytest.approx(float(exact), rel=1e-11, abs=1e-12)


finite = st.floats(-8.0, 8.0, allow_nan=False)


@given(finite)
def test_reflection(z):
    assert abs(std_normal_cdf(z) + std_normal_cdf(-z) - 1.0) <= 1e-14


@given(finite, finite)
def test_cdf_monotone(a, b):
    if a < b:
        assert std_normal_cdf(a) <= std_normal_cdf(b)


@settings(max_examples=200)
@given(st.floats(1e-6, 1 - 1e-6))
def test_quantile_inverts_cdf(p):
    assert abs(std_normal_cdf(std_normal_quantile(p)) - p) <= 1e-12
