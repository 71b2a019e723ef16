import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special

from relkin import specfun
from relkin.specfun import (
    bessel_zero,
    binomial,
    double_factorial,
    generalized_laguerre,
    log_double_factorial,
    spherical_bessel_j,
)


@pytest.mark.parametrize(
    "l, x, expected, atol",
    [
        (0, math.pi, 0.0, 1e-15),
        (0, 0.0, 1.0, 0.0),
        (1, 0.0, 0.0, 0.0),
        (5, 0.0, 0.0, 0.0),
        (1, 4.493409, 0.0, 1e-6),
        (0, 1.0, 0.8414709848078965, 1e-15),
        (2, 1.0, 0.06203505201137386, 1e-15),
        (10, 3.0, 3.5260038931752653e-06, 1e-17),
    ],
)
def test_spherical_bessel_values(l, x, expected, atol):
    assert spherical_bessel_j(l, x) == pytest.approx(expected, abs=atol)


def test_spherical_bessel_vectorized_against_scipy():
    x = np.concatenate([[0.0, 1e-6, 1e-3], np.linspace(0.01, 60, 600)])
    for l in range(0, 21):
        ref = special.spherical_jn(l, x)
        np.testing.assert_allclose(spherical_bessel_j(l, x), ref, rtol=1e-11, atol=1e-300)


def test_spherical_bessel_scalar_returns_float():
    assert isinstance(spherical_bessel_j(0, 2.0), float)
    assert spherical_bessel_j(0, np.array([2.0])).shape == (1,)


@pytest.mark.parametrize("l, x", [(-1, 1.0), (0, -0.5)])
def test_spherical_bessel_domain(l, x):
    with pytest.raises(ValueError):
        spherical_bessel_j(l, x)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 10), st.floats(0.1, 50.0))
def test_spherical_bessel_recurrence(l, x):
    lhs = (2 * l + 1) * spherical_bessel_j(l, x) / x
    rhs = spherical_bessel_j(l - 1, x) + spherical_bessel_j(l + 1, x)
    scale = max(abs(lhs), abs(spherical_bessel_j(l - 1, x)), 1e-300)
    assert abs(lhs - rhs) <= 1e-10 * scale


def test_bessel_zero_values():
    assert bessel_zero(0, 1) == pytest.approx(math.pi, rel=1e-15)
    for n in range(1, 8):
        assert bessel_zero(0, n) == pytest.approx(n * math.pi, rel=1e-15)
    assert bessel_zero(1, 1) == pytest.approx(4.493409457909064, rel=1e-13)
    assert bessel_zero(2, 1) == pytest.approx(5.763459196894550, rel=1e-13)


def test_bessel_zero_is_root():
    for l in range(6):
        for n in range(1, 6):
            assert abs(spherical_bessel_j(l, bessel_zero(l, n))) < 1e-12


def test_bessel_zero_interlacing():
    for n in range(1, 6):
        for l in range(0, 6):
            assert bessel_zero(l, n) < bessel_zero(l + 1, n) < bessel_zero(l, n + 1)


@pytest.mark.parametrize("l, n", [(0, 0), (-1, 1)])
def test_bessel_zero_domain(l, n):
    with pytest.raises(ValueError):
        bessel_zero(l, n)


@pytest.mark.parametrize(
    "k, lam, x, expected",
    [
        (0, 0.3, 7.0, 1.0),
        (0, 2.5, -1.0, 1.0),
        (1, 0.5, 0.0, 1.5),
        (1, 0.5, 2.0, -0.5),
        (2, 1.0, 1.0, 0.5),
    ],
)
def test_laguerre_values(k, lam, x, expected):
    assert generalized_laguerre(k, lam, x) == pytest.approx(expected, abs=1e-14)


def test_laguerre_against_scipy():
    x = np.linspace(0, 20, 41)
    for k in range(8):
        for lam in (0.0, 0.5, 1.0, 3.0, 7.0):
            np.testing.assert_allclose(
                generalized_laguerre(k, lam, x), special.eval_genlaguerre(k, lam, x), rtol=1e-10, atol=1e-10
            )


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10), st.floats(0.01, 3.0), st.floats(0.0, 20.0))
def test_laguerre_recurrence(k, lam, x):
    lhs = (k + 1) * generalized_laguerre(k + 1, lam, x)
    rhs = (2 * k + lam + 1 - x) * generalized_laguerre(k, lam, x) - (k + lam) * generalized_laguerre(k - 1, lam, x)
    scale = max(abs(lhs), abs(rhs), (2 * k + lam + 1 + x) * abs(generalized_laguerre(k, lam, x)), 1.0)
    assert abs(lhs - rhs) <= 1e-9 * scale


@pytest.mark.parametrize("lam", [0.0, 0.5, 2.0])
def test_laguerre_orthogonality(lam):
    def overlap(k, kp):
        f = lambda x: x**lam * math.exp(-x) * generalized_laguerre(k, lam, x) * generalized_laguerre(kp, lam, x)
        return integrate.quad(f, 0, np.inf, limit=200)[0]

    for k in range(5):
        for kp in range(k + 1, 5):
            assert abs(overlap(k, kp)) <= 1e-6


def test_laguerre_domain():
    with pytest.raises(ValueError):
        generalized_laguerre(2, -1.0, 1.0)
    with pytest.raises(ValueError):
        generalized_laguerre(-1, 0.5, 1.0)


@pytest.mark.parametrize(
    "beta, j, expected",
    [(4, 2, 6), (0.5, 0, 1), (4, 2, math.comb(4, 2)), (2.5, 2, 1.875), (-0.5, 3, -0.3125), (3, 5, 0)],
)
def test_binomial_values(beta, j, expected):
    assert binomial(beta, j) == pytest.approx(expected, rel=1e-14, abs=1e-15)


def test_binomial_central():
    k = 2
    assert binomial(2 * k, k) == 6


def test_binomial_pole():
    with pytest.raises(ValueError):
        binomial(-3, 2)


@settings(max_examples=100, deadline=None)
@given(st.floats(-0.9, 30.0).filter(lambda b: not (b < 0 and b.is_integer())), st.integers(0, 12))
def test_binomial_matches_gamma(beta, j):
    ref = special.binom(beta, j)
    assert binomial(beta, j) == pytest.approx(ref, rel=1e-10, abs=1e-12)


@pytest.mark.parametrize("n, expected", [(0, 1), (1, 1), (5, 15), (7, 105), (8, 384), (-1, 1)])
def test_double_factorial(n, expected):
    assert double_factorial(n) == expected


def test_double_factorial_overflow():
    with pytest.raises(OverflowError):
        double_factorial(400)


@pytest.mark.parametrize("n", [1, 2, 9, 50, 299])
def test_log_double_factorial(n):
    assert log_double_factorial(n) == pytest.approx(math.log(double_factorial(n)), rel=1e-12)


def test_bessel_order_limit():
    assert specfun.LMAX_BESSEL >= 20
