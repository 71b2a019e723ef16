"""Special functions used by the analytic radial wavefunctions.

Spherical Bessel functions of the first kind (integer order up to
``LMAX_BESSEL``), their positive zeros, generalized Laguerre polynomials in
their explicit finite-sum form, and a few factorial-type helpers.

All functions accept scalars; ``spherical_bessel_j`` and
``generalized_laguerre`` also broadcast over numpy arrays in their argument.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

LMAX_BESSEL = 50
SMALL_ARG = 1e-4
# Miller recurrence is rescaled once values exceed this magnitude.
_BIG = 1e250


def _as_output(values, scalar):
    return float(values) if scalar else values


def _check_order(l):
    if int(l) != l or l < 0 or l > LMAX_BESSEL:
        raise ValueError(f"spherical Bessel order must be an integer in [0, {LMAX_BESSEL}], got {l}")
    return int(l)


def _small_argument(l, x):
    # leading two terms of x^l/(2l+1)!! * (1 - x^2/(2(2l+3)) + ...)
    return x**l / double_factorial(2 * l + 1) * (1.0 - x * x / (2.0 * (2 * l + 3)))


def _upward(l, x):
    s, c = np.sin(x), np.cos(x)
    j_prev = s / x
    if l == 0:
        return j_prev
    j_cur = s / (x * x) - c / x
    for k in range(1, l):
        j_prev, j_cur = j_cur, (2 * k + 1) / x * j_cur - j_prev
    return j_cur


def _downward(l, x):
    """Miller's algorithm: recur downward from a high order, normalize to j_0/j_1."""
    start = 2 * l + 40
    f_next = np.zeros_like(x)
    f_cur = np.full_like(x, 1e-300)
    f_l = np.zeros_like(x)
    f_1 = np.zeros_like(x)
    for k in range(start, 0, -1):
        # f_{k-1} = (2k+1)/x f_k - f_{k+1}
        f_prev = (2 * k + 1) / x * f_cur - f_next
        f_next, f_cur = f_cur, f_prev
        if k - 1 == l:
            f_l = f_cur.copy()
        if k - 1 == 1:
            f_1 = f_cur.copy()
        elif k == 1:
            f_1 = f_next.copy()
        big = np.abs(f_cur) > _BIG
        if np.any(big):
            scale = np.where(big, 1.0 / _BIG, 1.0)
            f_cur *= scale
            f_next *= scale
            f_l *= scale
            f_1 *= scale
    f_0 = f_cur
    j0 = np.sin(x) / x
    j1 = np.sin(x) / (x * x) - np.cos(x) / x
    # normalize against whichever of j_0, j_1 is further from a zero
    use_j0 = np.abs(j0) >= np.abs(j1)
    ratio = np.where(use_j0, j0 / np.where(f_0 == 0, 1.0, f_0), j1 / np.where(f_1 == 0, 1.0, f_1))
    return f_l * ratio


def spherical_bessel_j(l, x):
    """Spherical Bessel function of the first kind, ``j_l(x)`` for ``x >= 0``.

    Upward recurrence from the closed forms of ``j_0`` and ``j_1`` is used
    where ``x > l``; downward (Miller) recurrence where ``x <= l``; and the
    power series where ``x < 1e-4``.
    """
    l = _check_order(l)
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x < 0) or not np.all(np.isfinite(x)):
        raise ValueError("spherical_bessel_j requires finite x >= 0")
    out = np.empty_like(x)
    small = x < SMALL_ARG
    up = (~small) & (x > l)
    down = (~small) & ~up
    if np.any(small):
        out[small] = _small_argument(l, x[small])
    if np.any(up):
        out[up] = _upward(l, x[up])
    if np.any(down):
        out[down] = _downward(l, x[down])
    return _as_output(out[0] if scalar else out, scalar)


@lru_cache(maxsize=None)
def bessel_zero(l, n):
    """n-th positive zero of ``j_l``.

    Zeros are bracketed by a sign-change scan with step pi/4 starting at
    ``l + 1`` (below the first zero) and refined with Brent's method.
    """
    l = _check_order(l)
    if int(n) != n or n < 1:
        raise ValueError(f"zero index must be a positive integer, got {n}")
    n = int(n)
    if l == 0:
        return n * math.pi
    step = math.pi / 4
    a = l + 1.0
    fa = spherical_bessel_j(l, a)
    found = 0
    while True:
        b = a + step
        fb = spherical_bessel_j(l, b)
        if fa == 0.0:
            found += 1
            if found == n:
                return a
        elif fa * fb < 0:
            found += 1
            if found == n:
                return brentq(lambda t: spherical_bessel_j(l, t), a, b, xtol=1e-14, rtol=1e-13)
        a, fa = b, fb


def binomial(beta, j):
    """Generalized binomial coefficient Gamma(beta+1) / (j! Gamma(beta-j+1)).

    Raises ``ValueError`` when ``beta + 1`` sits on a pole of the gamma
    function.  A pole in the denominator alone gives 0.  Integer ``beta``
    goes through exact integer arithmetic.
    """
    if int(j) != j or j < 0:
        raise ValueError(f"lower index must be a non-negative integer, got {j}")
    j = int(j)
    if beta < 0 and float(beta).is_integer():
        raise ValueError(f"binomial({beta}, {j}): gamma pole at beta + 1 = {beta + 1}")
    if float(beta).is_integer() and beta >= 0:
        return float(math.comb(int(beta), j))
    # Gamma(beta+1)/Gamma(beta-j+1) is the falling factorial beta(beta-1)...(beta-j+1)
    prod = 1.0
    for i in range(j):
        prod *= (beta - i) / (i + 1)
    return prod


def generalized_laguerre(k, lam, x):
    """Generalized Laguerre polynomial as the explicit finite sum

        L_k^lam(x) = sum_{j=0}^{k} (-1)^j binom(k + lam, k - j) x^j / j!
    """
    if int(k) != k or k < 0:
        raise ValueError(f"degree must be a non-negative integer, got {k}")
    if lam <= -1:
        raise ValueError(f"Laguerre superscript must exceed -1, got {lam}")
    k = int(k)
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x)
    power = np.ones_like(x)
    for j in range(k + 1):
        total = total + (-1) ** j * binomial(k + lam, k - j) * power / math.factorial(j)
        power = power * x
    return _as_output(total, scalar)


def double_factorial(n):
    """n!! with the conventions (-1)!! = 0!! = 1.  Exact up to float rounding for n <= 300."""
    if int(n) != n or n < -1:
        raise ValueError(f"double factorial needs an integer n >= -1, got {n}")
    n = int(n)
    if n > 300:
        raise OverflowError("double_factorial supports n <= 300; use log_double_factorial")
    if n <= 0:
        return 1.0
    return float(math.prod(range(n, 0, -2)))


def log_double_factorial(n):
    """Natural log of n!!, valid for any integer n >= -1."""
    if int(n) != n or n < -1:
        raise ValueError(f"double factorial needs an integer n >= -1, got {n}")
    n = int(n)
    if n <= 0:
        return 0.0
    if n % 2 == 0:
        m = n // 2
        return m * math.log(2.0) + math.lgamma(m + 1)
    m = (n + 1) // 2
    # (2m-1)!! = (2m)! / (2^m m!)
    return math.lgamma(2 * m + 1) - m * math.log(2.0) - math.lgamma(m + 1)
