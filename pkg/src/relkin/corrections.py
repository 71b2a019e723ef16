"""First-order relativistic eigenvalue corrections.

Replacing t0 by t in the Hamiltonian shifts each level, to first order, by

    dh = <t - t0> = mc2 [sqrt(1 + 2<t0>/mc2) - 1 - <t0>/mc2] = mc2 f(x),

with ``x = 2 <t0> / mc2`` and ``f(x) = sqrt(1 + x) - 1 - x/2 <= 0``.

The relative size of the shift is reported two ways.  ``strict`` divides by
``x/2`` (that is ``|dh| / <t0>``, equal to ``|dh|/|e|`` for the well and the
Coulomb problem).  ``paper`` divides by ``x`` (``|dh| / (2 <t0>)``); this is
the normalization behind the commonly quoted 1% thresholds
x* ~ 0.083 and Z/n ~ 39.5.  ``CorrectionReport.ratio_strict`` is always the
literal ``|dh|/|e|``; for the oscillator, where ``|e| = 2 <t0>``, it
coincides with the paper-mode ratio.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import bisect

from . import spectra
from .spectra import LevelRecord

MODES = ("strict", "paper")
_RATIO_LIMIT = {"paper": 0.5, "strict": 1.0}


def _f(x):
    # sqrt(1+x) - 1 - x/2 = -x^2 / (2 (1 + sqrt(1+x))^2), free of cancellation
    s = 1.0 + math.sqrt(1.0 + x)
    return -x * x / (2.0 * s * s)


def delta_h(t0_mean, mc2=1.0):
    """First-order shift <t> - <t0> for a level with kinetic expectation ``t0_mean``."""
    if t0_mean < 0:
        raise ValueError(f"<t0> must be non-negative, got {t0_mean}")
    return mc2 * _f(2.0 * t0_mean / mc2)


def corrected_level(pot, qn, sc):
    e = spectra.eigenvalue(pot, qn, sc)
    t0 = spectra.expectation_t0(pot, qn, sc)
    v = spectra.expectation_v(pot, qn, sc)
    dh = delta_h(t0, sc.mc2)
    return LevelRecord(qn, e, t0, v, dh, e + dh)


@dataclass(frozen=True)
class CorrectionReport:
    level: LevelRecord
    x: float
    ratio_strict: float
    ratio_paper: float


def correction_report(pot, qn, sc):
    level = corrected_level(pot, qn, sc)
    x = 2.0 * level.t0_mean / sc.mc2
    strict = abs(level.delta_h) / abs(level.e) if level.e != 0 else 0.0
    return CorrectionReport(level, x, strict, correction_ratio(x, "paper"))


def _check_mode(mode):
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def correction_ratio(x, mode="paper"):
    """|f(x)| / (x/2) in strict mode, |f(x)| / x in paper mode; 0 at x = 0."""
    _check_mode(mode)
    if x < 0:
        raise ValueError(f"x must be non-negative, got {x}")
    if x == 0:
        return 0.0
    s = 1.0 + math.sqrt(1.0 + x)
    paper = x / (2.0 * s * s)
    return 2.0 * paper if mode == "strict" else paper


def threshold_x(ratio, mode="paper", xtol=1e-16):
    """The x at which ``correction_ratio(x, mode) == ratio``, by bracketed bisection.

    The ratio is strictly increasing in x, approaching 1/2 (paper) or 1
    (strict), so the root is unique.
    """
    _check_mode(mode)
    limit = _RATIO_LIMIT[mode]
    if not 0 < ratio < limit:
        raise ValueError(f"ratio must lie in (0, {limit}) for {mode} mode, got {ratio}")

    def g(x):
        return correction_ratio(x, mode) - ratio

    hi = 1.0
    while g(hi) < 0:
        hi *= 2.0
    return bisect(g, 0.0, hi, xtol=xtol, rtol=1e-15, maxiter=500)


def coulomb_threshold_Zn(ratio, mode="paper", alpha=spectra.ALPHA):
    """Z/n at which the Coulomb correction reaches ``ratio`` (x = (alpha Z/n)^2)."""
    return math.sqrt(threshold_x(ratio, mode)) / alpha


def well_min_n(x_star, z, l=0):
    """Smallest n with z x_nl^2 >= x_star (for l = 0, z (n pi)^2 >= x_star)."""
    if l == 0:
        return max(1, math.ceil(math.sqrt(x_star / z) / math.pi - 1e-12))
    n = 1
    while z * spectra.specfun.bessel_zero(l, n) ** 2 < x_star:
        n += 1
    return n


def ho_min_n(x_star, z, l=0):
    """Smallest n >= 1 with z (2n + l - 1/2) >= x_star."""
    return max(1, math.ceil((x_star / z - l + 0.5) / 2 - 1e-12))


def coulomb_max_n(x_star, Z, alpha=spectra.ALPHA):
    """Largest principal n with (alpha Z / n)^2 >= x_star; 0 if none."""
    return math.floor(alpha * Z / math.sqrt(x_star) + 1e-12)
