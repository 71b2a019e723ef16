"""Scalar algebra of the three kinetic-energy quantities.

``tn`` is the non-relativistic kinetic energy p0^2/2m with p0 = mv,
``t0`` the pseudo-relativistic p^2/2m with p = gamma m v (the operator in the
Schroedinger equation), and ``t`` the relativistic sqrt((mc^2)^2 + (pc)^2) - mc^2.
The operators commute, so every relation is applied to eigenvalues or
expectation values as an ordinary scalar map.

Every function takes the value in the same energy unit as ``mc2`` (default 1,
i.e. values in units of the rest energy).
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

SERIES_KMAX = 30


class SeriesConvergenceWarning(RuntimeWarning):
    """Truncated series evaluated outside its radius of convergence."""


def _sqrt1p_minus_1(x):
    # sqrt(1 + x) - 1 without cancellation
    return x / (math.sqrt(1.0 + x) + 1.0)


def _check_tn(tn, mc2):
    if tn < 0:
        raise ValueError(f"kinetic energy must be non-negative, got {tn}")
    if tn / mc2 >= 0.5:
        raise ValueError(f"tn/mc2 = {tn / mc2} >= 1/2 corresponds to v >= c")


def _check_nonneg(value):
    if value < 0:
        raise ValueError(f"kinetic energy must be non-negative, got {value}")


def t0_from_tn(tn, mc2=1.0):
    """t0 = tn / (1 - 2 tn/mc2)."""
    _check_tn(tn, mc2)
    return tn / (1.0 - 2.0 * tn / mc2)


def tn_from_t0(t0, mc2=1.0):
    """tn = t0 / (1 + 2 t0/mc2); always below mc2/2."""
    _check_nonneg(t0)
    if math.isinf(t0):
        return 0.5 * mc2
    return t0 / (1.0 + 2.0 * t0 / mc2)


def t_from_t0(t0, mc2=1.0):
    """t = mc2 (sqrt(1 + 2 t0/mc2) - 1)."""
    _check_nonneg(t0)
    return mc2 * _sqrt1p_minus_1(2.0 * t0 / mc2)


def t_from_tn(tn, mc2=1.0):
    """t = mc2 ((1 - 2 tn/mc2)^(-1/2) - 1)."""
    _check_tn(tn, mc2)
    y = 2.0 * tn / mc2
    s = math.sqrt(1.0 - y)
    # 1/s - 1 = (1 - s)/s = y / (s (1 + s))
    return mc2 * y / (s * (1.0 + s))


def t0_from_t(t, mc2=1.0):
    """Inverse of :func:`t_from_t0`: t0 = ((1 + t/mc2)^2 - 1) mc2/2."""
    _check_nonneg(t)
    y = t / mc2
    return mc2 * y * (2.0 + y) / 2.0


def tn_from_t(t, mc2=1.0):
    return tn_from_t0(t0_from_t(t, mc2), mc2)


def lorentz_gamma(tn, mc2=1.0):
    """Lorentz factor (1 - 2 tn/mc2)^(-1/2), since (p0/mc)^2 = 2 tn/mc2."""
    _check_tn(tn, mc2)
    return 1.0 / math.sqrt(1.0 - 2.0 * tn / mc2)


@lru_cache(maxsize=None)
def series_coefficient(k):
    """Exact coefficient (-1)^k binom(2k, k) / (2^k (k+1)) of (t0/mc2)^k in t/t0."""
    if int(k) != k or k < 0:
        raise ValueError(f"series order must be a non-negative integer, got {k}")
    if k > SERIES_KMAX:
        raise OverflowError(f"series coefficients are tabulated up to k = {SERIES_KMAX}")
    k = int(k)
    return Fraction((-1) ** k * math.comb(2 * k, k), 2**k * (k + 1))


def _warn_radius(t0, mc2):
    if t0 / mc2 >= 0.5:
        warnings.warn(
            f"t0/mc2 = {t0 / mc2:.6g} is outside the convergence radius 1/2",
            SeriesConvergenceWarning,
            stacklevel=3,
        )


def t_series_truncated(t0, order, mc2=1.0):
    """Partial sum of t = t0 sum_k c_k (t0/mc2)^k through ``order``."""
    _check_nonneg(t0)
    _warn_radius(t0, mc2)
    y = t0 / mc2
    return t0 * sum(float(series_coefficient(k)) * y**k for k in range(order + 1))


def tn_series_truncated(t0, order, mc2=1.0):
    """Partial sum of the geometric series tn = t0 sum_k (-2 t0/mc2)^k."""
    _check_nonneg(t0)
    _warn_radius(t0, mc2)
    q = -2.0 * t0 / mc2
    return t0 * sum(q**k for k in range(order + 1))


class Kind(enum.Enum):
    NON_RELATIVISTIC = "tn"
    PSEUDO_RELATIVISTIC = "t0"
    RELATIVISTIC = "t"


_TO_T0 = {
    Kind.NON_RELATIVISTIC: t0_from_tn,
    Kind.PSEUDO_RELATIVISTIC: lambda v, mc2: v,
    Kind.RELATIVISTIC: t0_from_t,
}
_FROM_T0 = {
    Kind.NON_RELATIVISTIC: tn_from_t0,
    Kind.PSEUDO_RELATIVISTIC: lambda v, mc2: v,
    Kind.RELATIVISTIC: t_from_t0,
}
_DIRECT = {
    (Kind.NON_RELATIVISTIC, Kind.RELATIVISTIC): t_from_tn,
    (Kind.RELATIVISTIC, Kind.NON_RELATIVISTIC): tn_from_t,
}


def convert(value, source, target, mc2=1.0):
    """Convert a kinetic energy between kinds ("tn", "t0", "t" or :class:`Kind`)."""
    source, target = Kind(source), Kind(target)
    if (source, target) in _DIRECT:
        return _DIRECT[source, target](value, mc2)
    return _FROM_T0[target](_TO_T0[source](value, mc2), mc2)


@dataclass(frozen=True)
class KineticValue:
    """A kinetic energy of a given kind, in units of ``rest_energy``'s unit."""

    kind: Kind
    value: float
    rest_energy: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.rest_energy <= 0:
            raise ValueError("rest energy must be positive")
        _check_nonneg(self.value)
        if self.kind is Kind.NON_RELATIVISTIC:
            _check_tn(self.value, self.rest_energy)

    def to(self, kind):
        kind = Kind(kind)
        return KineticValue(kind, convert(self.value, self.kind, kind, self.rest_energy), self.rest_energy)

    @property
    def gamma(self):
        return lorentz_gamma(self.to(Kind.NON_RELATIVISTIC).value, self.rest_energy)

    @property
    def momentum_c(self):
        """pc = sqrt(2 mc2 t0), the relativistic momentum times c."""
        return math.sqrt(2.0 * self.rest_energy * self.to(Kind.PSEUDO_RELATIVISTIC).value)

    @property
    def momentum0_c(self):
        """p0 c = sqrt(2 mc2 tn), the non-relativistic momentum mv times c."""
        return math.sqrt(2.0 * self.rest_energy * self.to(Kind.NON_RELATIVISTIC).value)
