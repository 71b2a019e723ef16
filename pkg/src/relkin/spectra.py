"""Analytic bound-state spectra of the three model potentials.

Radial functions ``u_nl = r R_nl`` are evaluated in a dimensionless radius
``xi = r / b`` where the length unit depends on the potential:

* infinite well: ``b_n = d / x_nl`` with ``x_nl`` the n-th zero of ``j_l``,
  so ``u = N xi j_l(xi)`` on ``[0, x_nl]``;
* harmonic oscillator: ``b = sqrt(hbar / m omega)``;
* Coulomb: the Bohr radius ``a = hbar c / (alpha Z mc2)``.

Coulomb quantum numbers: ``QuantumNumbers.n`` is always the radial label
(``n - 1`` interior nodes).  The principal number used in the energy formula
is ``n_p = n + l``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from . import specfun

ALPHA = 1 / 137.036
ELECTRON_MC2_EV = 510998.95
# hbar c = 0.197 GeV fm = 0.197 keV nm = 1.97e-7 eV m
HBAR_C_EV_M = 1.97e-7

ENERGY_UNITS = {"eV": 1.0, "keV": 1e3, "MeV": 1e6, "GeV": 1e9}
LENGTH_UNITS = {"m": 1.0, "nm": 1e-9, "pm": 1e-12, "fm": 1e-15}

DEFAULT_POINTS = 4001


@dataclass(frozen=True)
class PhysicalConstants:
    mc2: float
    hbar_c: float
    energy_unit: str = "GeV"
    length_unit: str = "fm"

    def __post_init__(self):
        if self.mc2 <= 0 or self.hbar_c <= 0:
            raise ValueError("mc2 and hbar_c must be strictly positive")

    @classmethod
    def in_units(cls, mc2, energy_unit="GeV", length_unit="fm", hbar_c=None):
        """Constants with ``hbar_c`` defaulting to 0.197 GeV fm expressed in the given units."""
        if hbar_c is None:
            hbar_c = HBAR_C_EV_M / (ENERGY_UNITS[energy_unit] * LENGTH_UNITS[length_unit])
        return cls(mc2, hbar_c, energy_unit, length_unit)


NUCLEON = PhysicalConstants(1.0, 0.197, "GeV", "fm")
ELECTRON = PhysicalConstants(ELECTRON_MC2_EV, 197.0, "eV", "nm")


@dataclass(frozen=True)
class Well:
    """Infinite spherical well of radius ``d``."""

    d: float
    kind = "well"

    def __post_init__(self):
        if self.d <= 0:
            raise ValueError("well radius must be positive")

    def v(self, r, c):
        r = np.asarray(r, dtype=float)
        return np.where(r <= self.d, 0.0, np.inf)

    def dv_dr(self, r, c):
        self._interior(r)
        return np.zeros_like(np.asarray(r, dtype=float))

    def laplacian_v(self, r, c):
        self._interior(r)
        return np.zeros_like(np.asarray(r, dtype=float))

    def _interior(self, r):
        if np.any(np.asarray(r) >= self.d):
            raise ValueError("well potential is not differentiable at or beyond the wall")


@dataclass(frozen=True)
class HarmonicOscillator:
    """v(r) = m omega^2 r^2 / 2, parametrized by ``hbar_omega``."""

    hbar_omega: float
    kind = "ho"

    def __post_init__(self):
        if self.hbar_omega <= 0:
            raise ValueError("hbar_omega must be positive")

    def _m_omega2(self, c):
        # m omega^2 = mc2 (hbar omega)^2 / (hbar c)^2
        return c.mc2 * self.hbar_omega**2 / c.hbar_c**2

    def v(self, r, c):
        return 0.5 * self._m_omega2(c) * np.asarray(r, dtype=float) ** 2

    def dv_dr(self, r, c):
        return self._m_omega2(c) * np.asarray(r, dtype=float)

    def laplacian_v(self, r, c):
        return np.full_like(np.asarray(r, dtype=float), 3.0 * self._m_omega2(c))


@dataclass(frozen=True)
class Coulomb:
    """v(r) = -alpha Z hbar c / r."""

    Z: int
    alpha: float = ALPHA
    kind = "coulomb"

    def __post_init__(self):
        if int(self.Z) != self.Z or self.Z < 1:
            raise ValueError("Z must be a positive integer")
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must lie in (0, 1)")

    def _origin(self, r):
        r = np.asarray(r, dtype=float)
        if np.any(r <= 0):
            raise ValueError("Coulomb potential is singular at r = 0")
        return r

    def v(self, r, c):
        return -self.alpha * self.Z * c.hbar_c / self._origin(r)

    def dv_dr(self, r, c):
        return self.alpha * self.Z * c.hbar_c / self._origin(r) ** 2

    def laplacian_v(self, r, c):
        # harmonic away from the origin; the contact term at r = 0 is not modelled
        return np.zeros_like(self._origin(r))


@dataclass(frozen=True)
class ModelScales:
    """Energy scale ``epsilon``, length scale ``b`` and relativity parameter ``z``.

    ``xi_energy`` is the energy unit that makes the radial equation in
    ``xi = r / b`` free of constants, ``(hbar c)^2 / (mc2 b^2)``.  It equals
    ``epsilon`` for the well and the oscillator, and ``z mc2`` for Coulomb.
    """

    epsilon: float
    b: float
    z: float
    mc2: float
    xi_energy: float


def scales(pot, c):
    if pot.kind == "well":
        z = (c.hbar_c / (pot.d * c.mc2)) ** 2
        b = c.hbar_c / c.mc2
        return ModelScales(c.mc2, b, z, c.mc2, c.mc2)
    if pot.kind == "ho":
        z = pot.hbar_omega / c.mc2
        b = c.hbar_c / math.sqrt(c.mc2 * pot.hbar_omega)
        return ModelScales(pot.hbar_omega, b, z, c.mc2, pot.hbar_omega)
    if pot.kind == "coulomb":
        z = (pot.alpha * pot.Z) ** 2
        a = c.hbar_c / (pot.alpha * pot.Z * c.mc2)
        return ModelScales(c.mc2, a, z, c.mc2, z * c.mc2)
    raise TypeError(f"unknown potential {pot!r}")


@dataclass(frozen=True)
class QuantumNumbers:
    n: int
    l: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n}")
        if int(self.l) != self.l or self.l < 0:
            raise ValueError(f"l must be a non-negative integer, got {self.l}")

    @property
    def principal(self):
        """Principal number n + l used by the Coulomb formulas."""
        return self.n + self.l

    @classmethod
    def coulomb(cls, n_p, l):
        """Build from the principal number; requires l <= n_p - 1."""
        if l > n_p - 1:
            raise ValueError(f"l = {l} not allowed for principal n = {n_p}")
        return cls(n_p - l, l)


@dataclass(frozen=True)
class LevelRecord:
    qn: QuantumNumbers
    e: float
    t0_mean: float
    v_mean: float
    delta_h: float
    e_corrected: float


def _check_well_order(pot, qn):
    if pot.kind == "well" and qn.l > specfun.LMAX_BESSEL:
        raise ValueError(f"well levels supported for l <= {specfun.LMAX_BESSEL}")


def is_extension(pot, qn):
    """Well levels with l > 0 go beyond the closed l = 0 formulas."""
    return pot.kind == "well" and qn.l > 0


def well_zero(qn):
    return specfun.bessel_zero(qn.l, qn.n)


def eigenvalue(pot, qn, sc):
    """Bound-state energy e_nl in absolute units."""
    _check_well_order(pot, qn)
    if pot.kind == "well":
        return sc.z * well_zero(qn) ** 2 / 2 * sc.mc2
    if pot.kind == "ho":
        return sc.epsilon * (2 * qn.n + qn.l - 0.5)
    if pot.kind == "coulomb":
        return -sc.z * sc.mc2 / (2 * qn.principal**2)
    raise TypeError(f"unknown potential {pot!r}")


def expectation_t0(pot, qn, sc):
    e = eigenvalue(pot, qn, sc)
    return {"well": e, "ho": e / 2, "coulomb": -e}[pot.kind]


def expectation_v(pot, qn, sc):
    e = eigenvalue(pot, qn, sc)
    return {"well": 0.0, "ho": e / 2, "coulomb": 2 * e}[pot.kind]


def frame(pot, qn, sc):
    """(length unit, energy unit) of the xi variable used by :func:`radial_u`.

    The energy unit is always (hbar c)^2 / (mc2 length^2).
    """
    if pot.kind == "well":
        x = well_zero(qn)
        # b_n = d / x_nl with d = (hbar c/mc2)/sqrt(z)
        return sc.b / (math.sqrt(sc.z) * x), sc.z * x * x * sc.mc2
    return sc.b, sc.xi_energy


def reduced_potential(pot, xi):
    """v(b xi) in units of the frame energy, for xi > 0 (inside the wall for the well)."""
    xi = np.asarray(xi, dtype=float)
    if pot.kind == "well":
        return np.zeros_like(xi)
    if pot.kind == "ho":
        return 0.5 * xi**2
    with np.errstate(divide="ignore"):
        return -1.0 / xi


def norm_constant(pot, qn):
    n, l = qn.n, qn.l
    if pot.kind == "well":
        x = well_zero(qn)
        # int_0^x xi^2 j_l^2 = x^3 j_{l+1}(x)^2 / 2 when j_l(x) = 0
        return math.sqrt(2.0 / (x**3 * specfun.spherical_bessel_j(l + 1, x) ** 2))
    if pot.kind == "ho":
        log_n2 = (
            (n + l + 1) * math.log(2.0)
            + math.lgamma(n)
            - 0.5 * math.log(math.pi)
            - specfun.log_double_factorial(2 * (n + l) - 1)
        )
        return math.exp(0.5 * log_n2)
    n_p = qn.principal
    log_n2 = math.lgamma(n_p - l) - 2 * math.log(n_p) - math.lgamma(n_p + l + 1)
    return math.exp(0.5 * log_n2)


def radial_u(pot, qn, xi):
    """Normalized reduced radial function u_nl(xi) in the frame of :func:`frame`."""
    _check_well_order(pot, qn)
    scalar = np.ndim(xi) == 0
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    if np.any(xi < 0):
        raise ValueError("xi must be non-negative")
    nn = norm_constant(pot, qn)
    n, l = qn.n, qn.l
    if pot.kind == "well":
        x = well_zero(qn)
        inside = xi <= x
        u = np.zeros_like(xi)
        u[inside] = nn * xi[inside] * specfun.spherical_bessel_j(l, xi[inside])
    elif pot.kind == "ho":
        u = nn * xi ** (l + 1) * np.exp(-(xi**2) / 2) * specfun.generalized_laguerre(n - 1, l + 0.5, xi**2)
    else:
        n_p = qn.principal
        rho = 2 * xi / n_p
        u = nn * rho ** (l + 1) * np.exp(-rho / 2) * specfun.generalized_laguerre(n - 1, 2 * l + 1, rho)
    return float(u[0]) if scalar else u


def xi_max(pot, qn):
    """Upper end of the quadrature domain in the frame of :func:`radial_u`."""
    if pot.kind == "well":
        return well_zero(qn)
    if pot.kind == "ho":
        return math.sqrt(2 * (2 * qn.n + qn.l)) + 8.0
    n_p = qn.principal
    # u^2 ~ rho^(2 n_p) e^(-rho): cut at rho = 2 n_p + 60
    return max(20.0 * n_p, n_p * (n_p + 30.0))


def quadrature_grid(pot, qn, points=None):
    if points is None:
        points = DEFAULT_POINTS
        if pot.kind == "coulomb":
            # keep the step at or below 0.01 Bohr radii
            points = max(points, 2 * math.ceil(xi_max(pot, qn) / 0.02) + 1)
    if points % 2 == 0:
        points += 1
    return np.linspace(0.0, xi_max(pot, qn), points)


def _second_derivative(u, h):
    d2 = np.zeros_like(u)
    d2[2:-2] = (-u[4:] + 16 * u[3:-1] - 30 * u[2:-2] + 16 * u[1:-3] - u[:-4]) / (12 * h * h)
    d2[1] = (u[2] - 2 * u[1] + u[0]) / (h * h)
    d2[-2] = (u[-1] - 2 * u[-2] + u[-3]) / (h * h)
    return d2


def quadrature_expectations(pot, qn, sc, points=None):
    """Norm, <t0> and <v> of the analytic u_nl by Simpson quadrature.

    <t0> uses a fourth-order stencil for d^2u/dxi^2 so it is independent of
    the eigenvalue; <v> integrates u^2 v directly.
    """
    xi = quadrature_grid(pot, qn, points)
    h = xi[1] - xi[0]
    u = radial_u(pot, qn, xi)
    length, energy = frame(pot, qn, sc)
    centrifugal = np.zeros_like(xi)
    centrifugal[1:] = qn.l * (qn.l + 1) / xi[1:] ** 2
    integrand = u * (_second_derivative(u, h) - centrifugal * u)
    integrand[0] = integrand[-1] = 0.0
    t0 = -0.5 * energy * simpson(integrand, x=xi)
    w = np.zeros_like(xi)
    w[1:] = reduced_potential(pot, xi[1:])
    v = energy * simpson(u * u * w, x=xi)
    return {"norm": simpson(u * u, x=xi), "t0_mean": t0, "v_mean": v}


def count_nodes(values):
    """Interior sign changes, ignoring exact zeros at the ends."""
    values = np.asarray(values, dtype=float)
    inner = values[1:-1]
    signs = np.sign(inner[np.abs(inner) > 0])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))
