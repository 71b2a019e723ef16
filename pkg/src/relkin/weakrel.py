"""Weakly relativistic correction potentials from the reduced Dirac equation.

    v_T = -(e - v(r))^2 / (2 mc2)
    v_S = 1/2 (hbar c / mc2)^2 (s.l) (1/r) dv/dr
    v_D = 1/8 (hbar c / mc2)^2 Laplacian v(r)

``v_T`` depends on the level through its own eigenvalue ``e``.  The spin-orbit
prefactor is kept exactly as 1/2; the Thomas-precession form used in many
textbooks differs by a factor of two.  The Coulomb Darwin term is a contact
term at the origin and is not modelled: ``v_D`` vanishes for r > 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import simpson

from . import spectra

# the approximation needs |e - v| << 2 mc2; flag levels where it exceeds this fraction
VALIDITY_LIMIT = 0.1


@dataclass(frozen=True)
class SpinConfig:
    """Spin-1/2 particle with orbital l coupled to total j = l +/- 1/2."""

    l: int
    j: float
    s: float = field(default=0.5, init=False)

    def __post_init__(self):
        if self.j < 0.5 or abs(self.j - self.l) != 0.5:
            raise ValueError(f"j = {self.j} is not l +/- 1/2 for l = {self.l}")

    @property
    def so_eigenvalue(self):
        """Eigenvalue of s.l = [j(j+1) - l(l+1) - s(s+1)] / 2."""
        return (self.j * (self.j + 1) - self.l * (self.l + 1) - self.s * (self.s + 1)) / 2


def _compton2(c):
    return (c.hbar_c / c.mc2) ** 2


def v_T(r, e, pot, c):
    if pot.kind == "well" and np.any(np.asarray(r) > pot.d):
        raise ValueError("v_T is undefined outside the well")
    v = pot.v(r, c)
    return -((e - v) ** 2) / (2 * c.mc2)


def v_S(r, pot, spin, c):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("spin-orbit potential needs r > 0")
    return 0.5 * _compton2(c) * spin.so_eigenvalue * pot.dv_dr(r, c) / r


def v_D(r, pot, c):
    r = np.asarray(r, dtype=float)
    if pot.kind == "coulomb" and np.any(r <= 0):
        raise ValueError("Coulomb Darwin contact term at r = 0 is not supported")
    return 0.125 * _compton2(c) * pot.laplacian_v(r, c)


@dataclass(frozen=True)
class WeakRelExpectation:
    v_T: float
    v_S: float
    v_D: float
    valid: bool
    max_ratio: float
    notes: tuple = ()


def expectation_weakrel(pot, qn, spin, c, points=None):
    """<v_T>, <v_S>, <v_D> over the analytic level by Simpson quadrature."""
    if spin.l != qn.l:
        raise ValueError("spin configuration and level disagree on l")
    sc = spectra.scales(pot, c)
    e = spectra.eigenvalue(pot, qn, sc)
    xi = spectra.quadrature_grid(pot, qn, points)
    length, _ = spectra.frame(pot, qn, sc)
    u2 = spectra.radial_u(pot, qn, xi) ** 2
    # evaluate at xi > 0 only; the origin value is extrapolated (it is finite
    # but non-zero for Coulomb v_T at l = 0)
    r = length * xi[1:]
    if pot.kind == "well":
        r = np.minimum(r, pot.d)
    notes = []

    def integrate(values):
        f = u2[1:] * values
        f0 = 4 * f[0] - 6 * f[1] + 4 * f[2] - f[3]
        return float(simpson(np.concatenate([[f0], f]), x=xi))

    # inside the well v_T is the constant -e^2/2mc2, so this is exact up to the norm
    t_exp = integrate(v_T(r, e, pot, c))
    if qn.l == 0 or pot.kind == "well":
        s_exp = 0.0
    else:
        s_exp = integrate(v_S(r, pot, spin, c))
    d_exp = 0.0 if pot.kind == "well" else integrate(v_D(r, pot, c))
    if pot.kind == "coulomb" and qn.l == 0:
        notes.append("contact term omitted")

    with np.errstate(invalid="ignore"):
        ratios = np.abs(e - pot.v(r, c)) / (2 * c.mc2)
    max_ratio = float(np.max(ratios))
    return WeakRelExpectation(t_exp, s_exp, d_exp, max_ratio <= VALIDITY_LIMIT, max_ratio, tuple(notes))
