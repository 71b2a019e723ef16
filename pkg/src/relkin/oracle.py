"""Independent numerical check of the analytic spectra.

The dimensionless radial equation

    u'' = [l(l+1)/xi^2 + 2 (w(xi) - E)] u

is integrated outward with the three-point Numerov scheme and eigenvalues
are located by node counting plus a sign change of the boundary value.
Each potential is solved in its natural fixed frame: the well in units of
its radius ``d`` (wall at xi = 1), the oscillator in units of
``sqrt(hbar/m omega)``, Coulomb in Bohr radii.  Energies come back in the
frame's energy unit ``(hbar c)^2 / (mc2 L^2)``.

Nothing here calls into :mod:`relkin.specfun`; the analytic side is only
used by :func:`verify_level` for comparison.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import simpson
from scipy.optimize import brentq

try:
    from numba import njit
except ImportError:  # pragma: no cover
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

from . import corrections, spectra

RESCALE = 1e150
DEFAULT_TOL = 1e-10


class ShootingError(RuntimeError):
    """No eigenvalue bracket could be found."""


@dataclass(frozen=True)
class RadialGrid:
    xi_min: float
    xi_max: float
    points: int

    def __post_init__(self):
        if self.xi_min < 0 or self.xi_max <= self.xi_min:
            raise ValueError("need 0 <= xi_min < xi_max")
        if self.points < 5 or self.points % 2 == 0:
            raise ValueError("grid needs an odd number of points (at least 5) for Simpson's rule")

    @property
    def h(self):
        return (self.xi_max - self.xi_min) / (self.points - 1)

    @property
    def xi(self):
        return np.linspace(self.xi_min, self.xi_max, self.points)


@dataclass
class SampledRadialFunction:
    grid: RadialGrid
    values: np.ndarray
    norm: float = 1.0

    def normalized(self):
        nrm = quad_norm(self)
        vals = self.values / math.sqrt(nrm)
        # fix the overall sign so the first lobe is positive
        nz = vals[np.abs(vals) > 1e-12 * np.max(np.abs(vals))]
        if nz.size and nz[0] < 0:
            vals = -vals
        return SampledRadialFunction(self.grid, vals, 1.0)


@dataclass(frozen=True)
class ReducedProblem:
    """Radial problem in a fixed dimensionless frame.

    ``coulomb`` is the strength c of a -c/xi term (1 for Coulomb, else 0);
    ``harmonic`` the coefficient of xi^2/2.  ``wall`` marks a hard wall at
    ``xi_max`` (infinite well).
    """

    kind: str
    length: float
    energy: float
    coulomb: float = 0.0
    harmonic: float = 0.0
    wall: bool = False

    def w(self, xi):
        xi = np.asarray(xi, dtype=float)
        out = 0.5 * self.harmonic * xi**2
        if self.coulomb:
            with np.errstate(divide="ignore"):
                out = out - self.coulomb / xi
        return out


def reduced_problem(pot, sc):
    if pot.kind == "well":
        # length d, energy (hbar c)^2/(mc2 d^2) = z mc2
        return ReducedProblem("well", sc.b / math.sqrt(sc.z), sc.z * sc.mc2, wall=True)
    if pot.kind == "ho":
        return ReducedProblem("ho", sc.b, sc.epsilon, harmonic=1.0)
    if pot.kind == "coulomb":
        return ReducedProblem("coulomb", sc.b, sc.z * sc.mc2, coulomb=1.0)
    raise TypeError(f"unknown potential {pot!r}")


def default_grid(prob, n, l, points=spectra.DEFAULT_POINTS):
    if prob.wall:
        return RadialGrid(0.0, 1.0, points)
    if prob.harmonic:
        return RadialGrid(0.0, math.sqrt(2 * (2 * n + l)) + 8.0, points)
    n_p = n + l
    return RadialGrid(0.0, max(20.0 * n_p, n_p * (n_p + 30.0)), points)


@njit(cache=True, nogil=True)
def _numerov(base, energy, h, u1, upp0, out):
    """March u'' = (base - 2E) u from u_0 = 0.  Returns the node count.

    ``upp0`` is u''(0) (the limit of g u at the origin), ``out`` receives
    the solution.
    """
    npts = base.shape[0]
    c = h * h / 12.0
    out[0] = 0.0
    out[1] = u1
    g_prev_u = upp0  # g_0 u_0 as a limit
    g_cur = base[1] - 2.0 * energy
    nodes = 0
    last_sign = 1.0 if u1 > 0 else -1.0
    for i in range(1, npts - 1):
        g_next = base[i + 1] - 2.0 * energy
        # (1 - c g_{i+1}) u_{i+1} = 2 (1 + 5 c g_i) u_i - (u_{i-1} - c g_{i-1} u_{i-1})
        rhs = 2.0 * (1.0 + 5.0 * c * g_cur) * out[i] - (out[i - 1] - c * g_prev_u)
        out[i + 1] = rhs / (1.0 - c * g_next)
        if out[i + 1] != 0.0:
            sign = 1.0 if out[i + 1] > 0.0 else -1.0
            if sign != last_sign:
                nodes += 1
                last_sign = sign
        g_prev_u = g_cur * out[i]
        g_cur = g_next
        if abs(out[i + 1]) > RESCALE:
            for k in range(i + 2):
                out[k] /= RESCALE
            g_prev_u /= RESCALE
    return nodes


class _Shooter:
    """Numerov integration for one (problem, l, grid), reusing buffers."""

    def __init__(self, prob, l, grid):
        self.prob, self.l, self.grid = prob, l, grid
        xi = grid.xi
        if xi[0] != 0.0:
            raise ValueError("shooting starts at the origin; use xi_min = 0")
        self.h = grid.h
        base = np.zeros_like(xi)
        base[1:] = l * (l + 1) / xi[1:] ** 2 + 2.0 * prob.w(xi[1:])
        self.base = base
        self.out = np.empty_like(xi)
        self.w0 = 0.0  # regular part of w at the origin is 0 for all three problems

    def _start(self, energy):
        # Frobenius series u = xi^(l+1) (1 + a1 xi + a2 xi^2 + ...)
        l, h, cst = self.l, self.h, self.prob.coulomb
        a1 = -cst / (l + 1)
        a2 = (2 * cst * cst / (l + 1) + 2 * (self.w0 - energy)) / (4 * l + 6)
        u1 = h ** (l + 1) * (1 + a1 * h + a2 * h * h)
        upp0 = {0: 2 * a1, 1: 2.0}.get(l, 0.0)
        return u1, upp0

    def run(self, energy):
        u1, upp0 = self._start(energy)
        nodes = _numerov(self.base, energy, self.h, u1, upp0, self.out)
        return nodes, self.out[-1]

    def lower_bound(self):
        return float(np.min(self.base[1:])) / 2.0


def numerov_solve(prob, l, energy, grid, match_tail=False):
    """Numerov solution at trial energy ``energy`` (frame units), unnormalized.

    Outward integration alone is fine inside the wall or the classically
    allowed region.  Past the outer turning point any error in ``energy``
    feeds the growing solution, so with ``match_tail`` the tail is replaced
    by an inward integration from ``xi_max`` (u = 0 there) scaled to agree
    at the turning point.
    """
    sh = _Shooter(prob, l, grid)
    sh.run(energy)
    values = sh.out.copy()
    if match_tail and not prob.wall:
        allowed = np.nonzero(sh.base[1:] - 2.0 * energy < 0)[0]
        if allowed.size and allowed[-1] + 1 < grid.points - 2:
            m = allowed[-1] + 1
            inward = np.empty_like(values)
            _numerov(sh.base[::-1].copy(), energy, sh.h, 1.0, 0.0, inward)
            inward = inward[::-1]
            values[m:] = inward[m:] * (values[m] / inward[m])
    return SampledRadialFunction(grid, values, norm=math.nan)


def eigenvalue_shoot(prob, n, l, grid, tol=DEFAULT_TOL, max_doublings=200):
    """n-th eigenvalue (n - 1 interior nodes) for angular momentum l, in frame units.

    A node-count bisection brackets the eigenvalue between energies with
    n - 1 and n nodes; Brent's method then zeroes the boundary value.
    """
    if tol < 1e-14:
        raise ValueError("tol below 1e-14 is not meaningful in double precision")
    sh = _Shooter(prob, l, grid)
    lo = sh.lower_bound()
    hi = lo + 1.0
    scan = []
    for _ in range(max_doublings):
        nodes, _ = sh.run(hi)
        scan.append((hi, nodes))
        if nodes >= n:
            break
        hi = lo + 2.0 * (hi - lo)
    else:
        raise ShootingError(f"no bracket for n={n}, l={l}; scan (E, nodes): {scan[-5:]}")
    lo_nodes = sh.run(lo)[0]
    if lo_nodes >= n:
        raise ShootingError(f"lower bound {lo} already has {lo_nodes} nodes")
    hi_nodes = nodes
    for _ in range(400):
        if lo_nodes == n - 1 and hi_nodes == n:
            break
        mid = 0.5 * (lo + hi)
        m_nodes = sh.run(mid)[0]
        if m_nodes >= n:
            hi, hi_nodes = mid, m_nodes
        else:
            lo, lo_nodes = mid, m_nodes
    else:  # pragma: no cover
        raise ShootingError(f"node bisection did not isolate level n={n}, l={l}")
    return brentq(lambda e: sh.run(e)[1], lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps)


def _check_same_grid(f, g):
    if f.grid != g.grid:
        raise ValueError("functions are sampled on different grids")


def quad_norm(f):
    return float(simpson(f.values**2, x=f.grid.xi))


def quad_overlap(f, g):
    _check_same_grid(f, g)
    return float(simpson(f.values * g.values, x=f.grid.xi))


def quad_expectation(f, weight):
    """Integral of u^2 * weight(xi); ``weight`` is a callable or an array on the grid."""
    xi = f.grid.xi
    w = weight(xi) if callable(weight) else np.asarray(weight, dtype=float)
    if w.shape != xi.shape:
        raise ValueError("weight does not match the grid")
    return float(simpson(f.values**2 * w, x=xi))


def kinetic_expectation(f, l, energy, potential_mean):
    """<t0>/unit by the e - <v> identity and by a finite-difference stencil.

    Returns ``(primary, stencil)``.
    """
    xi, h, u = f.grid.xi, f.grid.h, f.values
    d2 = np.zeros_like(u)
    d2[1:-1] = (u[2:] - 2 * u[1:-1] + u[:-2]) / (h * h)
    cent = np.zeros_like(u)
    cent[1:] = l * (l + 1) / xi[1:] ** 2
    integrand = u * (d2 - cent * u)
    integrand[0] = integrand[-1] = 0.0
    stencil = -0.5 * float(simpson(integrand, x=xi))
    return energy - potential_mean, stencil


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tolerance: float
    passed: bool


@dataclass
class VerificationReport:
    kind: str
    n: int
    l: int
    e_analytic: float
    e_numeric: float
    nodes: int
    norm: float
    t0_mean: float
    v_mean: float
    delta_h: float
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)


def _check(name, value, tol):
    return Check(name, float(value), tol, bool(np.isfinite(value) and value <= tol))


def verify_level(pot, qn, sc, points=spectra.DEFAULT_POINTS, eig_rtol=1e-6, norm_tol=1e-8, tol=DEFAULT_TOL):
    """Compare one analytic level against the Numerov oracle.

    Failures are recorded as failed checks, never raised.
    """
    prob = reduced_problem(pot, sc)
    grid = default_grid(prob, qn.n, qn.l, points)
    e_an = spectra.eigenvalue(pot, qn, sc)
    try:
        e_num = eigenvalue_shoot(prob, qn.n, qn.l, grid, tol) * prob.energy
    except (ShootingError, ValueError) as exc:
        report = VerificationReport(pot.kind, qn.n, qn.l, e_an, math.nan, -1, math.nan,
                                    math.nan, math.nan, math.nan)
        report.checks.append(Check(f"shooting: {exc}", math.nan, eig_rtol, False))
        return report
    sol = numerov_solve(prob, qn.l, e_num / prob.energy, grid, match_tail=True).normalized()
    nodes = spectra.count_nodes(sol.values)

    # analytic u mapped onto the oracle grid
    length, _ = spectra.frame(pot, qn, sc)
    s = prob.length / length
    u_an = math.sqrt(s) * spectra.radial_u(pot, qn, s * grid.xi)
    analytic = SampledRadialFunction(grid, u_an)

    w = np.zeros_like(grid.xi)
    w[1:] = prob.w(grid.xi[1:])
    v_mean = quad_expectation(sol, w) * prob.energy
    t0_primary, t0_stencil = kinetic_expectation(sol, qn.l, e_num / prob.energy, v_mean / prob.energy)
    t0_mean = t0_primary * prob.energy
    an_quad = spectra.quadrature_expectations(pot, qn, sc)
    t0_an = spectra.expectation_t0(pot, qn, sc)
    v_an = spectra.expectation_v(pot, qn, sc)
    scale = abs(e_an)

    report = VerificationReport(pot.kind, qn.n, qn.l, e_an, e_num, nodes, an_quad["norm"],
                                t0_mean, v_mean, corrections.delta_h(t0_mean, sc.mc2))
    report.checks += [
        _check("eigenvalue_rel_err", abs(e_num - e_an) / scale, eig_rtol),
        _check("analytic_norm_err", abs(an_quad["norm"] - 1.0), norm_tol),
        _check("node_count_err", abs(nodes - (qn.n - 1)), 0),
        _check("analytic_node_count_err", abs(spectra.count_nodes(u_an) - (qn.n - 1)), 0),
        _check("wavefunction_overlap_err", abs(1.0 - abs(quad_overlap(sol, analytic))), 1e-6),
        _check("t0_rel_err", abs(t0_mean - t0_an) / scale, 1e-6),
        _check("t0_stencil_rel_err", abs(t0_stencil * prob.energy - t0_an) / scale, 1e-4),
        _check("v_rel_err", abs(v_mean - v_an) / scale, 1e-6),
        _check("virial_rel_err", abs(an_quad["t0_mean"] + an_quad["v_mean"] - e_an) / scale, 1e-6),
    ]
    return report


def verify_levels(pot, levels, sc, workers=None, **kwargs):
    """Task-parallel :func:`verify_level` over ``levels``; results keep input order."""
    levels = list(levels)
    if workers == 1 or len(levels) <= 1:
        return [verify_level(pot, qn, sc, **kwargs) for qn in levels]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda qn: verify_level(pot, qn, sc, **kwargs), levels))
