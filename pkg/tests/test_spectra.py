import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import simpson

from relkin import spectra
from relkin.spectra import (
    Coulomb,
    HarmonicOscillator,
    PhysicalConstants,
    QuantumNumbers,
    Well,
    eigenvalue,
    expectation_t0,
    expectation_v,
    quadrature_expectations,
    quadrature_grid,
    radial_u,
    scales,
)

HO = HarmonicOscillator(0.04)
WELL = Well(1.0)
H = Coulomb(1)

ALL_LEVELS = [(n, l) for n in range(1, 5) for l in range(4)]


def _pots(c):
    return {"well": (WELL, scales(WELL, c)), "ho": (HO, scales(HO, c))}


def test_nucleon_well_z(nucleon):
    assert scales(WELL, nucleon).z == pytest.approx(0.04, rel=1e-15)


def test_ho_scales():
    sc = scales(HO, spectra.NUCLEON)
    assert sc.z == pytest.approx(0.04)
    assert sc.epsilon == 0.04


def test_coulomb_scales(electron):
    sc = scales(H, electron)
    assert sc.z == pytest.approx(5.3251e-5, rel=1e-4)
    assert sc.b == pytest.approx(0.0528301, rel=1e-5)


@pytest.mark.parametrize("pot", [WELL, HO, H, Coulomb(20), Well(3.7), HarmonicOscillator(0.3)])
def test_scale_invariant(pot, nucleon):
    sc = scales(pot, nucleon)
    length, energy = sc.b, sc.xi_energy
    assert length**2 == pytest.approx(nucleon.hbar_c**2 / (nucleon.mc2 * energy), rel=1e-13)


@pytest.mark.parametrize(
    "pot, n, l, expected",
    [
        (WELL, 1, 0, 0.02 * math.pi**2),
        (WELL, 2, 0, 0.08 * math.pi**2),
        (HO, 1, 0, 1.5 * 0.04),
        (HO, 2, 1, 4.5 * 0.04),
    ],
)
def test_eigenvalue_examples(pot, n, l, expected, nucleon):
    assert eigenvalue(pot, QuantumNumbers(n, l), scales(pot, nucleon)) == pytest.approx(expected, rel=1e-14)


def test_well_frozen(nucleon):
    assert eigenvalue(WELL, QuantumNumbers(1, 0), scales(WELL, nucleon)) == pytest.approx(0.197392, abs=5e-7)


def test_hydrogen_levels(electron):
    sc = scales(H, electron)
    assert eigenvalue(H, QuantumNumbers.coulomb(1, 0), sc) == pytest.approx(-13.6057, abs=5e-4)
    assert eigenvalue(H, QuantumNumbers.coulomb(2, 0), sc) == pytest.approx(-3.40142, abs=5e-5)
    assert eigenvalue(H, QuantumNumbers.coulomb(2, 1), sc) == eigenvalue(H, QuantumNumbers.coulomb(2, 0), sc)


def test_coulomb_quantum_numbers():
    qn = QuantumNumbers.coulomb(3, 1)
    assert (qn.n, qn.l, qn.principal) == (2, 1, 3)
    with pytest.raises(ValueError):
        QuantumNumbers.coulomb(2, 2)
    with pytest.raises(ValueError):
        QuantumNumbers(0, 0)
    with pytest.raises(ValueError):
        QuantumNumbers(1, -1)


def test_expectation_examples(nucleon, electron):
    qn = QuantumNumbers(1, 0)
    sc = scales(WELL, nucleon)
    assert expectation_t0(WELL, qn, sc) == pytest.approx(0.197392, abs=5e-7)
    assert expectation_v(WELL, qn, sc) == 0
    sc = scales(HO, nucleon)
    assert expectation_t0(HO, qn, sc) == pytest.approx(0.75 * 0.04)
    assert expectation_v(HO, qn, sc) == pytest.approx(0.75 * 0.04)
    sc = scales(H, electron)
    assert expectation_t0(H, QuantumNumbers.coulomb(2, 0), sc) / sc.mc2 == pytest.approx(sc.z / 8)
    assert expectation_v(H, QuantumNumbers.coulomb(1, 0), sc) == pytest.approx(-sc.z * sc.mc2)


def test_well_ground_wavefunction():
    xi = np.linspace(0, math.pi, 101)
    np.testing.assert_allclose(radial_u(WELL, QuantumNumbers(1, 0), xi), math.sqrt(2 / math.pi) * np.sin(xi), atol=1e-14)


def test_norm_constants():
    assert spectra.norm_constant(HO, QuantumNumbers(1, 0)) ** 2 == pytest.approx(4 / math.sqrt(math.pi), rel=1e-14)
    # u = N rho e^(-rho/2) with rho = 2 xi: (n-l-1)!/(n^2 (n+l)!) = 1 at the ground state
    assert spectra.norm_constant(H, QuantumNumbers(1, 0)) ** 2 == pytest.approx(1.0, rel=1e-14)
    assert spectra.norm_constant(WELL, QuantumNumbers(2, 0)) == pytest.approx(math.sqrt(2 / (2 * math.pi)), rel=1e-13)


@pytest.mark.parametrize("n, l", ALL_LEVELS)
@pytest.mark.parametrize("pot", [WELL, HO, H], ids=["well", "ho", "coulomb"])
def test_normalization(pot, n, l):
    qn = QuantumNumbers(n, l)
    xi = quadrature_grid(pot, qn)
    assert simpson(radial_u(pot, qn, xi) ** 2, x=xi) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("l", range(4))
@pytest.mark.parametrize("pot", [WELL, HO, H], ids=["well", "ho", "coulomb"])
def test_orthogonality(pot, l):
    # the well is different: each n lives on its own xi range, so compare in r/d
    qns = [QuantumNumbers(n, l) for n in range(1, 5)]
    if pot.kind == "well":
        s = np.linspace(0, 1, 8001)
        us = [radial_u(pot, qn, s * spectra.well_zero(qn)) * math.sqrt(spectra.well_zero(qn)) for qn in qns]
        x = s
    else:
        x = quadrature_grid(pot, qns[-1], 16001)
        us = [radial_u(pot, qn, x) for qn in qns]
    for i in range(4):
        for j in range(i + 1, 4):
            assert abs(simpson(us[i] * us[j], x=x)) <= 1e-7


@pytest.mark.parametrize("n, l", ALL_LEVELS)
@pytest.mark.parametrize("pot", [WELL, HO, H], ids=["well", "ho", "coulomb"])
def test_node_count(pot, n, l):
    qn = QuantumNumbers(n, l)
    xi = quadrature_grid(pot, qn)
    assert spectra.count_nodes(radial_u(pot, qn, xi)) == n - 1


def test_origin_and_wall():
    for l in range(4):
        for n in range(1, 5):
            qn = QuantumNumbers(n, l)
            assert radial_u(HO, qn, 0.0) == 0.0
            assert radial_u(H, qn, 0.0) == 0.0
            assert abs(radial_u(WELL, qn, spectra.well_zero(qn))) <= 1e-10


@pytest.mark.parametrize("n, l", ALL_LEVELS)
@pytest.mark.parametrize("kind", ["ho", "coulomb"])
def test_virial_by_quadrature(kind, n, l, nucleon, electron):
    pot, c = (HO, nucleon) if kind == "ho" else (H, electron)
    qn = QuantumNumbers(n, l)
    sc = scales(pot, c)
    q = quadrature_expectations(pot, qn, sc)
    e = eigenvalue(pot, qn, sc)
    assert q["t0_mean"] + q["v_mean"] == pytest.approx(e, rel=1e-6)
    assert expectation_t0(pot, qn, sc) + expectation_v(pot, qn, sc) == e


def test_ho_expectations_quadrature(nucleon):
    sc = scales(HO, nucleon)
    for n, l in ALL_LEVELS:
        qn = QuantumNumbers(n, l)
        q = quadrature_expectations(HO, qn, sc)
        e = eigenvalue(HO, qn, sc)
        assert q["v_mean"] == pytest.approx(e / 2, rel=1e-8)
        assert q["t0_mean"] == pytest.approx(e / 2, rel=1e-8)


def test_coulomb_potential_expectation(electron):
    sc = scales(H, electron)
    for n_p in range(1, 5):
        for l in range(n_p):
            qn = QuantumNumbers.coulomb(n_p, l)
            q = quadrature_expectations(H, qn, sc)
            assert q["v_mean"] == pytest.approx(2 * eigenvalue(H, qn, sc), rel=1e-6)


def test_well_kinetic_quadrature(nucleon):
    sc = scales(WELL, nucleon)
    for n in range(1, 4):
        for l in range(3):
            qn = QuantumNumbers(n, l)
            q = quadrature_expectations(WELL, qn, sc)
            assert q["t0_mean"] == pytest.approx(eigenvalue(WELL, qn, sc), rel=1e-6)
            assert q["v_mean"] == 0


@pytest.mark.parametrize("l", range(4))
def test_ho_equidistant(l, nucleon):
    sc = scales(HO, nucleon)
    es = [eigenvalue(HO, QuantumNumbers(n, l), sc) for n in range(1, 8)]
    np.testing.assert_allclose(np.diff(es), 2 * HO.hbar_omega, rtol=1e-13)


def test_well_extension_flag():
    assert not spectra.is_extension(WELL, QuantumNumbers(3, 0))
    assert spectra.is_extension(WELL, QuantumNumbers(1, 2))
    assert not spectra.is_extension(HO, QuantumNumbers(1, 2))


def test_well_scale_equivalence(nucleon):
    # level-dependent length b_n = d / x_nl reproduces z x^2/2 mc2
    sc = scales(WELL, nucleon)
    for n in range(1, 6):
        qn = QuantumNumbers(n, 0)
        b_n, _ = spectra.frame(WELL, qn, sc)
        assert b_n == pytest.approx(WELL.d / (n * math.pi), rel=1e-13)
        e = nucleon.hbar_c**2 / (2 * nucleon.mc2 * b_n**2)
        assert e == pytest.approx(eigenvalue(WELL, qn, sc), rel=1e-13)


def test_potentials(nucleon):
    r = np.array([0.1, 0.5, 0.9])
    np.testing.assert_array_equal(WELL.v(r, nucleon), 0.0)
    assert WELL.v(1.5, nucleon) == np.inf
    with pytest.raises(ValueError):
        WELL.dv_dr(1.0, nucleon)
    assert H.v(0.2, nucleon) == pytest.approx(-spectra.ALPHA * nucleon.hbar_c / 0.2)
    with pytest.raises(ValueError):
        H.v(0.0, nucleon)
    assert H.laplacian_v(0.3, nucleon) == 0.0


@pytest.mark.parametrize("bad", [lambda: Well(0.0), lambda: HarmonicOscillator(-1.0), lambda: Coulomb(0)])
def test_potential_validation(bad):
    with pytest.raises(ValueError):
        bad()


def test_constants_validation():
    with pytest.raises(ValueError):
        PhysicalConstants(0.0, 0.2)
    c = PhysicalConstants.in_units(510998.95, "eV", "nm")
    assert c.hbar_c == pytest.approx(197.0)
    c = PhysicalConstants.in_units(1.0, "GeV", "fm")
    assert c.hbar_c == pytest.approx(0.197)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.1, 10.0), st.floats(0.05, 5.0), st.integers(1, 6), st.integers(0, 3))
def test_well_units_invariance(d_fm, mc2_gev, n, l):
    qn = QuantumNumbers(n, l)
    gev_fm = PhysicalConstants(mc2_gev, 0.197, "GeV", "fm")
    ev_nm = PhysicalConstants(mc2_gev * 1e9, 0.197 * 1e9 * 1e-6, "eV", "nm")
    a = eigenvalue(Well(d_fm), qn, scales(Well(d_fm), gev_fm)) / mc2_gev
    b = eigenvalue(Well(d_fm * 1e-6), qn, scales(Well(d_fm * 1e-6), ev_nm)) / (mc2_gev * 1e9)
    assert a == pytest.approx(b, rel=1e-12)
