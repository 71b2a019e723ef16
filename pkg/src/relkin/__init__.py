"""Relativistic kinetic-energy corrections for model bound-state spectra.

Three kinetic-energy quantities (non-relativistic ``tn``, pseudo-relativistic
``t0`` and relativistic ``t``) are related by scalar maps in
:mod:`relkin.kinetic`.  The analytic spectra of the infinite spherical well,
the 3D harmonic oscillator and the hydrogen-like Coulomb problem live in
:mod:`relkin.spectra`; first-order corrections in :mod:`relkin.corrections`;
the weakly relativistic potentials in :mod:`relkin.weakrel`; and an
independent Numerov shooting solver in :mod:`relkin.oracle`.
"""

__version__ = "0.1.0"
