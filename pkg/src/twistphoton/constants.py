"""Physical constants in Hartree atomic units (hbar = m_e = e = a_0 = 1)."""

import math

#: Fine-structure constant; photon wavenumber is ALPHA * energy in a.u.
ALPHA = 1.0 / 137.035999

#: Bohr radius in nanometres.
BOHR_NM = 0.0529177210903

HARTREE_EV = 27.211386245988

#: Y_00, the constant spherical harmonic.
Y00 = 1.0 / math.sqrt(4.0 * math.pi)


def wavelength_to_energy(wavelength_nm: float) -> float:
    """Photon energy in Hartree for a vacuum wavelength given in nm."""
    if not wavelength_nm > 0:
        raise ValueError(f"wavelength must be positive, got {wavelength_nm}")
    k = 2.0 * math.pi / (wavelength_nm / BOHR_NM)
    return k / ALPHA


def energy_to_wavelength(omega: float) -> float:
    """Vacuum wavelength in a_0 of a photon with energy ``omega`` Hartree."""
    return 2.0 * math.pi / (ALPHA * omega)
