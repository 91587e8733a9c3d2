"""Twisted-photon (Bessel beam) state in coordinate space.

Conventions: atomic units, photon wavenumber ``k = ALPHA * omega``. The
4-vectors are contravariant ``(A^0, A^x, A^y, A^z)``; field 3-vectors are
returned in cylindrical components ``(rho, phi, z)``. Fields use Gaussian
units, so ``E = -(1/c) dA/dt = i k A`` and, for a helicity eigenstate,
``B = curl A = helicity * k * A``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .constants import ALPHA, energy_to_wavelength, wavelength_to_energy
from .specfun import bessel_j

SQRT2 = math.sqrt(2.0)

# Constant polarization 4-vectors eta_{+1}, eta_{-1}, eta_0.
ETA = {
    +1: np.array([0.0, -1.0, -1.0j, 0.0]) / SQRT2,
    -1: np.array([0.0, 1.0, -1.0j, 0.0]) / SQRT2,
    0: np.array([0.0, 0.0, 0.0, 1.0], dtype=complex),
}


@dataclass(frozen=True)
class PhotonKinematics:
    """Energy (Hartree), pitch angle (rad), total AM projection and helicity."""

    omega: float
    pitch_angle: float
    m_gamma: int
    helicity: int = 1

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError(f"photon energy must be positive, got {self.omega}")
        # pitch 0 is the plane-wave limit; kept legal for limit checks
        if not 0.0 <= self.pitch_angle < math.pi / 2:
            raise ValueError(f"pitch angle must lie in [0, pi/2), got {self.pitch_angle}")
        if self.helicity not in (1, -1):
            raise ValueError(f"helicity must be +1 or -1, got {self.helicity}")
        if int(self.m_gamma) != self.m_gamma:
            raise ValueError("m_gamma must be an integer")

    @classmethod
    def from_wavelength_nm(cls, wavelength_nm: float, pitch_angle: float, m_gamma: int, helicity: int = 1):
        return cls(wavelength_to_energy(wavelength_nm), pitch_angle, m_gamma, helicity)

    @property
    def k(self) -> float:
        return ALPHA * self.omega

    @property
    def kappa(self) -> float:
        return self.k * math.sin(self.pitch_angle)

    @property
    def k_z(self) -> float:
        return self.k * math.cos(self.pitch_angle)

    @property
    def wavelength(self) -> float:
        """Vacuum wavelength in a_0."""
        return energy_to_wavelength(self.omega)

    def replace(self, **changes) -> PhotonKinematics:
        fields = dict(omega=self.omega, pitch_angle=self.pitch_angle, m_gamma=self.m_gamma, helicity=self.helicity)
        fields.update(changes)
        return PhotonKinematics(**fields)


@dataclass(frozen=True)
class CylindricalPoint:
    """Spacetime point (rho, phi, z, t); fields may be broadcastable arrays."""

    rho: float | np.ndarray
    phi: float | np.ndarray = 0.0
    z: float | np.ndarray = 0.0
    t: float | np.ndarray = 0.0

    def __post_init__(self):
        if np.any(np.asarray(self.rho) < 0):
            raise ValueError("rho must be non-negative")


@dataclass(frozen=True)
class BeamOffset:
    """Transverse position of the beam axis relative to the nucleus."""

    b: float
    phi_b: float = 0.0

    def __post_init__(self):
        if self.b < 0:
            raise ValueError("impact parameter must be non-negative")


@dataclass
class FieldSample:
    """Complex E and B and the real Poynting vector, cylindrical components."""

    E: np.ndarray
    B: np.ndarray
    S: np.ndarray


class AngularMomentum(NamedTuple):
    spin: float
    oam: float
    total: float


def polarization_vector(kin: PhotonKinematics, phi_k):
    """Polarization 4-vector of the plane-wave component at azimuth ``phi_k``.

    Returns an array of shape ``(4,) + shape(phi_k)``.
    """
    lam = kin.helicity
    th = kin.pitch_angle
    phase = np.exp(-1j * lam * np.asarray(phi_k, dtype=float))
    eps = (
        np.multiply.outer(ETA[lam], phase) * math.cos(th / 2) ** 2
        + np.multiply.outer(ETA[-lam], 1.0 / phase) * math.sin(th / 2) ** 2
        + np.multiply.outer(ETA[0], np.ones_like(phase)) * lam / SQRT2 * math.sin(th)
    )
    return eps


def bessel_components(kin: PhotonKinematics, rho, phi) -> dict[int, np.ndarray]:
    """Coefficients of eta_Lambda, eta_0, eta_-Lambda in the beam profile.

    The common factor ``exp(-i(omega t - k_z z)) sqrt(kappa / 2 pi)`` is left
    out. Keys are the polarization labels ``lam, 0, -lam``.
    """
    lam = kin.helicity
    m = kin.m_gamma
    th = kin.pitch_angle
    x = kin.kappa * np.asarray(rho, dtype=float)
    phi = np.asarray(phi, dtype=float)
    return {
        0: lam / SQRT2 * math.sin(th) * np.exp(1j * m * phi) * bessel_j(m, x),
        lam: (1j) ** (-lam) * math.cos(th / 2) ** 2 * np.exp(1j * (m - lam) * phi) * bessel_j(m - lam, x),
        -lam: (1j) ** lam * math.sin(th / 2) ** 2 * np.exp(1j * (m + lam) * phi) * bessel_j(m + lam, x),
    }


def _common_factor(kin: PhotonKinematics, z, t):
    z = np.asarray(z, dtype=float)
    t = np.asarray(t, dtype=float)
    return np.exp(-1j * (kin.omega * t - kin.k_z * z)) * math.sqrt(kin.kappa / (2 * math.pi))


def vector_potential(kin: PhotonKinematics, x: CylindricalPoint) -> np.ndarray:
    """Twisted-photon wavefunction A^mu at ``x`` as a Bessel-mode sum.

    Returns a complex array of shape ``(4,) + broadcast shape of x``.
    """
    comps = bessel_components(kin, x.rho, x.phi)
    common = _common_factor(kin, x.z, x.t)
    total = sum(np.multiply.outer(ETA[lam], c) for lam, c in comps.items())
    return total * common


def helicity_projections(a: np.ndarray) -> dict[int, np.ndarray]:
    """Project a 4-vector field onto the orthonormal eta basis."""
    spatial = a[1:]
    return {lam: np.tensordot(np.conj(eta[1:]), spatial, axes=1) for lam, eta in ETA.items()}


def cylindrical_potential(kin: PhotonKinematics, x: CylindricalPoint) -> np.ndarray:
    """Spatial vector potential in components (A_rho, A_phi, A_z)."""
    lam = kin.helicity
    m = kin.m_gamma
    th = kin.pitch_angle
    c2, s2 = math.cos(th / 2) ** 2, math.sin(th / 2) ** 2
    arg = kin.kappa * np.asarray(x.rho, dtype=float)
    j_minus = bessel_j(m - lam, arg)
    j_plus = bessel_j(m + lam, arg)
    j_mid = bessel_j(m, arg)
    phase = np.exp(1j * m * np.asarray(x.phi, dtype=float)) * _common_factor(kin, x.z, x.t)
    a_rho = 1j / SQRT2 * (c2 * j_minus + s2 * j_plus)
    a_phi = lam / SQRT2 * (s2 * j_plus - c2 * j_minus)
    a_z = lam / SQRT2 * math.sin(th) * j_mid
    return np.array([a_rho * phase, a_phi * phase, a_z * phase])


def em_fields(kin: PhotonKinematics, x: CylindricalPoint) -> FieldSample:
    """Complex electric and magnetic fields plus the Poynting vector at ``x``.

    ``B = helicity * k * A`` and ``E = i * helicity * B``; for helicity +1
    this is ``E = iB``. The physical fields are the real parts.
    """
    a = cylindrical_potential(kin, x)
    b_field = kin.helicity * kin.k * a
    e_field = 1j * kin.helicity * b_field
    return FieldSample(E=e_field, B=b_field, S=poynting(kin, x.rho))


def poynting(kin: PhotonKinematics, rho) -> np.ndarray:
    """Poynting vector (S_rho, S_phi, S_z) of the physical fields.

    It is time independent, because E x B of the complex fields vanishes.
    """
    lam = kin.helicity
    m = kin.m_gamma
    th = kin.pitch_angle
    c2, s2 = math.cos(th / 2) ** 2, math.sin(th / 2) ** 2
    arg = kin.kappa * np.asarray(rho, dtype=float)
    j_minus = bessel_j(m - lam, arg)
    j_plus = bessel_j(m + lam, arg)
    scale = kin.kappa * kin.k**2 / (4 * math.pi)
    s_phi = scale * math.sin(th) * bessel_j(m, arg) * (c2 * j_minus + s2 * j_plus)
    s_z = scale * (c2**2 * j_minus**2 - s2**2 * j_plus**2)
    return np.array([np.zeros_like(s_z), s_phi, s_z])


def angular_momentum(kin: PhotonKinematics) -> AngularMomentum:
    """Spin, orbital and total angular-momentum projections on the beam axis.

    Raises:
        ArithmeticError: if the Bessel-moment form of the orbital part
            disagrees with its closed form (it never should).
    """
    lam = kin.helicity
    m = kin.m_gamma
    th = kin.pitch_angle
    spin = lam * math.cos(th)
    oam = m - lam * math.cos(th)
    moments = 0.5 * m * math.sin(th) ** 2 + (m - lam) * math.cos(th / 2) ** 4 + (m + lam) * math.sin(th / 2) ** 4
    if abs(moments - oam) > 8 * np.finfo(float).eps * max(1.0, abs(m)):
        raise ArithmeticError(f"orbital identity violated: {moments!r} != {oam!r}")
    return AngularMomentum(spin, oam, spin + oam)


def shifted_point(offset: BeamOffset, x: CylindricalPoint) -> CylindricalPoint:
    """Coordinates of ``x`` about a beam axis displaced by ``offset``."""
    px = np.asarray(x.rho) * np.cos(x.phi) - offset.b * math.cos(offset.phi_b)
    py = np.asarray(x.rho) * np.sin(x.phi) - offset.b * math.sin(offset.phi_b)
    return CylindricalPoint(np.hypot(px, py), np.mod(np.arctan2(py, px), 2 * math.pi), x.z, x.t)


def translate_potential(kin: PhotonKinematics, offset: BeamOffset, x: CylindricalPoint) -> np.ndarray:
    """Vector potential of the beam whose axis sits at ``offset``.

    Cartesian components are translation invariant, so this is simply the
    centred potential evaluated at ``x - b``.
    """
    return vector_potential(kin, shifted_point(offset, x))
