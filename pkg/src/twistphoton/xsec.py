"""Position-averaged cross sections and twisted/plane-wave ratios.

All cross sections drop the on-shell factor 2 pi delta(E_f - E_i - omega);
the photon energy is fixed to the level spacing by the caller. Values are in
a_0^2 times that (stripped) delta function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .beam import BeamOffset, PhotonKinematics
from .constants import ALPHA
from .matelem import AtomicState, amplitude, curly_bracket, plane_wave_g
from .specfun import DEFAULT_QUAD, QuadratureSpec, bessel_j, integrate

SIGMA_PREFACTOR = 8 * math.pi**3 * ALPHA**3 / 3

FIXED_OAM = "fixed_oam"
FIXED_MGAMMA = "fixed_mgamma"


class DegenerateTransitionError(ZeroDivisionError):
    """A ratio was requested whose denominator vanishes."""


@dataclass(frozen=True)
class AveragingSpec:
    """Target disk of radius R (a_0) centred on the beam axis."""

    disk_radius: float

    def __post_init__(self):
        if not self.disk_radius > 0:
            raise ValueError("disk radius must be positive")

    def flux(self, k_z: float) -> float:
        """Incoming flux: average twisted-state density times k_z / omega."""
        return 2 * k_z / (math.pi**2 * self.disk_radius)


@dataclass(frozen=True)
class CrossSection:
    value: float
    final: AtomicState
    kin: PhotonKinematics | None = None


def averaged_sigma(final: AtomicState, kin: PhotonKinematics, quad: QuadratureSpec = DEFAULT_QUAD) -> CrossSection:
    """Cross section averaged over atom positions in an infinite target.

    Uses the large-R limit of the Bessel-squared disk integral, R / (pi
    kappa), which is the same for every order, so the result does not
    depend on m_gamma.
    """
    value = SIGMA_PREFACTOR / kin.k_z * abs(curly_bracket(final, kin, quad)) ** 2
    return CrossSection(value, final, kin)


def disk_averaged_sigma(
    final: AtomicState,
    kin: PhotonKinematics,
    disk: AveragingSpec,
    quad: QuadratureSpec = DEFAULT_QUAD,
) -> CrossSection:
    """Finite-disk version of :func:`averaged_sigma` with the b-integral done numerically."""
    if kin.kappa == 0.0:
        raise ValueError("finite-disk averaging needs a nonzero pitch angle")
    order = final.m - kin.m_gamma
    radius = disk.disk_radius
    b_integral = integrate(lambda b: b * bessel_j(order, kin.kappa * b) ** 2, 0.0, radius, quad).value
    coupling = 8 * math.pi**2 * ALPHA**3 * kin.kappa / 3
    mean = coupling * 2 * math.pi * b_integral / (math.pi * radius**2)
    value = mean * abs(curly_bracket(final, kin, quad)) ** 2 / disk.flux(kin.k_z)
    return CrossSection(value, final, kin)


def plane_wave_sigma(
    final: AtomicState,
    helicity: int,
    omega: float,
    quad: QuadratureSpec = DEFAULT_QUAD,
) -> CrossSection:
    """Plane-wave cross section; zero unless m_f equals the helicity."""
    g = plane_wave_g(final, helicity, omega, quad)
    return CrossSection(SIGMA_PREFACTOR / (ALPHA * omega) * abs(g) ** 2, final)


def _sigmas(n_f: int, l_f: int, kin: PhotonKinematics, quad: QuadratureSpec) -> dict[int, float]:
    return {m: averaged_sigma(AtomicState(n_f, l_f, m), kin, quad).value for m in range(-l_f, l_f + 1)}


def f_twisted(n_f: int, l_f: int, kin: PhotonKinematics, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Share of the averaged rate into m_f != helicity, i.e. out of plane-wave reach."""
    if l_f < 1:
        raise ValueError("f_twisted needs l_f >= 1")
    sigmas = _sigmas(n_f, l_f, kin, quad)
    total = sum(sigmas.values())
    if total == 0.0:
        raise DegenerateTransitionError(f"no excitation strength into ({n_f}, {l_f})")
    return (total - sigmas[kin.helicity]) / total


def r_twisted(n_f: int, l_f: int, kin: PhotonKinematics, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Total averaged twisted rate over the plane-wave rate for the same level."""
    if l_f < 1:
        raise ValueError("r_twisted needs l_f >= 1")
    total = sum(_sigmas(n_f, l_f, kin, quad).values())
    plane = plane_wave_sigma(AtomicState(n_f, l_f, kin.helicity), kin.helicity, kin.omega, quad).value
    if plane == 0.0:
        raise DegenerateTransitionError(f"plane-wave rate into ({n_f}, {l_f}) vanishes")
    return total / plane


def _partner(kin: PhotonKinematics, mode: str) -> PhotonKinematics:
    """Beam with opposite helicity, holding m_gamma or the orbital part fixed."""
    if mode == FIXED_MGAMMA:
        return kin.replace(helicity=-kin.helicity)
    if mode == FIXED_OAM:
        orbital = kin.m_gamma - kin.helicity
        return kin.replace(helicity=-kin.helicity, m_gamma=orbital - kin.helicity)
    raise ValueError(f"unknown asymmetry mode {mode!r}")


def _rate(n_f, l_f, kin, b, quad):
    if b is None:
        return sum(_sigmas(n_f, l_f, kin, quad).values())
    offset = BeamOffset(b)
    return sum(abs(amplitude(AtomicState(n_f, l_f, m), kin, offset, quad).value) ** 2 for m in range(-l_f, l_f + 1))


def helicity_asymmetry(
    n_f: int,
    l_f: int,
    kin: PhotonKinematics,
    b: float | None = None,
    quad: QuadratureSpec = DEFAULT_QUAD,
    mode: str = FIXED_OAM,
) -> float:
    """(P_+ - P_-) / (P_+ + P_-) summed over m_f for opposite helicities.

    ``kin`` is the +Lambda beam. ``b=None`` compares position-averaged cross
    sections; a number compares |amplitude|^2 at that impact parameter.
    ``mode`` picks what the partner beam keeps: ``"fixed_oam"`` keeps
    m_gamma - Lambda, ``"fixed_mgamma"`` keeps m_gamma.
    """
    partner = _partner(kin, mode)
    p_plus = _rate(n_f, l_f, kin, b, quad)
    p_minus = _rate(n_f, l_f, partner, b, quad)
    if p_plus + p_minus == 0.0:
        raise DegenerateTransitionError("both helicity rates vanish")
    return (p_plus - p_minus) / (p_plus + p_minus)
