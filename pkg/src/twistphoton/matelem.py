"""Photoexcitation amplitudes 1s -> (n_f, l_f, m_f) for a displaced twisted photon.

Amplitudes are normalised by stripping the energy delta function and the
constant ``-(e / m_e a_0) sqrt(2 pi kappa / 3)``; what remains is
``exp(i(m_gamma - m_f) phi_b) J_{m_f - m_gamma}(kappa b) i^-Lambda {bracket}``.
The initial state is always hydrogen 1s, for which ``-R'_10 = R_10``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .beam import BeamOffset, CylindricalPoint, PhotonKinematics, translate_potential
from .constants import ALPHA, BOHR_NM
from .specfun import (
    DEFAULT_QUAD,
    ConvergenceError,
    QuadratureSpec,
    bessel_j,
    gauss_legendre,
    hydrogen_radial,
    integrate_2d,
    radial_derivative_ground,
    spherical_harmonic_phi0,
)


@dataclass(frozen=True)
class AtomicState:
    """Hydrogen bound state |n l m>.

    ``|m| > l`` is accepted so that sums over m_f can run uniformly; such
    states are unphysical and every amplitude into them is exactly zero.
    """

    n: int
    l: int
    m: int = 0

    def __post_init__(self):
        if self.n < 1 or not 0 <= self.l < self.n:
            raise ValueError(f"invalid quantum numbers ({self.n}, {self.l}, {self.m})")

    @property
    def is_physical(self) -> bool:
        return abs(self.m) <= self.l

    @property
    def energy(self) -> float:
        return -0.5 / self.n**2


GROUND = AtomicState(1, 0, 0)


@dataclass(frozen=True)
class ReducedAmplitude:
    """Reduced atomic factor g_{n_f l_f m_f lambda} and how it was obtained."""

    value: complex
    n_f: int
    l_f: int
    m_f: int
    lam: int
    quad: QuadratureSpec
    nodes: int = 0
    error: float = 0.0

    @property
    def is_real_or_imaginary(self) -> bool:
        v = self.value
        return min(abs(v.real), abs(v.imag)) <= 1e-9 * abs(v)


@dataclass(frozen=True)
class TransitionAmplitude:
    value: complex
    final: AtomicState
    kin: PhotonKinematics
    offset: BeamOffset


class TransitionEnergy(float):
    """Photon energy in Hartree for 1s -> n_f, with its wavelength attached."""

    @property
    def wavelength_a0(self) -> float:
        return 2 * math.pi / (ALPHA * float(self))

    @property
    def wavelength_nm(self) -> float:
        return self.wavelength_a0 * BOHR_NM


def transition_energy(n_f: int) -> TransitionEnergy:
    """Level spacing E_{n_f} - E_1 = (1 - 1/n_f^2) / 2 Hartree."""
    if n_f < 2:
        raise ValueError("excitation needs n_f >= 2")
    return TransitionEnergy(0.5 * (1.0 - 1.0 / n_f**2))


def _radial_weight(n_f: int, l_f: int, r, use_derivative: bool):
    initial = -radial_derivative_ground(r) if use_derivative else hydrogen_radial(1, 0, r)
    return r**2 * hydrogen_radial(n_f, l_f, r) * initial


@lru_cache(maxsize=4096)
def _reduced_g(n_f, l_f, m_f, lam, k, pitch, quad, use_derivative):
    s_k, c_k = math.sin(pitch), math.cos(pitch)

    def integrand(r, cos_t):
        sin_t = np.sqrt(1.0 - cos_t**2)
        theta = np.arccos(cos_t)
        angular = spherical_harmonic_phi0(l_f, m_f, theta) * spherical_harmonic_phi0(1, lam, theta)
        bessel = bessel_j(m_f - lam, k * r * sin_t * s_k)
        return _radial_weight(n_f, l_f, r, use_derivative) * bessel * angular * np.exp(1j * k * r * cos_t * c_k)

    return integrate_2d(integrand, (0.0, quad.cutoff(n_f)), (-1.0, 1.0), quad)


def reduced_g(
    final: AtomicState,
    lam: int,
    kin: PhotonKinematics,
    quad: QuadratureSpec = DEFAULT_QUAD,
    use_derivative: bool = False,
) -> ReducedAmplitude:
    """Dimensionless atomic factor coupling 1s to ``final`` via eta_lam.

    Evaluates the radial/polar double integral with Bessel argument
    ``k r sin(theta_r) sin(theta_k)`` and plane-wave phase
    ``k r cos(theta_r) cos(theta_k)``. ``use_derivative`` switches the
    1s factor to ``-R'_10`` explicitly (a self-check; equal by construction).
    Returns zero for ``|m_f| > l_f``.
    """
    if lam not in (-1, 0, 1):
        raise ValueError("lam must be -1, 0 or +1")
    if abs(final.m) > final.l:
        return ReducedAmplitude(0j, final.n, final.l, final.m, lam, quad)
    res = _reduced_g(final.n, final.l, final.m, lam, kin.k, kin.pitch_angle, quad, use_derivative)
    return ReducedAmplitude(complex(res.value), final.n, final.l, final.m, lam, quad, res.nodes, res.error)


def bracket_terms(final: AtomicState, kin: PhotonKinematics, quad: QuadratureSpec = DEFAULT_QUAD) -> tuple:
    """The three weighted terms of the curly bracket (lambda = Lambda, 0, -Lambda)."""
    lam = kin.helicity
    th = kin.pitch_angle
    return (
        math.cos(th / 2) ** 2 * reduced_g(final, lam, kin, quad).value,
        1j / math.sqrt(2.0) * math.sin(th) * reduced_g(final, 0, kin, quad).value,
        -math.sin(th / 2) ** 2 * reduced_g(final, -lam, kin, quad).value,
    )


def curly_bracket(final: AtomicState, kin: PhotonKinematics, quad: QuadratureSpec = DEFAULT_QUAD) -> complex:
    """cos^2(th/2) g_Lambda + (i/sqrt2) sin(th) g_0 - sin^2(th/2) g_-Lambda.

    The i^-Lambda phase in front is not included.
    """
    if abs(final.m) > final.l:
        return 0j
    if kin.pitch_angle == 0.0:
        return reduced_g(final, kin.helicity, kin, quad).value
    return complex(sum(bracket_terms(final, kin, quad)))


def amplitude(
    final: AtomicState,
    kin: PhotonKinematics,
    offset: BeamOffset,
    quad: QuadratureSpec = DEFAULT_QUAD,
) -> TransitionAmplitude:
    """Normalised transition amplitude at impact parameter ``offset``."""
    dm = final.m - kin.m_gamma
    radial = bessel_j(dm, kin.kappa * offset.b)
    if radial == 0.0 or abs(final.m) > final.l:
        return TransitionAmplitude(0j, final, kin, offset)
    phase = np.exp(-1j * dm * offset.phi_b) * (1j) ** (-kin.helicity)
    value = phase * radial * curly_bracket(final, kin, quad)
    return TransitionAmplitude(complex(value), final, kin, offset)


def _oracle_estimate(final, kin, offset, n_r, n_t, n_phi, cutoff):
    xr, wr = gauss_legendre(n_r)
    r = 0.5 * cutoff * (xr + 1.0)
    wr = 0.5 * cutoff * wr
    cos_t, wt = gauss_legendre(n_t)
    sin_t = np.sqrt(1.0 - cos_t**2)
    theta = np.arccos(cos_t)
    phi = 2 * math.pi * np.arange(n_phi) / n_phi
    w_phi = 2 * math.pi / n_phi

    y_f = spherical_harmonic_phi0(final.l, final.m, theta)
    azimuthal = np.exp(-1j * final.m * phi)
    norm = math.sqrt(kin.kappa / (2 * math.pi))

    total = 0j
    l1 = 0.0
    chunk = max(1, 2_000_000 // (n_t * n_phi))
    for start in range(0, n_r, chunk):
        rr = r[start : start + chunk, None, None]
        rho = rr * sin_t[None, :, None]
        z = rr * cos_t[None, :, None]
        point = CylindricalPoint(rho, phi, z, 0.0)
        a = translate_potential(kin, offset, point)[1:] / norm
        # A . r_hat
        a_dot_r = (
            a[0] * sin_t[None, :, None] * np.cos(phi)
            + a[1] * sin_t[None, :, None] * np.sin(phi)
            + a[2] * cos_t[None, :, None]
        )
        radial = (wr[start : start + chunk] * r[start : start + chunk] ** 2
                  * hydrogen_radial(final.n, final.l, r[start : start + chunk])
                  * hydrogen_radial(1, 0, r[start : start + chunk]))
        values = radial[:, None, None] * (wt * y_f)[None, :, None] * azimuthal * a_dot_r
        total += values.sum() * w_phi
        l1 += np.abs(values).sum() * w_phi
    prefactor = math.sqrt(3.0) / (4.0 * math.pi**1.5)
    return prefactor * total, prefactor * l1


def oracle_amplitude(
    final: AtomicState,
    kin: PhotonKinematics,
    offset: BeamOffset,
    nodes: tuple[int, int, int] = (96, 48, 32),
    rel_tol: float = 1e-8,
    max_doublings: int = 2,
    cutoff: float | None = None,
) -> complex:
    """Brute-force amplitude from a direct 3D integral over the electron position.

    Integrates ``R_f Y_f^* (A . r_hat) R_10`` with the displaced beam from
    :func:`translate_potential`; no Bessel addition theorem is involved.
    Normalised identically to :func:`amplitude`. Node counts
    ``(radial, polar, azimuthal)`` are doubled until two estimates agree.

    Raises:
        ConvergenceError: if doubling ``max_doublings`` times is not enough.
    """
    if kin.pitch_angle == 0.0:
        raise ValueError("oracle needs a nonzero pitch angle")
    if abs(final.m) > final.l:
        return 0j
    cutoff = 60.0 * final.n if cutoff is None else cutoff
    n_r, n_t, n_phi = nodes
    old, _ = _oracle_estimate(final, kin, offset, n_r, n_t, n_phi, cutoff)
    for _ in range(max_doublings):
        n_r, n_t, n_phi = 2 * n_r, 2 * n_t, 2 * n_phi
        new, l1 = _oracle_estimate(final, kin, offset, n_r, n_t, n_phi, cutoff)
        diff = abs(new - old)
        if diff <= rel_tol * abs(new) or diff <= 1e3 * np.finfo(float).eps * l1:
            return complex(new)
        old = new
    raise ConvergenceError("oracle_amplitude did not converge", (old, new), (n_r // 2, n_r))


@lru_cache(maxsize=1024)
def _plane_wave_g(n_f, l_f, helicity, k, quad):
    def integrand(r, cos_t):
        theta = np.arccos(cos_t)
        angular = spherical_harmonic_phi0(l_f, helicity, theta) * spherical_harmonic_phi0(1, helicity, theta)
        return _radial_weight(n_f, l_f, r, False) * angular * np.exp(1j * k * r * cos_t)

    return integrate_2d(integrand, (0.0, quad.cutoff(n_f)), (-1.0, 1.0), quad)


def plane_wave_g(
    final: AtomicState,
    helicity: int,
    omega: float,
    quad: QuadratureSpec = DEFAULT_QUAD,
) -> complex:
    """Reduced factor for a plane-wave photon of given helicity along z.

    Nonzero only for ``final.m == helicity``.
    """
    if helicity not in (1, -1):
        raise ValueError("helicity must be +1 or -1")
    if final.m != helicity or final.l < 1:
        return 0j
    return complex(_plane_wave_g(final.n, final.l, helicity, ALPHA * omega, quad).value)
