import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistphoton.beam import (
    ETA,
    BeamOffset,
    CylindricalPoint,
    PhotonKinematics,
    angular_momentum,
    bessel_components,
    cylindrical_potential,
    em_fields,
    helicity_projections,
    polarization_vector,
    poynting,
    shifted_point,
    translate_potential,
    vector_potential,
)
from twistphoton.specfun import bessel_j, bessel_translation_partial_sum

OMEGA = 0.46875  # 1s -> n=4 spacing
# a wavelength-scale sample point for a 0.2 rad beam at that energy
RHO = 2500.0


def kinematics(pitch=0.2, m=2, helicity=1, omega=OMEGA):
    return PhotonKinematics(omega, pitch, m, helicity)


def cartesian(a_cyl, phi):
    """(rho, phi, z) components -> (x, y, z)."""
    c, s = np.cos(phi), np.sin(phi)
    return np.array([a_cyl[0] * c - a_cyl[1] * s, a_cyl[0] * s + a_cyl[1] * c, a_cyl[2]])


def potential_xyz(kin, x, y, z, t=0.0):
    point = CylindricalPoint(math.hypot(x, y), math.atan2(y, x) % (2 * math.pi), z, t)
    return vector_potential(kin, point)[1:]


# -- kinematics and basis -----------------------------------------------------------


def test_kinematics_invariants():
    kin = kinematics(pitch=0.7)
    assert kin.kappa**2 + kin.k_z**2 == pytest.approx(kin.k**2, rel=1e-15)
    assert kin.k_z / kin.k == pytest.approx(math.cos(0.7), rel=1e-15)
    assert kin.k_z < kin.k


@pytest.mark.parametrize(
    "kwargs",
    [dict(omega=0.0), dict(pitch_angle=-0.1), dict(pitch_angle=math.pi / 2), dict(helicity=0), dict(m_gamma=1.5)],
)
def test_kinematics_rejects_bad_input(kwargs):
    args = dict(omega=0.4, pitch_angle=0.2, m_gamma=1, helicity=1) | kwargs
    with pytest.raises(ValueError):
        PhotonKinematics(**args)


def test_kinematics_from_wavelength():
    kin = PhotonKinematics.from_wavelength_nm(500.0, 0.2, 4)
    assert kin.wavelength * 0.0529177210903 == pytest.approx(500.0, rel=1e-12)
    assert kin.k * kin.wavelength == pytest.approx(2 * math.pi, rel=1e-14)


def test_polarization_basis_orthonormal():
    for a in ETA.values():
        for b in ETA.values():
            overlap = np.vdot(a[1:], b[1:])
            assert overlap == pytest.approx(1.0 if a is b else 0.0, abs=1e-15)
    assert np.allclose(ETA[1], np.array([0, -1, -1j, 0]) / math.sqrt(2))
    assert np.allclose(ETA[-1], np.array([0, 1, -1j, 0]) / math.sqrt(2))


def test_polarization_examples():
    for lam in (1, -1):
        eps = polarization_vector(kinematics(pitch=0.0, helicity=lam), 0.9)
        assert np.allclose(eps, ETA[lam] * np.exp(-1j * lam * 0.9), rtol=1e-15, atol=0)
    # theta_k = 0 at phi_k = 0 is eta_Lambda exactly
    assert np.array_equal(polarization_vector(kinematics(pitch=0.0), 0.0), ETA[1])
    # close to pi/2 the z-component approaches 1/sqrt2
    eps = polarization_vector(kinematics(pitch=math.pi / 2 - 1e-12), 0.3)
    assert eps[3] == pytest.approx(1 / math.sqrt(2), abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.0, 1.5), st.floats(0.0, 2 * math.pi), st.sampled_from([1, -1]))
def test_polarization_transverse(pitch, phi_k, lam):
    kin = kinematics(pitch=pitch, helicity=lam)
    eps = polarization_vector(kin, phi_k)[1:]
    k_vec = np.array([kin.kappa * math.cos(phi_k), kin.kappa * math.sin(phi_k), kin.k_z])
    assert abs(eps @ k_vec) < 1e-14 * kin.k
    assert np.vdot(eps, eps).real == pytest.approx(1.0, abs=1e-14)


def test_polarization_vectorised():
    phi = np.linspace(0, 1, 5)
    eps = polarization_vector(kinematics(), phi)
    assert eps.shape == (4, 5)
    assert np.allclose(eps[:, 2], polarization_vector(kinematics(), phi[2]))


# -- vector potential --------------------------------------------------------------


def plane_wave_superposition(kin, x, nodes=2048):
    """Average of plane waves on the cone with the (-i)^m e^{i m phi_k} weight."""
    phi_k = 2 * math.pi * np.arange(nodes) / nodes
    eps = polarization_vector(kin, phi_k)
    phase = kin.kappa * x.rho * np.cos(phi_k - x.phi)
    weight = (-1j) ** kin.m_gamma * np.exp(1j * kin.m_gamma * phi_k) * np.exp(1j * phase)
    common = np.exp(-1j * (kin.omega * x.t - kin.k_z * x.z)) * math.sqrt(kin.kappa / (2 * math.pi))
    return common * (eps * weight).mean(axis=1)


@pytest.mark.parametrize("helicity", [1, -1])
@pytest.mark.parametrize("m", [2, -3, 0])
def test_vector_potential_matches_angular_integral(m, helicity):
    kin = kinematics(m=m, helicity=helicity)
    rng = np.random.default_rng(abs(m) + 10 * (helicity + 1))
    for _ in range(4):
        x = CylindricalPoint(rng.uniform(0, 3 * RHO), rng.uniform(0, 2 * math.pi), rng.uniform(-50, 50), rng.uniform(0, 10))
        direct = plane_wave_superposition(kin, x)
        scale = math.sqrt(kin.kappa / (2 * math.pi))
        assert np.max(np.abs(vector_potential(kin, x) - direct)) < 1e-9 * scale


def test_vector_potential_on_axis():
    kin = kinematics(m=1)
    a = vector_potential(kin, CylindricalPoint(0.0))
    expected = (1j) ** (-1) * math.cos(0.1) ** 2 * ETA[1] * math.sqrt(kin.kappa / (2 * math.pi))
    assert np.allclose(a, expected, atol=1e-18)
    assert np.array_equal(vector_potential(kinematics(m=4), CylindricalPoint(0.0)), np.zeros(4, dtype=complex))


def test_vector_potential_broadcasts():
    kin = kinematics()
    rho = np.linspace(0, RHO, 6)
    a = vector_potential(kin, CylindricalPoint(rho[:, None], np.array([0.1, 0.2, 0.3])[None, :]))
    assert a.shape == (4, 6, 3)
    assert np.allclose(a[:, 4, 1], vector_potential(kin, CylindricalPoint(rho[4], 0.2)))


def test_helicity_projection_recovers_components():
    kin = kinematics(m=3, helicity=-1)
    x = CylindricalPoint(1200.0, 0.4, 7.0, 2.0)
    proj = helicity_projections(vector_potential(kin, x))
    comps = bessel_components(kin, x.rho, x.phi)
    common = np.exp(-1j * (kin.omega * x.t - kin.k_z * x.z)) * math.sqrt(kin.kappa / (2 * math.pi))
    for lam in (1, 0, -1):
        assert proj[lam] == pytest.approx(comps[lam] * common, abs=1e-15)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.0, 2 * math.pi), st.integers(-4, 4), st.sampled_from([1, -1]))
def test_rotation_covariance(delta, m, lam):
    kin = kinematics(m=m, helicity=lam)
    x = CylindricalPoint(1800.0, 0.3)
    y = CylindricalPoint(1800.0, 0.3 + delta)
    before = helicity_projections(vector_potential(kin, x))
    after = helicity_projections(vector_potential(kin, y))
    for label, shift in ((0, m), (lam, m - lam), (-lam, m + lam)):
        assert after[label] == pytest.approx(np.exp(1j * shift * delta) * before[label], abs=1e-15)


def test_cylindrical_components_consistent():
    for lam in (1, -1):
        kin = kinematics(m=2, helicity=lam, pitch=0.5)
        x = CylindricalPoint(1500.0, 1.1, 4.0, 0.5)
        cart = vector_potential(kin, x)[1:]
        assert np.allclose(cartesian(cylindrical_potential(kin, x), x.phi), cart, rtol=0, atol=1e-14)


def test_coulomb_gauge():
    rng = np.random.default_rng(3)
    h = 1e-2
    for lam in (1, -1):
        kin = kinematics(m=2, helicity=lam, pitch=0.6)
        for _ in range(5):
            x, y, z = rng.uniform(-3000, 3000, 3)
            div = 0j
            for axis in range(3):
                step = np.zeros(3)
                step[axis] = h
                plus = potential_xyz(kin, *(np.array([x, y, z]) + step))
                minus = potential_xyz(kin, *(np.array([x, y, z]) - step))
                div += (plus[axis] - minus[axis]) / (2 * h)
            size = np.linalg.norm(potential_xyz(kin, x, y, z))
            assert abs(div) < 1e-6 * kin.k * size


# -- fields ------------------------------------------------------------------


def fd_curl(kin, x, y, z, h=1e-4):
    def d(axis, comp):
        step = np.zeros(3)
        step[axis] = h
        p = np.array([x, y, z])
        return (potential_xyz(kin, *(p + step))[comp] - potential_xyz(kin, *(p - step))[comp]) / (2 * h)

    return np.array([d(1, 2) - d(2, 1), d(2, 0) - d(0, 2), d(0, 1) - d(1, 0)])


@pytest.mark.parametrize("helicity", [1, -1])
def test_magnetic_field_is_curl(helicity):
    rng = np.random.default_rng(11)
    kin = kinematics(m=4, helicity=helicity, pitch=0.3)
    for _ in range(5):
        x, y = rng.uniform(-4000, 4000, 2)
        z = rng.uniform(-100, 100)
        phi = math.atan2(y, x) % (2 * math.pi)
        field = em_fields(kin, CylindricalPoint(math.hypot(x, y), phi, z))
        b_fd = fd_curl(kin, x, y, z)
        b = cartesian(field.B, phi)
        assert np.linalg.norm(b - b_fd) < 1e-6 * np.linalg.norm(b)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.0, 6000.0), st.floats(0.0, 2 * math.pi), st.integers(-5, 5))
def test_electric_field_quarter_period_ahead(rho, phi, m):
    field = em_fields(kinematics(m=m), CylindricalPoint(rho, phi, 3.0, 1.0))
    assert np.array_equal(field.E, 1j * field.B)


def test_fields_on_axis_vanish_for_high_m():
    field = em_fields(kinematics(m=4), CylindricalPoint(0.0))
    assert field.B[2] == 0
    assert np.all(field.S == 0)


def test_magnetic_field_closed_form():
    # B for Lambda = +1 written out in cylindrical components
    kin = kinematics(m=3, pitch=0.4)
    x = CylindricalPoint(2100.0, 0.8, 0.0, 0.0)
    k, th, arg = kin.k, kin.pitch_angle, kin.kappa * x.rho
    pref = k * math.sqrt(kin.kappa / (2 * math.pi)) * np.exp(3j * x.phi) / math.sqrt(2)
    c2, s2 = math.cos(th / 2) ** 2, math.sin(th / 2) ** 2
    b_rho = 1j * pref * (c2 * bessel_j(2, arg) + s2 * bessel_j(4, arg))
    b_phi = pref * (s2 * bessel_j(4, arg) - c2 * bessel_j(2, arg))
    b_z = pref * math.sin(th) * bessel_j(3, arg)
    assert np.allclose(em_fields(kin, x).B, [b_rho, b_phi, b_z], rtol=1e-13, atol=0)


@pytest.mark.parametrize("helicity", [1, -1])
@pytest.mark.parametrize("m", [1, 4, -2])
def test_poynting_matches_time_averaged_fields(m, helicity):
    kin = kinematics(m=m, helicity=helicity, pitch=0.35)
    period = 2 * math.pi / kin.omega
    for rho in (0.0, 900.0, 2600.0):
        s = poynting(kin, rho)
        total = np.zeros(3)
        for t in period * np.arange(16) / 16:
            f = em_fields(kin, CylindricalPoint(rho, 0.4, 2.0, t))
            total += np.cross(f.E.real, f.B.real)
        average = total / 16
        assert np.linalg.norm(average - s) <= 1e-8 * max(np.linalg.norm(s), 1e-300)
        assert s[0] == 0.0


def test_poynting_sample_points():
    kin = kinematics(m=4)
    rho = np.linspace(0, 8000, 41)
    s = poynting(kin, rho)
    assert s.shape == (3, 41)
    assert np.all(s[0] == 0)
    assert s[2, 0] == 0.0
    assert np.any(s[2] > 0)


def test_poynting_paraxial_limit():
    kin = kinematics(m=1, pitch=1e-7)
    rho = np.linspace(0, 5e7, 9)
    s = poynting(kin, rho)
    scale = kin.kappa * kin.k**2 / (4 * math.pi)
    assert np.all(np.abs(s[1]) <= 1e-6 * scale)
    assert np.allclose(s[2], scale * bessel_j(0, kin.kappa * rho) ** 2, rtol=1e-6, atol=1e-6 * scale)


# -- angular momentum -------------------------------------------------------------------


def test_angular_momentum_examples():
    spin, oam, total = angular_momentum(kinematics(pitch=0.2, m=4))
    assert spin == pytest.approx(0.980067, abs=1e-6)
    assert oam == pytest.approx(3.019933, abs=1e-6)
    assert total == 4
    for lam in (1, -1):
        assert angular_momentum(kinematics(pitch=0.0, m=3, helicity=lam)) == (lam, 3 - lam, 3)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.0, 1.57), st.sampled_from([1, -1]), st.integers(-50, 50))
def test_angular_momentum_total(pitch, lam, m):
    am = angular_momentum(kinematics(pitch=pitch, m=m, helicity=lam))
    assert am.total == pytest.approx(m, abs=4 * np.finfo(float).eps * max(1, abs(m)))
    assert am.spin == pytest.approx(lam * math.cos(pitch), abs=1e-15)


# -- translation --------------------------------------------------------------------


def test_translate_without_offset():
    kin = kinematics(m=-2)
    x = CylindricalPoint(np.array([0.0, 300.0, 2000.0]), np.array([0.0, 1.0, 4.0]), 5.0, 1.0)
    assert np.allclose(translate_potential(kin, BeamOffset(0.0), x), vector_potential(kin, x), rtol=0, atol=1e-18)


def test_translate_collinear_geometry():
    shifted = shifted_point(BeamOffset(1.0, math.pi), CylindricalPoint(1.0, 0.0))
    assert shifted.rho == pytest.approx(2.0, abs=1e-15)
    assert math.sin(shifted.phi) == pytest.approx(0.0, abs=1e-15)
    assert math.cos(shifted.phi) == pytest.approx(1.0, abs=1e-15)
    kin = kinematics(m=0)
    a = translate_potential(kin, BeamOffset(1.0, math.pi), CylindricalPoint(1.0, 0.0))
    eta0_part = np.vdot(ETA[0][1:], a[1:])
    expected = math.sin(0.2) / math.sqrt(2) * bessel_j(0, 2 * kin.kappa) * math.sqrt(kin.kappa / (2 * math.pi))
    assert eta0_part == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("seed", range(4))
def test_translate_matches_addition_theorem(seed):
    rng = np.random.default_rng(seed)
    kin = kinematics(m=int(rng.integers(-3, 4)), pitch=0.3)
    offset = BeamOffset(rng.uniform(0, 2 * kin.wavelength), rng.uniform(0, 2 * math.pi))
    x = CylindricalPoint(rng.uniform(0, 2 * kin.wavelength), rng.uniform(0, 2 * math.pi))
    proj = helicity_projections(translate_potential(kin, offset, x))
    kr, kb = kin.kappa * x.rho, kin.kappa * offset.b
    scale = math.sqrt(kin.kappa / (2 * math.pi))
    weights = {
        0: math.sin(0.3) / math.sqrt(2),
        1: (1j) ** -1 * math.cos(0.15) ** 2,
        -1: 1j * math.sin(0.15) ** 2,
    }
    for lam, w in weights.items():
        order = kin.m_gamma - lam
        rebuilt = w * scale * bessel_translation_partial_sum(order, kr, kb, x.phi, offset.phi_b)
        assert abs(proj[lam] - rebuilt) < 1e-9 * scale


def test_beam_offset_validation():
    with pytest.raises(ValueError):
        BeamOffset(-1.0)
    with pytest.raises(ValueError):
        CylindricalPoint(-0.5)
