"""Twisted-photon fields and photoexcitation of hydrogen.

Atomic units throughout: lengths in a_0, energies in Hartree, photon
wavenumber ``k = ALPHA * omega``.
"""

from .beam import (
    BeamOffset,
    CylindricalPoint,
    FieldSample,
    PhotonKinematics,
    angular_momentum,
    em_fields,
    polarization_vector,
    poynting,
    translate_potential,
    vector_potential,
)
from .constants import ALPHA
from .matelem import (
    AtomicState,
    ReducedAmplitude,
    TransitionAmplitude,
    amplitude,
    curly_bracket,
    oracle_amplitude,
    plane_wave_g,
    reduced_g,
    transition_energy,
)
from .specfun import (
    ConvergenceError,
    QuadratureSpec,
    bessel_j,
    bessel_translation_partial_sum,
    hydrogen_radial,
    integrate,
    radial_derivative_ground,
    spherical_harmonic_phi0,
)
from .xsec import (
    AveragingSpec,
    CrossSection,
    averaged_sigma,
    f_twisted,
    helicity_asymmetry,
    plane_wave_sigma,
    r_twisted,
)

__version__ = "0.1.0"
