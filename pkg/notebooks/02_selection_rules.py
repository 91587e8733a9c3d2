# %% [markdown]
# # Selection rules versus impact parameter
#
# Hydrogen 1s -> n_f = 4 with the photon energy fixed by the level spacing,
# pitch 0.2 rad, m_gamma = 3 and helicity +1. On the beam axis only
# m_f = m_gamma is reached; a fraction of a wavelength off axis every m_f
# allowed by l_f shows up.

# %%
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from twistphoton import AtomicState, BeamOffset, PhotonKinematics, amplitude, oracle_amplitude, transition_energy
from twistphoton.matelem import curly_bracket

kin = PhotonKinematics(transition_energy(4), 0.2, 3)
b_over_lambda = np.linspace(0, 2, 201)

# %% [markdown]
# ## |M(b)| for l_f = 3 and l_f = 1
#
# Since only the Bessel factor depends on b, each curve is a bracket value
# times |J_{m_f - m_gamma}(kappa b)|.

# %%
fig, axes = plt.subplots(2, 1, figsize=(7, 7), sharex=True)
for ax, l_f, m_values in ((axes[0], 3, range(3, -2, -1)), (axes[1], 1, range(1, -2, -1))):
    for m_f in m_values:
        curve = [abs(amplitude(AtomicState(4, l_f, m_f), kin, BeamOffset(b * kin.wavelength)).value) for b in b_over_lambda]
        ax.plot(b_over_lambda, curve, label=f"m_f = {m_f}")
    ax.set_ylabel(f"|M|, l_f = {l_f}")
    ax.legend()
axes[1].set_xlabel("b / lambda")
fig.tight_layout()
fig.savefig("selection_rules.png", dpi=120)

# %%
peak_1 = max(abs(amplitude(AtomicState(4, 1, 1), kin, BeamOffset(b * kin.wavelength)).value) for b in b_over_lambda)
peak_3 = max(abs(amplitude(AtomicState(4, 3, 3), kin, BeamOffset(b * kin.wavelength)).value) for b in b_over_lambda)
print(f"peak ratio l_f = 1 over l_f = 3: {peak_1 / peak_3:.2e}")

# %% [markdown]
# ## The tan(theta_k) hierarchy
#
# Away from m_f = Lambda each unit of |m_f - Lambda| costs a factor of
# tan(theta_k), to leading order.

# %%
for m_f in range(-3, 4):
    values = [abs(curly_bracket(AtomicState(4, 3, m_f), kin.replace(pitch_angle=p, m_gamma=m_f))) for p in (0.0125, 0.025, 0.05)]
    slope = np.polyfit(np.log(np.tan([0.0125, 0.025, 0.05])), np.log(values), 1)[0]
    print(f"m_f = {m_f:+d}: exponent {slope:.3f} (expected {abs(m_f - 1)})")

# %% [markdown]
# ## Cross-check against brute force
#
# The closed form rests on the Bessel addition theorem. A direct 3D
# quadrature of the displaced-beam matrix element does not use it.

# %%
offset = BeamOffset(0.5 * kin.wavelength, 0.7)
final = AtomicState(4, 3, 2)
closed = amplitude(final, kin, offset).value
direct = oracle_amplitude(final, kin, offset)
print(f"closed form {closed:.6e}\ndirect      {direct:.6e}\nrelative gap {abs(closed - direct) / abs(closed):.1e}")
