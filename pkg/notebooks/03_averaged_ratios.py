# %% [markdown]
# # Averaging over the target
#
# For a macroscopic target the atoms sit at every impact parameter. After
# averaging, the cross sections no longer depend on m_gamma and states with
# m_f != Lambda, unreachable for plane waves, keep a share of the rate.

# %%
import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from twistphoton import AtomicState, PhotonKinematics, averaged_sigma, f_twisted, helicity_asymmetry, r_twisted, transition_energy
from twistphoton.xsec import AveragingSpec, disk_averaged_sigma

# %% [markdown]
# ## Published ratios at theta_k = 0.2

# %%
for n_f, l_f in [(4, 1), (4, 3), (5, 4)]:
    kin = PhotonKinematics(transition_energy(n_f), 0.2, 3)
    print(f"({n_f},{l_f}): f_twisted = {100 * f_twisted(n_f, l_f, kin):5.2f}%   r_twisted = {r_twisted(n_f, l_f, kin):.5f}")
print(f"1 / cos(0.2) = {1 / math.cos(0.2):.5f}")

# %% [markdown]
# ## How the forbidden share grows with the cone angle

# %%
pitches = np.linspace(0.02, 0.6, 30)
fig, ax = plt.subplots(figsize=(6, 4))
for n_f, l_f in [(4, 1), (4, 3), (5, 4)]:
    shares = [f_twisted(n_f, l_f, PhotonKinematics(transition_energy(n_f), p, 3)) for p in pitches]
    ax.plot(pitches, shares, label=f"({n_f},{l_f})")
ax.set_xlabel("pitch angle (rad)")
ax.set_ylabel("f_twisted")
ax.legend()
fig.tight_layout()
fig.savefig("averaged_ratios.png", dpi=120)

# %% [markdown]
# ## Finite disk versus the infinite-target limit
#
# The limit uses the large-R form of the Bessel-squared integral. A disk
# with kappa R = 500 is already within a fraction of a percent.

# %%
kin = PhotonKinematics(transition_energy(4), 0.2, 3)
final = AtomicState(4, 1, 1)
limit = averaged_sigma(final, kin).value
for kr in (50, 500, 5000):
    disk = disk_averaged_sigma(final, kin, AveragingSpec(kr / kin.kappa)).value
    print(f"kappa R = {kr:5d}: disk / limit = {disk / limit:.5f}")

# %% [markdown]
# ## Helicity asymmetry
#
# At a fixed impact parameter the two helicities excite the level at
# different rates; averaged over the target the difference cancels.

# %%
b = 0.3 * kin.wavelength
print(f"fixed b = 0.3 lambda: A = {helicity_asymmetry(4, 3, kin, b=b):+.4f}")
print(f"averaged:             A = {helicity_asymmetry(4, 3, kin):+.1e}")
