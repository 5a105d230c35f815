# %% [markdown]
# # Transferring one qudit through a spin-S bus
#
# A sender qudit (levels 0..d-1 of a spin-S site) talks to a receiver through
# a bus of N spin-S sites.  With weak end couplings only the bus mode at zero
# energy takes part, and after tau0 the state arrives up to a known phase gate.

# %%
import numpy as np

from qudit_transfer import ChainConfig, corrected_fidelity, optimal_time, predict
from qudit_transfer.transfer import basis_transfer_amplitudes

cfg = ChainConfig.from_spin(bus_length=3, spin=10, qudit_dim=3, coupling_g=0.1)
pred = predict(cfg)
print(f"resonant mode k={pred.kappa}, t_k={pred.t_kappa:.5f}, tau0={pred.tau0:.3f}")

# %% [markdown]
# Basis states pick up the sign (-1)^(mu*kappa); the receiver undoes it.
# For N=3 the resonant mode has kappa=2 and the sign is trivial; N=5 has
# kappa=3, so odd levels arrive flipped.

# %%
for n_bus in (3, 5):
    amps = basis_transfer_amplitudes(ChainConfig.from_spin(n_bus, 10, 3, coupling_g=0.1))
    for mu, a in enumerate(amps):
        print(f"N={n_bus} mu={mu}: |amp|={abs(a):.5f}  phase/pi={np.angle(a) / np.pi:+.4f}")

# %%
alpha = np.ones(3) / np.sqrt(3)
tau0 = optimal_time(cfg)
for frac in (0.25, 0.5, 0.75, 1.0, 1.25):
    print(f"tau={frac:4.2f} tau0  F={corrected_fidelity(cfg, alpha, frac * tau0):.5f}")
