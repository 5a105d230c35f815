# %% [markdown]
# # A thermal bus
#
# Here the bus starts in its Gibbs state under a field h.  A strong field
# pins it near the vacuum; heat populates excitations that spoil transfer.
# Fields are quoted in units of S*J.

# %%
import numpy as np

from qudit_transfer import ChainConfig, thermal_average_fidelity

temps = np.array([0.5, 5, 10, 20, 40])
for S in (3, 5):
    for c in (4, 8):
        cfg = ChainConfig.from_spin(bus_length=1, spin=S, qudit_dim=3, coupling_g=0.1, field_h=c * S)
        row = [thermal_average_fidelity(cfg, T) for T in temps]
        print(f"S={S} h={c}SJ: " + " ".join(f"{x:.4f}" for x in row))
