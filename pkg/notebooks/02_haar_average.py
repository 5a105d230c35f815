# %% [markdown]
# # Haar-averaged fidelity
#
# The channel is quadratic in the input amplitudes, so the Haar average needs
# only the fourth moment of a random state.  A Monte Carlo estimate over
# Hurwitz-parametrized states checks it.

# %%
from qudit_transfer import ChainConfig, average_fidelity_exact, average_fidelity_mc

for d in (3, 4):
    cfg = ChainConfig.from_spin(bus_length=3, spin=10, qudit_dim=d, coupling_g=0.1)
    mean, err = average_fidelity_mc(cfg, n_samples=20_000, seed=1)
    print(f"d={d}: exact {average_fidelity_exact(cfg):.5f}  mc {mean:.5f} +- {err:.5f}")

# %% [markdown]
# Larger spin widens the bus gap relative to g, so the average improves.
# At intermediate g/J the curve is not monotone in S, though.

# %%
import warnings

warnings.simplefilter("ignore", UserWarning)
for g in (0.1, 0.5, 1.0):
    row = [average_fidelity_exact(ChainConfig.from_spin(3, S, 3, coupling_g=g)) for S in range(1, 11)]
    print(f"g/J={g}: " + " ".join(f"{x:.4f}" for x in row))
