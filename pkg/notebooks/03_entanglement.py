# %% [markdown]
# # Distributing entanglement
#
# The sender is maximally entangled with an ancilla.  After tau0 we measure
# how much of that entanglement the ancilla shares with the receiver, via the
# log negativity normalized by log2 d.

# %%
import warnings

from qudit_transfer import ChainConfig, distribution_efficiency

warnings.simplefilter("ignore", UserWarning)
for d in (3, 4):
    spins = [S for S in (1, 2, 3, 5, 10) if 2 * S >= d - 1]
    effs = [distribution_efficiency(ChainConfig.from_spin(3, S, d, coupling_g=0.1)) for S in spins]
    print(f"d={d}: " + " ".join(f"S={S}:{e:.4f}" for S, e in zip(spins, effs)))
