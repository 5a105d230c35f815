"""Entanglement distribution through the bus.

An inert ancilla ``a`` is maximally entangled with the sender ``b``; the
receiver ``c`` ends up sharing that entanglement.  The ancilla never
evolves, so it is carried as a branch label: the joint state is
sum_mu (1/sqrt d) |mu>_a |chi_mu>, with |chi_mu> a chain state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import GlobalPureState
from .config import ChainConfig
from .propagator import evolve_chain
from .transfer import _resolve_tau, correction_phases, cross_kernel, sender_state

NEGATIVE_EIGENVALUE_THRESHOLD = -1e-12


@dataclass(frozen=True, eq=False)
class BipartiteDensity:
    rho: np.ndarray
    dims: tuple[int, int]

    def __post_init__(self):
        d1, d2 = self.dims
        if self.rho.shape != (d1 * d2, d1 * d2):
            raise ValueError(f"rho has shape {self.rho.shape}, dims {self.dims}")


@dataclass(frozen=True, eq=False)
class EntangledPair:
    """Branches |chi_mu> (normalized) with ancilla amplitudes ``weights[mu]``."""

    config: ChainConfig
    branches: tuple[GlobalPureState, ...]
    weights: np.ndarray

    @property
    def ancilla_dim(self) -> int:
        return len(self.branches)

    def norm(self) -> float:
        return float(np.sqrt(sum(abs(w) ** 2 * b.norm() ** 2 for w, b in zip(self.weights, self.branches))))

    def evolved(self, tau: float) -> "EntangledPair":
        return EntangledPair(self.config, tuple(evolve_chain(b, tau) for b in self.branches), self.weights)


def entangled_initial(config: ChainConfig) -> EntangledPair:
    d = config.qudit_dim
    branches = tuple(sender_state(config, mu) for mu in range(d))
    return EntangledPair(config, branches, np.full(d, 1 / np.sqrt(d)))


def ancilla_receiver_density(pair: EntangledPair, phases: np.ndarray | None = None) -> BipartiteDensity:
    """rho_ac on (ancilla, receiver), receiver truncated to d levels."""
    d = pair.ancilla_dim
    K = cross_kernel(list(pair.branches), d)
    w = pair.weights
    rho = np.einsum("a,b,abmn->ambn", w, w.conj(), K)
    if phases is not None:
        rho = rho * phases[None, :, None, None] * phases.conj()[None, None, None, :]
    return BipartiteDensity(rho.reshape(d * d, d * d), (d, d))


def ancilla_sender_density(pair: EntangledPair) -> BipartiteDensity:
    """rho_ab on (ancilla, sender); the sender is the most significant code digit."""
    d = pair.ancilla_dim
    base = pair.config.local_dim
    top = base ** (pair.config.n_sites - 1)
    rests = np.unique(np.concatenate([codes % top for b in pair.branches for codes, _ in b.items()]))
    C = np.zeros((d, len(rests), d), dtype=complex)
    for a, b in enumerate(pair.branches):
        for codes, amps in b.items():
            s = codes // top
            keep = s < d
            np.add.at(C, (a, np.searchsorted(rests, codes[keep] % top), s[keep]), amps[keep])
    w = pair.weights
    rho = np.einsum("a,b,arm,brn->ambn", w, w.conj(), C, C.conj())
    return BipartiteDensity(rho.reshape(d * d, d * d), (d, d))


def partial_transpose(rho: BipartiteDensity, party: int = 1) -> np.ndarray:
    """<i,j| rho^{T_1} |k,l> = <k,j| rho |i,l> (party 1), analogously for party 2."""
    d1, d2 = rho.dims
    r = rho.rho.reshape(d1, d2, d1, d2)
    if party == 1:
        r = r.transpose(2, 1, 0, 3)
    elif party == 2:
        r = r.transpose(0, 3, 2, 1)
    else:
        raise ValueError("party must be 1 or 2")
    return r.reshape(d1 * d2, d1 * d2)


def log_negativity(rho: BipartiteDensity) -> float:
    """log2 of the trace norm of rho^{T_1}, using ||.|| = 1 + 2 |sum of negative eigenvalues|."""
    evals = np.linalg.eigvalsh(partial_transpose(rho, 1))
    neg = evals[evals < NEGATIVE_EIGENVALUE_THRESHOLD].sum()
    return float(np.log2(1 + 2 * abs(neg)))


def maximally_entangled(d: int, phases=None) -> BipartiteDensity:
    """(1/sqrt d) sum_mu phases[mu] |mu>|mu> as a density matrix."""
    psi = np.zeros(d * d, dtype=complex)
    ph = np.ones(d) if phases is None else np.asarray(phases)
    psi[np.arange(d) * (d + 1)] = ph / np.sqrt(d)
    return BipartiteDensity(np.outer(psi, psi.conj()), (d, d))


def distribution_efficiency(
    config: ChainConfig,
    tau=None,
    apply_phase_gate: bool = True,
    apply_field_phase: bool = True,
) -> float:
    """LE_ac(tau) / log2(d), clamped to 1."""
    tau = _resolve_tau(config, tau)
    pair = entangled_initial(config).evolved(tau)
    phases = None
    if apply_phase_gate or apply_field_phase:
        phases = correction_phases(config, tau, apply_phase_gate, apply_field_phase)
    le_ac = log_negativity(ancilla_receiver_density(pair, phases))
    return min(1.0, le_ac / np.log2(config.qudit_dim))
