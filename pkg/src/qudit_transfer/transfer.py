"""Sender-to-receiver qudit transfer and its fidelity."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .basis import GlobalPureState, superpose
from .config import ChainConfig, DomainError
from .effective import optimal_time, resonant_mode
from .propagator import evolve_chain


def as_amplitudes(alpha, d: int | None = None, atol: float = 1e-12) -> np.ndarray:
    alpha = np.asarray(alpha, dtype=complex).ravel()
    if d is not None and alpha.size != d:
        raise DomainError(f"expected {d} amplitudes, got {alpha.size}")
    if abs(np.vdot(alpha, alpha).real - 1) > atol:
        raise DomainError("qudit amplitudes must be normalized")
    return alpha


@dataclass(frozen=True, eq=False)
class QuditDensity:
    rho: np.ndarray

    @property
    def dim(self) -> int:
        return self.rho.shape[0]

    def fidelity(self, alpha) -> float:
        alpha = np.asarray(alpha, dtype=complex)
        d = alpha.size
        return float(np.vdot(alpha, self.rho[:d, :d] @ alpha).real)

    def is_physical(self, atol: float = 1e-10) -> bool:
        rho = self.rho
        return (
            np.abs(rho - rho.conj().T).max() <= atol
            and abs(np.trace(rho).real - 1) <= atol
            and np.linalg.eigvalsh(rho).min() >= -atol
        )


def sender_state(config: ChainConfig, mu: int, bus: Sequence[int] | None = None) -> GlobalPureState:
    bus = (0,) * config.bus_length if bus is None else tuple(bus)
    return superpose(config, [(1.0, (mu,) + bus + (0,))])


def initial_transfer_state(config: ChainConfig, alpha) -> GlobalPureState:
    """sum_mu alpha_mu |mu>_s |0...0>_bus |0>_r, normalized kets (no 1/sqrt(mu!))."""
    alpha = as_amplitudes(alpha, config.qudit_dim)
    zeros = (0,) * config.bus_length
    return superpose(config, [(a, (mu,) + zeros + (0,)) for mu, a in enumerate(alpha) if a != 0])


def receiver_coefficients(states: Sequence[GlobalPureState], levels: int) -> np.ndarray:
    """C[a, rest, m]: amplitude of state a on (rest-of-chain configuration, receiver level m).

    The receiver is the last site, i.e. the least significant code digit, so
    a code splits as rest * (2S + 1) + m.  All states share one rest index.
    """
    base = states[0].config.local_dim
    parts = []
    for a, psi in enumerate(states):
        for codes, amps in psi.items():
            parts.append((a, codes, amps))
    all_rest = np.concatenate([codes // base for _, codes, _ in parts]) if parts else np.zeros(0, int)
    rests = np.unique(all_rest)
    C = np.zeros((len(states), len(rests), levels), dtype=complex)
    for a, codes, amps in parts:
        m = codes % base
        keep = m < levels
        r = np.searchsorted(rests, codes[keep] // base)
        np.add.at(C, (a, r, m[keep]), amps[keep])
    return C


def cross_kernel(states: Sequence[GlobalPureState], levels: int) -> np.ndarray:
    """K[a, b, m, n] = tr_rest |psi_a><psi_b| restricted to receiver levels m, n < levels."""
    C = receiver_coefficients(states, levels)
    return np.einsum("arm,brn->abmn", C, C.conj())


def reduce_to_receiver(state, levels: int | None = None) -> QuditDensity:
    """Receiver density from a pure state or a ``[(weight, state), ...]`` ensemble."""
    if isinstance(state, GlobalPureState):
        ensemble = [(1.0, state)]
    else:
        ensemble = list(state)
    config = ensemble[0][1].config
    levels = config.qudit_dim if levels is None else levels
    rho = np.zeros((levels, levels), dtype=complex)
    for w, psi in ensemble:
        rho += w * cross_kernel([psi], levels)[0, 0]
    return QuditDensity(rho)


def correction_phases(
    config: ChainConfig,
    tau: float,
    apply_phase_gate: bool = True,
    apply_field_phase: bool = True,
    levels: int | None = None,
) -> np.ndarray:
    """Diagonal of the receiver-frame correction diag((-1)^(mu kappa) e^{+i h mu tau})."""
    levels = config.qudit_dim if levels is None else levels
    mu = np.arange(levels)
    phases = np.ones(levels, dtype=complex)
    if apply_phase_gate:
        phases *= (-1.0) ** (mu * resonant_mode(config))
    if apply_field_phase:
        phases *= np.exp(1j * config.field_h * mu * tau)
    return phases


def _resolve_tau(config: ChainConfig, tau) -> float:
    if tau is None or tau == "optimal":
        return optimal_time(config)
    tau = float(tau)
    if tau < 0:
        raise DomainError("evolution time must be non-negative")
    return tau


@dataclass(frozen=True, eq=False)
class TransferChannel:
    """Receiver map alpha -> rho_r, corrections already applied.

    ``kernel[a, b, m, n]`` is the (m, n) receiver element contributed by
    alpha_a alpha_b^*.
    """

    config: ChainConfig
    tau: float
    kernel: np.ndarray

    def receiver_density(self, alpha) -> np.ndarray:
        alpha = np.asarray(alpha, dtype=complex)
        return np.einsum("a,b,abmn->mn", alpha, alpha.conj(), self.kernel)

    def fidelity(self, alpha) -> np.ndarray:
        """F for one amplitude vector or a batch of shape (samples, d)."""
        alpha = np.asarray(alpha, dtype=complex)
        F = np.einsum("...m,...n,...a,...b,abmn->...", alpha.conj(), alpha, alpha, alpha.conj(), self.kernel)
        return F.real


def transfer_channel(
    config: ChainConfig,
    tau=None,
    apply_phase_gate: bool = True,
    apply_field_phase: bool = True,
) -> TransferChannel:
    tau = _resolve_tau(config, tau)
    d = config.qudit_dim
    finals = [evolve_chain(sender_state(config, mu), tau) for mu in range(d)]
    K = cross_kernel(finals, d)
    P = correction_phases(config, tau, apply_phase_gate, apply_field_phase)
    K = K * P[None, None, :, None] * P.conj()[None, None, None, :]
    return TransferChannel(config, tau, K)


def receiver_density(
    config: ChainConfig,
    alpha,
    tau=None,
    apply_phase_gate: bool = True,
    apply_field_phase: bool = True,
) -> QuditDensity:
    tau = _resolve_tau(config, tau)
    final = evolve_chain(initial_transfer_state(config, alpha), tau)
    rho = reduce_to_receiver(final).rho
    P = correction_phases(config, tau, apply_phase_gate, apply_field_phase)
    return QuditDensity(P[:, None] * rho * P.conj()[None, :])


def fidelity_from_beta(alpha, beta: np.ndarray) -> float:
    """F = sum_{mu, mu'} alpha_mu' alpha_mu^* beta[mu, mu']."""
    alpha = np.asarray(alpha, dtype=complex)
    d = alpha.size
    total = 0j
    for mu in range(d):
        for nu in range(d):
            total += alpha[nu] * alpha[mu].conj() * beta[mu, nu]
    return float(total.real)


def corrected_fidelity(
    config: ChainConfig,
    alpha,
    tau=None,
    apply_phase_gate: bool = True,
    apply_field_phase: bool = True,
) -> float:
    """<phi| rho_r(tau) |phi> after the deterministic receiver-frame corrections.

    ``tau=None`` (or ``"optimal"``) uses the resonant transfer time.
    """
    alpha = as_amplitudes(alpha, config.qudit_dim)
    rho = receiver_density(config, alpha, tau, apply_phase_gate, apply_field_phase)
    return float(np.clip(rho.fidelity(alpha), 0.0, 1.0))


def basis_transfer_amplitudes(config: ChainConfig, tau=None) -> np.ndarray:
    """<0..0 mu|U(tau)|mu 0..0> for mu = 0..d-1, uncorrected."""
    tau = _resolve_tau(config, tau)
    zeros = (0,) * config.bus_length
    out = np.empty(config.qudit_dim, dtype=complex)
    for mu in range(config.qudit_dim):
        final = evolve_chain(sender_state(config, mu), tau)
        out[mu] = final.amplitude((0,) + zeros + (mu,))
    return out
