"""Transfer with the bus prepared in a Gibbs state under a magnetic field.

The bus Hamiltonian used for the Boltzmann weights is the exact spin one
(bus XX coupling plus bus Zeeman term) on the N bus sites alone.  Bus
sectors above ``n_cut`` are dropped; their weight is bounded with a
Gershgorin estimate of each dropped sector's lowest energy.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.special import logsumexp

from .basis import GlobalPureState, sector_basis, sector_dimension
from .config import ChainConfig, DomainError, TruncationError
from .haar import haar_average_from_kernel, sample_haar
from .hamiltonian import bus_only_hamiltonian
from .propagator import chain_spectra, decompose, evolve, evolve_density
from .transfer import (
    TransferChannel,
    _resolve_tau,
    as_amplitudes,
    correction_phases,
    cross_kernel,
    reduce_to_receiver,
)

WEIGHT_CUTOFF = 1e-12


@dataclass(frozen=True, eq=False)
class ThermalMember:
    weight: float
    sector_n: int
    vector: np.ndarray
    energy: float


@dataclass(frozen=True, eq=False)
class ThermalEnsemble:
    members: tuple[ThermalMember, ...]
    temperature: float
    log_partition: float
    truncation_tail: float
    n_cut: int

    @property
    def partition_value(self) -> float:
        return float(np.exp(self.log_partition))

    @property
    def total_weight(self) -> float:
        return float(sum(m.weight for m in self.members))


def _sector_energy_lower_bound(config: ChainConfig, n: int) -> float:
    tw = config.twice_spin
    zeeman = -config.field_h * (tw * config.bus_length / 2 - n)
    if config.bus_length == 1:
        return zeeman
    top = min(n, tw)
    x = np.arange(0, min(top, tw - 1) + 1)[:, None]
    y = np.arange(1, top + 1)[None, :]
    amp = np.sqrt((x + 1) * (tw - x) * y * (tw - y + 1))
    amp = np.where(x + y <= n, amp, 0.0)
    a_max = float(amp.max()) if amp.size else 0.0
    return zeeman - 2 * (config.bus_length - 1) * config.coupling_j * a_max


def _bus_spectrum(config: ChainConfig, n: int):
    basis = sector_basis(config.bus_length, config.twice_spin, n)
    spec = decompose(bus_only_hamiltonian(config, basis))
    return basis, spec


def _log_tail_bound(config: ChainConfig, n_cut: int, e_ref: float, temperature: float) -> float:
    """log of an upper bound on (omitted Boltzmann sum) * exp(e_ref / T)."""
    logs = [
        np.log(sector_dimension(config.bus_length, config.twice_spin, n))
        - (_sector_energy_lower_bound(config, n) - e_ref) / temperature
        for n in range(n_cut + 1, config.twice_spin * config.bus_length + 1)
    ]
    return float(logsumexp(logs)) if logs else -np.inf


def bus_thermal_state(
    config: ChainConfig,
    temperature: float,
    n_cut: int | None = None,
    tol: float = 1e-8,
) -> ThermalEnsemble:
    """Boltzmann ensemble of bus eigenstates, heaviest first.

    With ``n_cut=None`` the cut grows until the omitted weight is below
    ``tol``.  An explicit ``n_cut`` that cannot meet ``tol`` raises
    :class:`TruncationError` carrying a sufficient cut.
    """
    if not temperature > 0:
        raise DomainError("temperature must be positive")
    n_full = config.twice_spin * config.bus_length
    if n_cut is not None and not 0 <= n_cut <= n_full:
        raise DomainError(f"n_cut must lie in [0, {n_full}]")

    sectors = []
    e_ref = np.inf
    cut = 0 if n_cut is None else n_cut
    n = 0
    while True:
        while n <= cut:
            basis, spec = _bus_spectrum(config, n)
            sectors.append((n, basis, spec))
            e_ref = min(e_ref, float(spec.eigenvalues.min()))
            n += 1
        boltz = np.concatenate([np.exp(-(s.eigenvalues - e_ref) / temperature) for _, _, s in sectors])
        z_kept = boltz.sum()
        log_omitted = _log_tail_bound(config, cut, e_ref, temperature)
        tail = float(np.exp(log_omitted - np.logaddexp(np.log(z_kept), log_omitted)))
        if tail < tol or cut == n_full:
            break
        if n_cut is not None:
            suggestion = cut
            while suggestion < n_full:
                suggestion += 1
                if _log_tail_bound(config, suggestion, e_ref, temperature) - np.log(z_kept) < np.log(tol):
                    break
            raise TruncationError(
                f"bus truncation at n_cut={n_cut} leaves weight {tail:.3g} "
                f"> tol={tol:g}; try n_cut={suggestion}",
                suggested_n_cut=suggestion,
            )
        cut += 1

    omitted = float(np.exp(log_omitted))
    z_total = z_kept + omitted
    members = []
    dropped = 0.0
    for sector, _, spec in sectors:
        for k, energy in enumerate(spec.eigenvalues):
            p = float(np.exp(-(energy - e_ref) / temperature) / z_total)
            if p < WEIGHT_CUTOFF:
                dropped += p
                continue
            members.append((sector, k, ThermalMember(p, sector, spec.eigenvectors[:, k], float(energy))))
    members.sort(key=lambda t: (-t[2].weight, t[0], t[1]))
    tail = omitted / z_total + dropped
    log_z = np.log(z_total) - e_ref / temperature
    return ThermalEnsemble(tuple(m for _, _, m in members), float(temperature), float(log_z), float(tail), cut)


def extended_config(config: ChainConfig, ensemble: ThermalEnsemble) -> ChainConfig:
    top = max(m.sector_n for m in ensemble.members)
    cap = min(top + config.qudit_dim - 1, config.twice_spin * config.n_sites)
    return replace(config, excitation_cap=cap)


def member_initial_state(config: ChainConfig, member: ThermalMember, mu: int) -> GlobalPureState:
    """|mu>_s (x) |phi_member>_bus (x) |0>_r on the full chain."""
    bus = sector_basis(config.bus_length, config.twice_spin, member.sector_n)
    n = mu + member.sector_n
    chain = sector_basis(config.n_sites, config.twice_spin, n)
    base = config.local_dim
    codes = mu * base ** (config.n_sites - 1) + bus.codes * base
    vec = np.zeros(chain.dim, dtype=complex)
    vec[chain.lookup(codes)] = member.vector
    return GlobalPureState(config, {n: vec})


def member_channel(
    config: ChainConfig,
    member: ThermalMember,
    tau: float,
    apply_phase_gate: bool = True,
    apply_field_phase: bool = True,
) -> TransferChannel:
    d = config.qudit_dim
    states = [member_initial_state(config, member, mu) for mu in range(d)]
    spectra = chain_spectra(config, sorted({n for s in states for n in s.sectors}))
    finals = [evolve(s, spectra, tau) for s in states]
    K = cross_kernel(finals, d)
    P = correction_phases(config, tau, apply_phase_gate, apply_field_phase)
    return TransferChannel(config, tau, K * P[None, None, :, None] * P.conj()[None, None, None, :])


def thermal_average_fidelity(
    config: ChainConfig,
    temperature: float,
    tau=None,
    n_cut: int | None = None,
    tol: float = 1e-8,
    method: str = "exact",
    n_samples: int = 10_000,
    seed=0,
) -> float:
    """Haar-averaged fidelity with the bus in its Gibbs state.

    Member results are combined with their Boltzmann weights, renormalized
    over the retained members.
    """
    tau = _resolve_tau(config, tau)
    ensemble = bus_thermal_state(config, temperature, n_cut, tol)
    ext = extended_config(config, ensemble)
    alphas = sample_haar(config.qudit_dim, seed, size=n_samples) if method == "mc" else None
    if method not in ("exact", "mc"):
        raise ValueError("method must be 'exact' or 'mc'")
    total = 0.0
    for member in ensemble.members:
        channel = member_channel(ext, member, tau)
        if method == "exact":
            f = haar_average_from_kernel(channel.kernel)
        else:
            f = float(channel.fidelity(alphas).mean())
        total += member.weight * f
    return float(np.clip(total / ensemble.total_weight, 0.0, 1.0))


def thermal_fidelity(
    config: ChainConfig,
    alpha,
    temperature: float,
    tau=None,
    n_cut: int | None = None,
    tol: float = 1e-8,
) -> float:
    """Fidelity of one input state, via explicit ensemble evolution."""
    tau = _resolve_tau(config, tau)
    alpha = as_amplitudes(alpha, config.qudit_dim)
    ensemble = bus_thermal_state(config, temperature, n_cut, tol)
    ext = extended_config(config, ensemble)
    weights = np.array([m.weight for m in ensemble.members])
    weights = weights / weights.sum()
    states = []
    for member in ensemble.members:
        per_sector: dict[int, np.ndarray] = {}
        for mu, a in enumerate(alpha):
            part = member_initial_state(ext, member, mu)
            for n, v in part.per_sector.items():
                per_sector[n] = per_sector.get(n, 0) + a * v
        states.append(GlobalPureState(ext, per_sector))
    sectors = sorted({n for s in states for n in s.sectors})
    evolved = evolve_density(list(zip(weights, states)), chain_spectra(ext, sectors), tau)
    rho = reduce_to_receiver(evolved, config.qudit_dim).rho
    P = correction_phases(config, tau)
    rho = P[:, None] * rho * P.conj()[None, :]
    return float(np.vdot(alpha, rho @ alpha).real)
