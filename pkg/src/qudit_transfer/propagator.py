"""Spectral time evolution of sector-decomposed states."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.linalg import eigh

from .basis import GlobalPureState, enumerate_sector
from .config import ChainConfig, ConfigurationError, DomainError
from .hamiltonian import SectorOperator, build_total_hamiltonian


@dataclass(frozen=True, eq=False)
class SectorSpectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def propagator(self, tau: float) -> np.ndarray:
        """exp(-i H tau) as a dense matrix."""
        V = self.eigenvectors
        return (V * np.exp(-1j * self.eigenvalues * tau)) @ V.conj().T

    def apply(self, vec: np.ndarray, tau: float) -> np.ndarray:
        V = self.eigenvectors
        return V @ (np.exp(-1j * self.eigenvalues * tau) * (V.conj().T @ vec))


def decompose(op: SectorOperator | np.ndarray, atol: float = 1e-12) -> SectorSpectrum:
    """Full eigendecomposition with ascending eigenvalues.

    Each eigenvector is rephased so that its largest-magnitude component
    (first one on ties) is real and positive.
    """
    mat = op.toarray() if isinstance(op, SectorOperator) else np.asarray(op)
    if mat.shape[0] == 0:
        return SectorSpectrum(np.zeros(0), np.zeros((0, 0), dtype=complex))
    scale = max(1.0, float(np.abs(mat).max()))
    if np.abs(mat - mat.conj().T).max() > atol * scale:
        raise ValueError("decompose() requires a Hermitian operator")
    evals, evecs = eigh(mat)
    evecs = evecs.astype(complex)
    lead = np.argmax(np.abs(evecs) >= np.abs(evecs).max(axis=0) * (1 - 1e-9), axis=0)
    phase = evecs[lead, np.arange(evecs.shape[1])]
    evecs /= phase / np.abs(phase)
    evals.flags.writeable = False
    evecs.flags.writeable = False
    return SectorSpectrum(evals, evecs)


@lru_cache(maxsize=4096)
def _chain_spectrum(config: ChainConfig, n: int) -> SectorSpectrum:
    return decompose(build_total_hamiltonian(config, enumerate_sector(config, n)))


def chain_spectra(config: ChainConfig, sectors: Iterable[int] | None = None) -> dict[int, SectorSpectrum]:
    """Spectra of the total chain Hamiltonian; cached per (config, sector)."""
    if sectors is None:
        sectors = range(config.excitation_cap + 1)
    return {n: _chain_spectrum(config, n) for n in sectors}


def evolve(state: GlobalPureState, spectra: Mapping[int, SectorSpectrum], tau: float) -> GlobalPureState:
    out = {}
    for n, vec in state.per_sector.items():
        if n not in spectra:
            raise ConfigurationError(f"no spectrum supplied for sector {n}")
        out[n] = spectra[n].apply(vec, tau)
    return GlobalPureState(state.config, out)


def evolve_chain(state: GlobalPureState, tau: float) -> GlobalPureState:
    """Evolve under the state's own chain Hamiltonian."""
    return evolve(state, chain_spectra(state.config, state.sectors), tau)


def evolve_density(
    ensemble: Sequence[tuple[float, GlobalPureState]],
    spectra: Mapping[int, SectorSpectrum],
    tau: float,
) -> list[tuple[float, GlobalPureState]]:
    weights = np.array([w for w, _ in ensemble], dtype=float)
    if (weights < 0).any() or abs(weights.sum() - 1) > 1e-10:
        raise DomainError("ensemble weights must be non-negative and sum to 1")
    return [(w, evolve(psi, spectra, tau)) for w, psi in ensemble]
