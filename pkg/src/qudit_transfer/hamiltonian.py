"""Exact spin-S Hamiltonian blocks, one excitation sector at a time.

Spin ladder operators act on occupations through the Holstein-Primakoff
square roots without truncation:

    S^- |n> = sqrt((n + 1)(2S - n)) |n + 1>
    S^+ |n> = sqrt(n (2S - n + 1))  |n - 1>

The chain Hamiltonian is H = H_B + H_I + H_M with

    H_B = -J  sum_bus  (S+_i S-_{i+1} + h.c.)
    H_I = -g (S+_s S-_1 + S+_r S-_N + h.c.)
    H_M = -h  sum_all  S^z_i

All three conserve the total excitation number, so every builder returns a
single block.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .basis import SectorBasis
from .config import ChainConfig

DENSE_BELOW = 64


def ladder_coefficient(twice_spin: int, n: int, direction: str) -> float:
    """Magnitude of S^+ ("raise") or S^- ("lower") acting on occupation ``n``."""
    if not 0 <= n <= twice_spin:
        raise ValueError(f"occupation {n} outside [0, {twice_spin}]")
    if direction == "lower":
        return float(np.sqrt((n + 1) * (twice_spin - n)))
    if direction == "raise":
        return float(np.sqrt(n * (twice_spin - n + 1)))
    raise ValueError(f"direction must be 'raise' or 'lower', got {direction!r}")


@dataclass(frozen=True, eq=False)
class SectorOperator:
    sector_n: int
    entries: np.ndarray | sp.spmatrix

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def is_sparse(self) -> bool:
        return sp.issparse(self.entries)

    def toarray(self) -> np.ndarray:
        if self.is_sparse:
            return self.entries.toarray()
        return np.asarray(self.entries)

    def __matmul__(self, vec):
        return self.entries @ vec

    def __add__(self, other: "SectorOperator") -> "SectorOperator":
        if other.sector_n != self.sector_n:
            raise ValueError("cannot add operators from different sectors")
        total = self.entries + other.entries
        if sp.issparse(total) and total.shape[0] < DENSE_BELOW:
            total = total.toarray()
        return SectorOperator(self.sector_n, total)


def _assemble(n: int, dim: int, rows, cols, vals) -> SectorOperator:
    mat = sp.coo_matrix((vals, (rows, cols)), shape=(dim, dim), dtype=float).tocsr()
    mat = (mat + mat.T.conj()) * 0.5
    if dim < DENSE_BELOW:
        return SectorOperator(n, mat.toarray())
    return SectorOperator(n, mat.tocsr())


def hopping_operator(basis: SectorBasis, bonds: Sequence[tuple[int, int, float]]) -> SectorOperator:
    """-sum_bonds c (S+_i S-_j + S-_i S+_j) restricted to ``basis``."""
    states = basis.states
    tw = basis.twice_spin
    place = basis.place_values
    rows, cols, vals = [], [], []
    src = np.arange(basis.dim)
    for i, j, strength in bonds:
        if strength == 0:
            continue
        # move one excitation from site `frm` to site `to`: S^-_to S^+_frm
        for to, frm in ((i, j), (j, i)):
            n_to = states[:, to]
            n_frm = states[:, frm]
            ok = (n_frm > 0) & (n_to < tw)
            if not ok.any():
                continue
            amp = np.sqrt((n_to[ok] + 1) * (tw - n_to[ok])) * np.sqrt(n_frm[ok] * (tw - n_frm[ok] + 1))
            target = basis.lookup(basis.codes[ok] + place[to] - place[frm])
            rows.append(target)
            cols.append(src[ok])
            vals.append(-strength * amp)
    if rows:
        rows, cols, vals = np.concatenate(rows), np.concatenate(cols), np.concatenate(vals)
    return _assemble(basis.sector_n, basis.dim, rows, cols, vals)


def zeeman_operator(basis: SectorBasis, field_h: float) -> SectorOperator:
    """-h sum_i S^z_i; a multiple of the identity inside one sector."""
    value = -field_h * (basis.twice_spin * basis.n_sites / 2 - basis.sector_n)
    idx = np.arange(basis.dim)
    return _assemble(basis.sector_n, basis.dim, idx, idx, np.full(basis.dim, value))


def _check(config: ChainConfig, basis: SectorBasis):
    if basis.n_sites != config.n_sites or basis.twice_spin != config.twice_spin:
        raise ValueError("basis does not belong to this chain configuration")


def bus_bonds(config: ChainConfig) -> list[tuple[int, int, float]]:
    return [(i, i + 1, config.coupling_j) for i in range(1, config.bus_length)]


def register_bonds(config: ChainConfig) -> list[tuple[int, int, float]]:
    n = config.bus_length
    return [(0, 1, config.coupling_g), (n, n + 1, config.coupling_g)]


def build_bus_hamiltonian(config: ChainConfig, basis: SectorBasis) -> SectorOperator:
    _check(config, basis)
    return hopping_operator(basis, bus_bonds(config))


def build_interaction_hamiltonian(config: ChainConfig, basis: SectorBasis) -> SectorOperator:
    _check(config, basis)
    return hopping_operator(basis, register_bonds(config))


def build_zeeman_hamiltonian(config: ChainConfig, basis: SectorBasis) -> SectorOperator:
    _check(config, basis)
    return zeeman_operator(basis, config.field_h)


def build_xx_hamiltonian(config: ChainConfig, basis: SectorBasis) -> SectorOperator:
    _check(config, basis)
    return hopping_operator(basis, bus_bonds(config) + register_bonds(config))


def build_total_hamiltonian(config: ChainConfig, basis: SectorBasis) -> SectorOperator:
    return build_xx_hamiltonian(config, basis) + build_zeeman_hamiltonian(config, basis)


def bus_only_hamiltonian(config: ChainConfig, basis: SectorBasis) -> SectorOperator:
    """Bus XX coupling plus the bus Zeeman term, on a basis of the N bus sites alone."""
    if basis.n_sites != config.bus_length or basis.twice_spin != config.twice_spin:
        raise ValueError("basis must span the bus sites only")
    bonds = [(i, i + 1, config.coupling_j) for i in range(config.bus_length - 1)]
    return hopping_operator(basis, bonds) + zeeman_operator(basis, config.field_h)
