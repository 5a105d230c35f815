"""Excitation-sector bases in the occupation-number picture.

Site order is (sender, bus 1..N, receiver). A site with occupation n holds
the spin level m = S - n, so n = 0 is the fully polarized state and the
per-site cap is 2S.  Every occupation vector is also given an integer code,
its digits in base 2S + 1 with the sender most significant; ascending codes
are ascending lexicographic order, and the code doubles as the index into the
full tensor-product space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .config import ChainConfig, DomainError

OccupationVector = tuple[int, ...]


def _compositions(n_sites: int, cap: int, total: int):
    if n_sites == 1:
        if total <= cap:
            yield (total,)
        return
    lo = max(0, total - cap * (n_sites - 1))
    for first in range(lo, min(cap, total) + 1):
        for rest in _compositions(n_sites - 1, cap, total - first):
            yield (first,) + rest


def sector_dimension(n_sites: int, twice_spin: int, n: int) -> int:
    """Number of occupation vectors with total ``n`` and per-site cap 2S."""
    if n < 0 or n > n_sites * twice_spin:
        return 0
    counts = np.zeros(n + 1, dtype=object)
    counts[0] = 1
    for _ in range(n_sites):
        new = np.zeros_like(counts)
        for k in range(n + 1):
            new[k] = sum(counts[k - j] for j in range(0, min(twice_spin, k) + 1))
        counts = new
    return int(counts[n])


@dataclass(frozen=True, eq=False)
class SectorBasis:
    n_sites: int
    twice_spin: int
    sector_n: int
    states: np.ndarray = field(repr=False)
    codes: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.codes)

    def __len__(self) -> int:
        return self.dim

    @property
    def place_values(self) -> np.ndarray:
        return (self.twice_spin + 1) ** np.arange(self.n_sites - 1, -1, -1, dtype=np.int64)

    def encode(self, occupations) -> np.ndarray:
        return np.asarray(occupations, dtype=np.int64) @ self.place_values

    def lookup(self, codes) -> np.ndarray:
        """Positions of ``codes`` in this basis, -1 where absent."""
        codes = np.asarray(codes, dtype=np.int64)
        pos = np.searchsorted(self.codes, codes)
        pos = np.clip(pos, 0, max(self.dim - 1, 0))
        found = self.codes[pos] == codes if self.dim else np.zeros(codes.shape, bool)
        return np.where(found, pos, -1)

    def index_of(self, occupations: Sequence[int]) -> int:
        occ = tuple(int(x) for x in occupations)
        if len(occ) != self.n_sites or sum(occ) != self.sector_n:
            raise KeyError(occ)
        i = int(self.lookup(self.encode(occ)))
        if i < 0:
            raise KeyError(occ)
        return i


@lru_cache(maxsize=None)
def sector_basis(n_sites: int, twice_spin: int, n: int) -> SectorBasis:
    """Capped occupation basis of one sector for a bare chain of ``n_sites`` spins."""
    if n < 0 or n > n_sites * twice_spin:
        raise ValueError(f"sector {n} outside [0, {n_sites * twice_spin}]")
    if (twice_spin + 1) ** n_sites >= 2**62:
        raise ValueError("chain too long for 64-bit occupation codes")
    states = np.array(list(_compositions(n_sites, twice_spin, n)), dtype=np.int64)
    states = states.reshape(-1, n_sites)
    place = (twice_spin + 1) ** np.arange(n_sites - 1, -1, -1, dtype=np.int64)
    codes = states @ place
    states.flags.writeable = False
    codes.flags.writeable = False
    return SectorBasis(n_sites, twice_spin, n, states, codes)


def enumerate_sector(config: ChainConfig, n: int) -> SectorBasis:
    limit = min(config.excitation_cap, config.twice_spin * config.n_sites)
    if not 0 <= n <= limit:
        raise ValueError(f"sector {n} outside [0, {limit}] for this configuration")
    return sector_basis(config.n_sites, config.twice_spin, n)


def check_occupations(config: ChainConfig, occupations: Sequence[int]) -> OccupationVector:
    occ = tuple(int(x) for x in occupations)
    if len(occ) != config.n_sites:
        raise DomainError(f"expected {config.n_sites} occupations, got {len(occ)}")
    if any(x < 0 or x > config.twice_spin for x in occ):
        raise DomainError(f"occupations {occ} violate the per-site cap 2S={config.twice_spin}")
    if sum(occ) > config.excitation_cap:
        raise DomainError(f"total excitation {sum(occ)} exceeds cap {config.excitation_cap}")
    return occ


@dataclass(frozen=True, eq=False)
class GlobalPureState:
    """Pure chain state stored sector by sector.

    ``per_sector[n]`` is aligned with ``sector_basis(config.n_sites,
    config.twice_spin, n)``.
    """

    config: ChainConfig
    per_sector: Mapping[int, np.ndarray]

    def basis(self, n: int) -> SectorBasis:
        return sector_basis(self.config.n_sites, self.config.twice_spin, n)

    @property
    def sectors(self) -> list[int]:
        return sorted(self.per_sector)

    def norm(self) -> float:
        return float(np.sqrt(sum(np.vdot(v, v).real for v in self.per_sector.values())))

    def amplitude(self, occupations: Sequence[int]) -> complex:
        occ = tuple(occupations)
        vec = self.per_sector.get(sum(occ))
        if vec is None:
            return 0j
        try:
            return complex(vec[self.basis(sum(occ)).index_of(occ)])
        except KeyError:
            return 0j

    def vdot(self, other: "GlobalPureState") -> complex:
        return complex(
            sum(np.vdot(v, other.per_sector[n]) for n, v in self.per_sector.items() if n in other.per_sector)
        )

    def scaled(self, factor: complex) -> "GlobalPureState":
        return GlobalPureState(self.config, {n: factor * v for n, v in self.per_sector.items()})

    def expectation(self, operators: Mapping[int, object]) -> float:
        total = 0.0
        for n, v in self.per_sector.items():
            total += np.vdot(v, operators[n] @ v).real
        return float(total)

    def items(self):
        """(codes, amplitudes) pairs, one per sector."""
        for n in self.sectors:
            yield self.basis(n).codes, self.per_sector[n]


def product_state(config: ChainConfig, occupation_per_site: Sequence[int]) -> GlobalPureState:
    occ = check_occupations(config, occupation_per_site)
    n = sum(occ)
    basis = enumerate_sector(config, n)
    vec = np.zeros(basis.dim, dtype=complex)
    vec[basis.index_of(occ)] = 1.0
    return GlobalPureState(config, {n: vec})


def superpose(config: ChainConfig, terms) -> GlobalPureState:
    """Sum of ``(amplitude, occupations)`` product terms; no normalization."""
    per_sector: dict[int, np.ndarray] = {}
    for amp, occupations in terms:
        occ = check_occupations(config, occupations)
        n = sum(occ)
        basis = enumerate_sector(config, n)
        vec = per_sector.setdefault(n, np.zeros(basis.dim, dtype=complex))
        vec[basis.index_of(occ)] += amp
    return GlobalPureState(config, per_sector)
