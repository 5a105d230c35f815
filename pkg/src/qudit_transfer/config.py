"""Physical parameter record and the package's exception types."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field


class ConfigurationError(ValueError):
    """Parameters that cannot describe a valid run."""


class UnsupportedConfigurationError(ValueError):
    """Valid chain, but the requested quantity does not exist for it (e.g. even N)."""


class DomainError(ValueError):
    """An input state or operator is outside the domain of an operation."""


class TruncationError(RuntimeError):
    """Thermal truncation could not reach the requested tolerance."""

    def __init__(self, message: str, suggested_n_cut: int | None = None):
        super().__init__(message)
        self.suggested_n_cut = suggested_n_cut


@dataclass(frozen=True)
class ChainConfig:
    """Sender + N-site bus + receiver, every site a spin S.

    The spin is stored as ``twice_spin`` = 2S so half-integer spins are exact.
    ``excitation_cap`` bounds the total number of excitations kept; ``None``
    means d - 1, which is exact for transfer from a bus in its vacuum.
    """

    bus_length: int
    twice_spin: int
    qudit_dim: int
    coupling_j: float = 1.0
    coupling_g: float = 0.1
    field_h: float = 0.0
    excitation_cap: int | None = field(default=None)

    def __post_init__(self):
        if int(self.bus_length) != self.bus_length or self.bus_length < 1:
            raise ConfigurationError(f"bus_length must be an integer >= 1, got {self.bus_length}")
        if int(self.twice_spin) != self.twice_spin or self.twice_spin < 1:
            raise ConfigurationError(f"twice_spin must be an integer >= 1, got {self.twice_spin}")
        if int(self.qudit_dim) != self.qudit_dim or self.qudit_dim < 2:
            raise ConfigurationError(f"qudit_dim must be an integer >= 2, got {self.qudit_dim}")
        if self.qudit_dim > self.twice_spin + 1:
            raise ConfigurationError(
                f"a {self.qudit_dim}-level qudit does not fit on a spin with 2S={self.twice_spin}"
            )
        if not self.coupling_j > 0:
            raise ConfigurationError("coupling_j must be positive")
        if not self.coupling_g >= 0:
            raise ConfigurationError("coupling_g must be non-negative")
        if not self.field_h >= 0:
            raise ConfigurationError("field_h must be non-negative")
        cap = self.qudit_dim - 1 if self.excitation_cap is None else self.excitation_cap
        if int(cap) != cap or cap < 0 or cap > self.twice_spin * self.n_sites:
            raise ConfigurationError(
                f"excitation_cap must lie in [0, {self.twice_spin * self.n_sites}], got {cap}"
            )
        object.__setattr__(self, "excitation_cap", int(cap))
        if 2 * self.qudit_dim > self.twice_spin:
            warnings.warn(
                f"d={self.qudit_dim} is not small compared with 2S={self.twice_spin}; "
                "the resonant-mode picture is only qualitative here",
                stacklevel=3,
            )

    @property
    def spin(self) -> float:
        return self.twice_spin / 2

    @property
    def n_sites(self) -> int:
        return self.bus_length + 2

    @property
    def receiver_site(self) -> int:
        return self.bus_length + 1

    @property
    def local_dim(self) -> int:
        return self.twice_spin + 1

    @classmethod
    def from_spin(cls, bus_length: int, spin: float, qudit_dim: int, **kwargs) -> "ChainConfig":
        twice = 2 * spin
        if abs(twice - round(twice)) > 1e-12:
            raise ConfigurationError(f"spin must be a multiple of 1/2, got {spin}")
        return cls(bus_length, int(round(twice)), qudit_dim, **kwargs)
