"""Linearized spin-wave predictions for the resonant transfer protocol.

With the bus in its vacuum and S large, the bus is a set of free modes
b_k with energies eps_k = -4SJ cos(k pi/(N+1)) and register couplings
t_k = -(2Sg/A) sin(k pi/(N+1)), A = sqrt((N+1)/2).  For odd N the mode
kappa = (N+1)/2 sits at zero energy and both registers talk to it
resonantly; everything else is dropped.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .config import ChainConfig, UnsupportedConfigurationError


@dataclass(frozen=True)
class EffectivePrediction:
    kappa: int
    t_kappa: float
    tau0: float
    mode_energies: np.ndarray
    mode_couplings: np.ndarray

    @property
    def swap_phase_exponent(self) -> int:
        return self.kappa


def mode_spectrum(config: ChainConfig) -> tuple[np.ndarray, np.ndarray]:
    """Bus mode energies eps_k and register couplings t_k for k = 1..N."""
    n = config.bus_length
    k = np.arange(1, n + 1)
    s = config.spin
    amp = np.sqrt((n + 1) / 2)
    eps = -4 * s * config.coupling_j * np.cos(k * np.pi / (n + 1))
    t = -(2 * s * config.coupling_g / amp) * np.sin(k * np.pi / (n + 1))
    if n % 2 == 1:
        eps[(n + 1) // 2 - 1] = 0.0
    return eps, t


def resonant_mode(config: ChainConfig) -> int:
    n = config.bus_length
    if n % 2 == 0:
        raise UnsupportedConfigurationError(
            f"bus length N={n} is even: the bus has no zero-energy mode, so there is no "
            "resonant transfer time or swap phase"
        )
    return (n + 1) // 2


def optimal_time(config: ChainConfig) -> float:
    """tau0 = pi / (sqrt(2) |t_kappa|)."""
    kappa = resonant_mode(config)
    _, t = mode_spectrum(config)
    t_kappa = t[kappa - 1]
    if t_kappa == 0:
        raise UnsupportedConfigurationError("g = 0: the registers never couple to the bus")
    return float(np.pi / (np.sqrt(2) * abs(t_kappa)))


def phase_gate(kappa: int, d: int) -> np.ndarray:
    """diag((-1)^(mu kappa)) for mu = 0..d-1."""
    if d < 2:
        raise ValueError("d must be >= 2")
    return np.diag((-1.0) ** (np.arange(d) * kappa)).astype(complex)


def predict(config: ChainConfig) -> EffectivePrediction:
    kappa = resonant_mode(config)
    eps, t = mode_spectrum(config)
    return EffectivePrediction(kappa, float(t[kappa - 1]), optimal_time(config), eps, t)


def effective_generator(config: ChainConfig) -> np.ndarray:
    """Single-excitation generator on (sender, kappa mode, receiver)."""
    kappa = resonant_mode(config)
    _, t = mode_spectrum(config)
    tk = t[kappa - 1]
    sign = (-1.0) ** (kappa - 1)
    return tk * np.array([[0, 1, 0], [1, 0, sign], [0, sign, 0]], dtype=float)


def effective_evolution(config: ChainConfig, tau: float) -> np.ndarray:
    """exp(-i H_eff tau); column j is the image of mode j in (s, kappa, r) order."""
    return expm(-1j * tau * effective_generator(config))


def effective_evolution_closed_form(config: ChainConfig, tau: float) -> np.ndarray:
    """Same unitary assembled from the bright/dark-mode solution."""
    kappa = resonant_mode(config)
    _, t = mode_spectrum(config)
    w = np.sqrt(2) * t[kappa - 1] * tau
    e = (-1.0) ** (kappa - 1)
    c, s = np.cos(w), np.sin(w)
    return np.array(
        [
            [(1 + c) / 2, -1j * s / np.sqrt(2), e * (c - 1) / 2],
            [-1j * s / np.sqrt(2), c, -1j * e * s / np.sqrt(2)],
            [e * (c - 1) / 2, -1j * e * s / np.sqrt(2), (1 + c) / 2],
        ],
        dtype=complex,
    )
