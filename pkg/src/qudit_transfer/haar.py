"""Averages over uniformly distributed pure qudit states.

Two routes: Monte Carlo over Hurwitz angles, and an exact contraction of the
transfer kernel with the fourth moments of a uniformly random unit vector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import ChainConfig, DomainError
from .transfer import transfer_channel


@dataclass(frozen=True)
class HurwitzAngles:
    """thetas[p-1] = theta_p in [0, pi/2], chis[p-1] = chi_p in [0, 2 pi), p = 1..d-1."""

    thetas: np.ndarray
    chis: np.ndarray

    def __post_init__(self):
        th = np.asarray(self.thetas, dtype=float)
        ch = np.asarray(self.chis, dtype=float)
        if th.shape != ch.shape or th.ndim != 1 or th.size < 1:
            raise DomainError("need d-1 thetas and d-1 chis")
        if (th < 0).any() or (th > np.pi / 2).any():
            raise DomainError("thetas must lie in [0, pi/2]")
        if (ch < 0).any() or (ch >= 2 * np.pi).any():
            raise DomainError("chis must lie in [0, 2 pi)")
        object.__setattr__(self, "thetas", th)
        object.__setattr__(self, "chis", ch)

    @property
    def dim(self) -> int:
        return self.thetas.size + 1


def _hurwitz(thetas: np.ndarray, chis: np.ndarray) -> np.ndarray:
    # thetas/chis: (..., d-1).  Component j uses cos(theta_{d-1-j}) (cos theta_0 := 1),
    # the product of sin(theta_i) for i > d-1-j, and phase chi_{d-j}.
    m = thetas.shape[-1]
    d = m + 1
    sin = np.sin(thetas)
    cos = np.cos(thetas)
    out = np.empty(thetas.shape[:-1] + (d,), dtype=complex)
    tail = np.ones(thetas.shape[:-1])
    for j in range(d):
        p = d - 1 - j  # theta index (1-based), 0 means "no cosine"
        c = cos[..., p - 1] if p >= 1 else 1.0
        phase = np.exp(1j * chis[..., d - j - 1]) if j >= 1 else 1.0
        out[..., j] = tail * c * phase
        if p >= 1:
            tail = tail * sin[..., p - 1]
    return out


def hurwitz_state(angles: HurwitzAngles) -> np.ndarray:
    return _hurwitz(angles.thetas, angles.chis)


def hurwitz_density(p: int, theta) -> np.ndarray:
    """Normalized density of theta_p: 2p cos(theta) sin(theta)^(2p-1)."""
    theta = np.asarray(theta, dtype=float)
    return 2 * p * np.cos(theta) * np.sin(theta) ** (2 * p - 1)


def sample_hurwitz_angles(d: int, rng: np.random.Generator, size: int) -> tuple[np.ndarray, np.ndarray]:
    """Inverse-CDF draws: P(theta_p <= x) = sin(x)^(2p), chi_p uniform."""
    p = np.arange(1, d)
    u = rng.random((size, d - 1))
    thetas = np.arcsin(u ** (1.0 / (2 * p)))
    chis = 2 * np.pi * rng.random((size, d - 1))
    return thetas, chis


def sample_haar(d: int, rng_seed=None, size: int | None = None) -> np.ndarray:
    """Uniform pure state(s); shape (d,) or (size, d)."""
    if d < 2:
        raise ValueError("d must be >= 2")
    rng = np.random.default_rng(rng_seed)
    n = 1 if size is None else size
    thetas, chis = sample_hurwitz_angles(d, rng, n)
    states = _hurwitz(thetas, chis)
    return states[0] if size is None else states


def quartic_moment_tensor(d: int) -> np.ndarray:
    """T[a, b, c, e] = E[alpha_a alpha_b^* alpha_c alpha_e^*] for a uniform unit vector."""
    eye = np.eye(d)
    return (np.einsum("ab,ce->abce", eye, eye) + np.einsum("ae,cb->abce", eye, eye)) / (d * (d + 1))


def haar_average_from_kernel(kernel: np.ndarray) -> float:
    """Average of sum alpha_m^* alpha_n alpha_a alpha_b^* K[a, b, m, n]."""
    d = kernel.shape[0]
    T = quartic_moment_tensor(d)
    # alpha_a alpha_b^* alpha_n alpha_m^*  ->  T[a, b, n, m]
    return float(np.einsum("abnm,abmn->", T, kernel[:, :, :d, :d]).real)


def average_fidelity_exact(
    config: ChainConfig,
    tau=None,
    apply_phase_gate: bool = True,
    apply_field_phase: bool = True,
) -> float:
    channel = transfer_channel(config, tau, apply_phase_gate, apply_field_phase)
    return haar_average_from_kernel(channel.kernel)


def average_fidelity_mc(
    config: ChainConfig,
    tau=None,
    n_samples: int = 10_000,
    seed=0,
    apply_phase_gate: bool = True,
    apply_field_phase: bool = True,
) -> tuple[float, float]:
    """(mean, standard error) of the fidelity over Hurwitz-sampled input states."""
    if n_samples < 100:
        raise ValueError("n_samples must be at least 100")
    channel = transfer_channel(config, tau, apply_phase_gate, apply_field_phase)
    alphas = sample_haar(config.qudit_dim, seed, size=n_samples)
    F = channel.fidelity(alphas)
    return float(F.mean()), float(F.std(ddof=1) / np.sqrt(n_samples))
