"""Colocated narrowband MIMO radar signal model.

All powers are linear ratios to the receiver noise variance, which is fixed
to one. Angles are radians. A waveform is a complex vector of length
``num_tx * num_samples`` stacked sample-major: entries
``[n * num_tx:(n + 1) * num_tx]`` are the antenna vector of sample ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

__all__ = [
    "Clutter",
    "Scene",
    "transmit_steering",
    "receive_steering",
    "steering_matrix",
    "clutter_covariance",
    "optimal_filter",
    "sinr",
    "psi",
    "simulate_receive",
    "MonteCarloResult",
]

_HALF_PI = 0.5 * np.pi


@dataclass(frozen=True)
class Clutter:
    angle: float
    power_ratio: float

    def __post_init__(self):
        if not -_HALF_PI < self.angle < _HALF_PI:
            raise ValueError(f"clutter angle {self.angle} outside (-pi/2, pi/2)")
        if not self.power_ratio > 0:
            raise ValueError(f"clutter power ratio must be positive, got {self.power_ratio}")


@dataclass(frozen=True)
class Scene:
    """Array sizes, target and signal-dependent clutter sources."""

    num_tx: int
    num_rx: int
    num_samples: int
    target_angle: float
    target_power_ratio: float
    clutters: tuple[Clutter, ...] = field(default_factory=tuple)

    def __post_init__(self):
        for name in ("num_tx", "num_rx", "num_samples"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value}")
        if not -_HALF_PI < self.target_angle < _HALF_PI:
            raise ValueError(f"target angle {self.target_angle} outside (-pi/2, pi/2)")
        if not self.target_power_ratio > 0:
            raise ValueError("target power ratio must be positive")
        object.__setattr__(self, "clutters", tuple(self.clutters))

    @property
    def tx_dim(self) -> int:
        return self.num_tx * self.num_samples

    @property
    def rx_dim(self) -> int:
        return self.num_rx * self.num_samples


def transmit_steering(angle: float, num_tx: int) -> np.ndarray:
    """Half-wavelength ULA steering vector, phase reference at element 0."""
    return np.exp(1j * np.pi * np.arange(num_tx) * np.sin(angle))


receive_steering = transmit_steering


def steering_matrix(angle: float, scene: Scene) -> np.ndarray:
    block = np.outer(receive_steering(angle, scene.num_rx), transmit_steering(angle, scene.num_tx))
    return np.kron(np.eye(scene.num_samples), block)


def _check_waveform(t, scene: Scene) -> np.ndarray:
    t = np.asarray(t, dtype=complex)
    if t.shape != (scene.tx_dim,):
        raise ValueError(f"dimension error: waveform has shape {t.shape}, expected ({scene.tx_dim},)")
    return t


def _echoes(t: np.ndarray, scene: Scene) -> list[tuple[float, np.ndarray]]:
    # M(phi) t computed blockwise: sample n contributes a_r * (a_t^T t_n)
    blocks = t.reshape(scene.num_samples, scene.num_tx)
    out = []
    for c in scene.clutters:
        gains = blocks @ transmit_steering(c.angle, scene.num_tx)
        out.append((c.power_ratio, np.outer(gains, receive_steering(c.angle, scene.num_rx)).ravel()))
    return out


def clutter_covariance(t, scene: Scene) -> np.ndarray:
    """Signal-dependent clutter covariance, sum of I_m M t t^H M^H."""
    t = _check_waveform(t, scene)
    cov = np.zeros((scene.rx_dim, scene.rx_dim), dtype=complex)
    for power, echo in _echoes(t, scene):
        cov += power * np.outer(echo, echo.conj())
    return cov


def _disturbance_factor(t: np.ndarray, scene: Scene):
    return sla.cho_factor(clutter_covariance(t, scene) + np.eye(scene.rx_dim), lower=True)


def optimal_filter(t, scene: Scene) -> np.ndarray:
    """SINR-maximizing receive filter [S(t) + I]^{-1} M(phi_0) t."""
    t = _check_waveform(t, scene)
    rhs = steering_matrix(scene.target_angle, scene) @ t
    cov = clutter_covariance(t, scene) + np.eye(scene.rx_dim)
    f = sla.cho_solve(sla.cho_factor(cov, lower=True), rhs)
    residual = np.linalg.norm(cov @ f - rhs)
    if residual > 1e-8 * max(np.linalg.norm(rhs), 1.0):
        raise ArithmeticError(f"internal error: filter solve residual {residual:.3e}")
    return f


def sinr(t, f, scene: Scene) -> float:
    """Output SINR (linear) of waveform ``t`` through filter ``f``."""
    t = _check_waveform(t, scene)
    f = np.asarray(f, dtype=complex)
    if f.shape != (scene.rx_dim,):
        raise ValueError(f"dimension error: filter has shape {f.shape}, expected ({scene.rx_dim},)")
    noise = np.vdot(f, f).real
    if noise == 0.0:
        raise ValueError("degenerate filter")
    signal = abs(np.vdot(f, steering_matrix(scene.target_angle, scene) @ t)) ** 2
    clutter = sum(power * abs(np.vdot(f, echo)) ** 2 for power, echo in _echoes(t, scene))
    return float(scene.target_power_ratio * signal / (clutter + noise))


def psi(t, scene: Scene) -> np.ndarray:
    """M^H(phi_0) [S(t) + I]^{-1} M(phi_0), built as X^H X with X = L^{-1} M."""
    t = _check_waveform(t, scene)
    m0 = steering_matrix(scene.target_angle, scene)
    chol, lower = _disturbance_factor(t, scene)
    x = sla.solve_triangular(chol, m0, lower=lower)
    return x.conj().T @ x


@dataclass(frozen=True)
class MonteCarloResult:
    empirical_sinr: float
    std_error: float
    draws: int


def simulate_receive(t, f, scene: Scene, seed: int, draws: int) -> MonteCarloResult:
    """Monte Carlo estimate of the output SINR with complex Gaussian amplitudes.

    Each draw forms the filter output ``f^H r``; the noise term ``f^H n`` is
    drawn directly as CN(0, ||f||^2), which is its exact distribution for
    white noise of unit variance. The estimate is the ratio of the mean
    target power to the mean interference-plus-noise power; the standard
    error comes from the delta method on that ratio of means.
    """
    if draws < 100:
        raise ValueError("insufficient draws")
    t = _check_waveform(t, scene)
    f = np.asarray(f, dtype=complex)
    rng = np.random.default_rng(seed)

    def cn(var, size):
        return np.sqrt(var / 2.0) * (rng.standard_normal(size) + 1j * rng.standard_normal(size))

    gain0 = np.vdot(f, steering_matrix(scene.target_angle, scene) @ t)
    signal = cn(scene.target_power_ratio, draws) * gain0
    disturbance = cn(np.vdot(f, f).real, draws)
    for power, echo in _echoes(t, scene):
        disturbance += cn(power, draws) * np.vdot(f, echo)

    x = np.abs(signal) ** 2
    y = np.abs(disturbance) ** 2
    mx, my = x.mean(), y.mean()
    ratio = mx / my
    cov = np.cov(np.vstack([x, y]), ddof=1)
    var = (cov[0, 0] / my**2 - 2 * mx * cov[0, 1] / my**3 + mx**2 * cov[1, 1] / my**4) / draws
    return MonteCarloResult(float(ratio), float(np.sqrt(max(var, 0.0))), draws)
