"""Transmit beampattern and dB helpers."""

from __future__ import annotations

import math

import numpy as np

from cmradar.scene import transmit_steering

__all__ = ["DEFAULT_GRID_DEG", "transmit_covariance", "transmit_pattern", "beampattern", "to_db"]

DEFAULT_GRID_DEG = np.linspace(-90.0, 90.0, 361)


def to_db(linear: float) -> float:
    if not linear > 0:
        raise ValueError("nonpositive power")
    return 10.0 * math.log10(linear)


def transmit_covariance(t, num_tx: int, num_samples: int) -> np.ndarray:
    """R = sum over samples of t_n t_n^H."""
    t = np.asarray(t, dtype=complex)
    if t.shape != (num_tx * num_samples,):
        raise ValueError(f"dimension error: waveform length {t.size} != {num_tx * num_samples}")
    blocks = t.reshape(num_samples, num_tx)  # row n is t_n
    return blocks.T @ blocks.conj()


def transmit_pattern(t, num_tx: int, num_samples: int, grid_deg=DEFAULT_GRID_DEG) -> np.ndarray:
    """Radiated power sum_n |a_t^T t_n|^2 per grid angle, before discarding the imaginary part.

    The steering matrix applies a_t^T to each sample, so this equals
    a_t^H conj(R) a_t. Using R itself would mirror the pattern in angle.
    """
    r = transmit_covariance(t, num_tx, num_samples)
    steer = np.stack([transmit_steering(a, num_tx) for a in np.deg2rad(np.asarray(grid_deg, dtype=float))])
    return np.einsum("gi,ij,gj->g", steer, r, steer.conj())


def beampattern(t, num_tx: int, num_samples: int, grid_deg=DEFAULT_GRID_DEG) -> tuple[np.ndarray, np.ndarray]:
    """Transmit beampattern on ``grid_deg``, in dB relative to its peak.

    Returns ``(angles_deg, power_db)``.
    """
    grid = np.asarray(grid_deg, dtype=float)
    if grid.size == 0:
        raise ValueError("empty angle grid")
    raw = transmit_pattern(t, num_tx, num_samples, grid)
    power = np.maximum(raw.real, 0.0)
    peak = power.max()
    if not peak > 0:
        raise ValueError("waveform radiates no power")
    floor = np.finfo(float).tiny
    return grid, 10.0 * np.log10(np.maximum(power, floor) / peak)
