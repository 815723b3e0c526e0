"""Orthogonal chirp reference waveform."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["ReferenceWaveform", "chirp_reference"]


@dataclass(frozen=True)
class ReferenceWaveform:
    matrix: np.ndarray  # (num_tx, num_samples)
    vector: np.ndarray  # columns of ``matrix`` stacked, sample-major


def chirp_reference(num_tx: int, num_samples: int) -> ReferenceWaveform:
    """Chirp matrix T0(k, n) = exp(j2πk(n-1)/N) exp(jπ(n-1)²/N) / sqrt(N_T N).

    ``k`` and ``n`` are 1-based. Rows are mutually orthogonal when
    ``num_tx <= num_samples``.
    """
    if num_tx < 1 or num_samples < 1:
        raise ValueError("num_tx and num_samples must be positive")
    if num_tx > num_samples:
        raise ValueError("orthogonality unavailable: num_tx exceeds num_samples")
    k = np.arange(1, num_tx + 1)[:, None]
    m = np.arange(num_samples)[None, :]  # n - 1
    phase = 2 * np.pi * k * m / num_samples + np.pi * m**2 / num_samples
    matrix = np.exp(1j * phase) / np.sqrt(num_tx * num_samples)
    return ReferenceWaveform(matrix=matrix, vector=matrix.T.reshape(-1).copy())
