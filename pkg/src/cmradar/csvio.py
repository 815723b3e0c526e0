"""CSV artifacts. Numbers are written with 17 significant digits so they
read back bit-exactly."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

__all__ = ["write_waveform", "read_waveform", "write_beampattern", "write_trajectory", "fmt"]


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write(path, header, rows):
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def write_waveform(path, t) -> None:
    t = np.asarray(t, dtype=complex)
    _write(
        path,
        ["index", "real", "imag", "phase_rad"],
        ([i, fmt(z.real), fmt(z.imag), fmt(np.angle(z))] for i, z in enumerate(t)),
    )


def read_waveform(path) -> np.ndarray:
    """Parse a waveform CSV. Raises ValueError on malformed content."""
    with Path(path).open(newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0][:3] != ["index", "real", "imag"]:
        raise ValueError(f"{path}: missing waveform header")
    values = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        try:
            index, re, im = int(row[0]), float(row[1]), float(row[2])
        except (ValueError, IndexError) as exc:
            raise ValueError(f"{path}:{lineno}: cannot parse row {row!r}") from exc
        if index != len(values):
            raise ValueError(f"{path}:{lineno}: expected index {len(values)}, got {index}")
        values.append(complex(re, im))
    if not values:
        raise ValueError(f"{path}: no waveform entries")
    return np.array(values)


def write_beampattern(path, angles_deg, power_db) -> None:
    _write(path, ["angle_deg", "power_db"], ([fmt(a), fmt(p)] for a, p in zip(angles_deg, power_db)))


def write_trajectory(path, deltas, sinr_db) -> None:
    _write(
        path,
        ["refinement", "delta_rad", "sinr_db"],
        ([i, fmt(d), fmt(s)] for i, (d, s) in enumerate(zip(deltas, sinr_db))),
    )
