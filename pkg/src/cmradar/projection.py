"""Per-entry feasible regions on the unit circle and their orthogonal projector.

Under the constant-modulus constraint, similarity to a reference confines
the phase of entry ``k`` to the arc ``[omega_k, omega_k + delta]``. The
convex relaxation replaces the arc with its convex hull ("zone I"): the
unit disk cut by the chord AB. All geometry here works at unit radius;
:func:`project_waveform` rescales to the waveform's ``1/sqrt(n)`` modulus.

The projector classifies a point Q into five zones:

* I    -- inside the hull: Q itself
* II   -- behind the chord, between the perpendiculars at A and B: foot F
* III  -- the normal cones at the endpoints: A or B
* IV   -- outside the disk in front of the arc: Q / |Q|

With ``m`` the unit vector towards the arc midpoint, ``h = cos(delta/2)``
and ``s = sin(delta/2)``, the chord lies on ``<m, Q> = h`` and spans
``|cross(m, Q)| <= s``. Writing the chord side test as ``<m, Q> >= h``
covers both ``delta <= pi`` and ``delta >= pi``: multiplying through by
``h`` recovers ``c.Q >= |C|^2`` for the first and the flipped inequality
for the second, and it stays well defined at ``delta = pi`` where ``C``
collapses to the origin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from cmradar import _backend

__all__ = [
    "ArcRegion",
    "ArcGeometry",
    "FULL_CIRCLE_TOL",
    "region_from_similarity",
    "arc_geometry",
    "project_entry",
    "project_waveform",
    "sample_hull",
    "phase_offset",
]

TWO_PI = 2.0 * math.pi
FULL_CIRCLE_TOL = 1e-9

# kernel modes
MODE_ARC, MODE_POINT, MODE_DISK = 0, 1, 2


def phase_offset(angle, omega):
    """Counter-clockwise angular distance from ``omega`` to ``angle`` in [0, 2π)."""
    return np.mod(np.asarray(angle) - np.asarray(omega), TWO_PI)


@dataclass(frozen=True, eq=False)
class ArcRegion:
    """Phase intervals ``[omega_k, omega_k + delta]`` sharing one width."""

    omega: np.ndarray
    delta: float

    def __post_init__(self):
        object.__setattr__(self, "omega", np.asarray(self.omega, dtype=float))
        if not 0.0 <= self.delta <= TWO_PI + 1e-12:
            raise ValueError(f"delta must lie in [0, 2π], got {self.delta}")

    def __len__(self):
        return self.omega.shape[0]

    @property
    def mode(self) -> int:
        if self.delta <= 0.0:
            return MODE_POINT
        if self.delta >= TWO_PI - FULL_CIRCLE_TOL:
            return MODE_DISK
        return MODE_ARC

    @cached_property
    def midpoint(self) -> np.ndarray:
        """Unit phasors at the arc midpoints."""
        return np.exp(1j * (self.omega + 0.5 * self.delta))

    def contains_phase(self, angle, tol: float = 1e-9) -> np.ndarray:
        off = phase_offset(angle, self.omega)
        return (off <= self.delta + tol) | (off >= TWO_PI - tol)


def region_from_similarity(t0, epsilon: float) -> ArcRegion:
    """Arc region equivalent to ``||t - t0||_inf <= epsilon`` at unit modulus."""
    if not 0.0 <= epsilon <= 2.0:
        raise ValueError(f"similarity parameter out of range: {epsilon}")
    half = math.acos(1.0 - epsilon**2 / 2.0)
    return ArcRegion(omega=np.angle(np.asarray(t0)) - half, delta=2.0 * half)


@dataclass(frozen=True)
class ArcGeometry:
    """Endpoints A (at ``omega + delta``), B (at ``omega``), chord midpoint C,
    and the perpendiculars l_A, l_B through the endpoints in slope-intercept
    form. ``slope`` is infinite when the perpendiculars are vertical, in
    which case the intercepts hold the x-coordinates of the lines instead.
    """

    a_point: tuple[float, float]
    b_point: tuple[float, float]
    c_point: tuple[float, float]
    slope: float
    d_a: float
    d_b: float

    @property
    def vertical(self) -> bool:
        return math.isinf(self.slope)

    def foot(self, x: float, y: float) -> tuple[float, float]:
        """Foot of the perpendicular from (x, y) onto the line AB."""
        cx, cy = self.c_point
        r2 = cx * cx + cy * cy
        if cx == 0.0:
            return x, cy
        if cy == 0.0:
            return cx, y
        k = self.slope
        xf = (r2 - cy * (y - k * x)) / (cx + k * cy)
        return xf, (r2 - cx * xf) / cy


def arc_geometry(omega: float, delta: float) -> ArcGeometry:
    if not 0.0 < delta < TWO_PI:
        raise ValueError("arc geometry needs 0 < delta < 2π")
    ax, ay = math.cos(omega + delta), math.sin(omega + delta)
    bx, by = math.cos(omega), math.sin(omega)
    cx, cy = 0.5 * (ax + bx), 0.5 * (ay + by)
    if ax + bx == 0.0:
        return ArcGeometry((ax, ay), (bx, by), (cx, cy), math.inf, ax, bx)
    k = (ay + by) / (ax + bx)
    return ArcGeometry((ax, ay), (bx, by), (cx, cy), k, ay - ax * k, by - bx * k)


def project_entry(q: complex, omega: float, delta: float) -> complex:
    """Nearest point to ``q`` in the convex hull of the unit arc."""
    q = complex(q)
    if delta <= 0.0:
        return complex(math.cos(omega), math.sin(omega))
    if delta >= TWO_PI - FULL_CIRCLE_TOL:
        r = abs(q)
        return q / r if r > 1.0 else q

    mid = omega + 0.5 * delta
    mx, my = math.cos(mid), math.sin(mid)
    h, s = math.cos(0.5 * delta), math.sin(0.5 * delta)
    x, y = q.real, q.imag
    along = mx * x + my * y  # component towards the arc midpoint
    across = mx * y - my * x  # signed offset along the chord, positive towards A

    if along >= h and x * x + y * y <= 1.0:
        return q
    if along <= h and -s <= across <= s:
        return complex(h * mx - across * my, h * my + across * mx)
    if across >= s and h * across - s * along >= 0.0:
        return complex(math.cos(omega + delta), math.sin(omega + delta))
    if across <= -s and h * across + s * along <= 0.0:
        return complex(math.cos(omega), math.sin(omega))
    return q / abs(q)


def project_waveform(t, region: ArcRegion) -> np.ndarray:
    """Entrywise projection of a waveform of modulus ``1/sqrt(n)`` onto ``region``."""
    t = np.asarray(t, dtype=complex)
    if t.shape != region.omega.shape:
        raise ValueError(f"dimension error: waveform {t.shape} vs region {region.omega.shape}")
    return _backend.project(t, region.omega, region.delta, math.sqrt(t.shape[0]))


def sample_hull(omega: float, delta: float, size: int = 100_000, rng=None) -> np.ndarray:
    """Dense sample of the arc's convex hull at unit radius.

    Half the budget discretizes the arc and the chord AB; the rest lies on
    random chords between arc points, which together sweep the hull.
    """
    rng = np.random.default_rng(rng)
    n_arc = size // 4
    n_chord = size // 4
    n_inner = size - n_arc - n_chord
    arc = np.exp(1j * (omega + np.linspace(0.0, delta, n_arc)))
    a, b = np.exp(1j * (omega + delta)), np.exp(1j * omega)
    chord = b + np.linspace(0.0, 1.0, n_chord) * (a - b)
    p = np.exp(1j * (omega + delta * rng.random(n_inner)))
    r = np.exp(1j * (omega + delta * rng.random(n_inner)))
    inner = p + rng.random(n_inner) * (r - p)
    return np.concatenate([arc, chord, inner])
