"""Independent reference computations used by the tests.

None of these share code with the paths they check: the hull projection
here enumerates boundary candidates instead of classifying zones, the
eigenvalues come from LAPACK, and the plain projected-gradient loop is a
separate numba kernel.
"""

from __future__ import annotations

import itertools
import math

import numba
import numpy as np

from cmradar.projection import sample_hull


def hull_distance_by_sampling(q: complex, omega: float, delta: float, size=100_000, rng=0) -> float:
    pts = sample_hull(omega, delta, size=size, rng=rng)
    return float(np.min(np.abs(pts - q)))


@numba.njit(cache=True)
def _in_arc(angle, omega, delta):
    off = (angle - omega) % (2 * math.pi)
    return off <= delta + 1e-15 or off >= 2 * math.pi - 1e-15


@numba.njit(cache=True)
def candidate_projection(q, omega, delta):
    """Nearest hull point by enumerating every kind of boundary candidate."""
    a = complex(math.cos(omega + delta), math.sin(omega + delta))
    b = complex(math.cos(omega), math.sin(omega))
    ab = a - b
    # q lies in the removed cap iff it is on the far side of line BA from the arc midpoint
    mid = complex(math.cos(omega + delta / 2), math.sin(omega + delta / 2))
    side_q = ab.real * (q - b).imag - ab.imag * (q - b).real
    side_m = ab.real * (mid - b).imag - ab.imag * (mid - b).real
    if abs(q) <= 1.0 and side_q * side_m >= 0.0:
        return q
    best = a
    best_d = abs(q - a)
    if abs(q - b) < best_d:
        best, best_d = b, abs(q - b)
    r = abs(q)
    if r > 0.0:
        radial = q / r
        ang = math.atan2(q.imag, q.real)
        if _in_arc(ang, omega, delta) and abs(q - radial) < best_d:
            best, best_d = radial, abs(q - radial)
    den = ab.real * ab.real + ab.imag * ab.imag
    s = ((q - b).real * ab.real + (q - b).imag * ab.imag) / den
    if s < 0.0:
        s = 0.0
    elif s > 1.0:
        s = 1.0
    foot = b + s * ab
    if abs(q - foot) < best_d:
        best = foot
    return best


@numba.njit(cache=True)
def _plain_pg(psi, lam, omega, delta, start, iterations):
    n = start.shape[0]
    scale = math.sqrt(n)
    tau = 1.0 / (2.0 * lam)
    t = start.copy()
    for k in range(n):
        t[k] = candidate_projection(t[k] * scale, omega[k], delta) / scale
    trace = np.empty(iterations)
    g = np.empty(n, dtype=np.complex128)
    for it in range(iterations):
        for i in range(n):
            acc = 0j
            for j in range(n):
                acc += psi[i, j] * t[j]
            g[i] = acc - lam * t[i]
        for i in range(n):
            t[i] = candidate_projection((t[i] + 2.0 * tau * g[i]) * scale, omega[i], delta) / scale
        val = 0.0
        for i in range(n):
            acc = 0j
            for j in range(n):
                acc += psi[i, j] * t[j]
            val += (t[i].conjugate() * (acc - lam * t[i])).real
        trace[it] = val
    return t, trace


def plain_projected_gradient(psi, omega, delta, start, iterations=100_000, margin=1e-6):
    """Unaccelerated projected gradient ascent on the same relaxed problem."""
    psi = np.ascontiguousarray(psi, dtype=np.complex128)
    lam = (1.0 + margin) * float(np.linalg.eigvalsh(psi)[-1])
    return _plain_pg(psi, lam, np.ascontiguousarray(omega, dtype=float), float(delta),
                     np.asarray(start, dtype=np.complex128), iterations)


def phase_grid_optimum(psi, omega, delta, points=64) -> float:
    """max t^H psi t over a phase grid inside each arc, all combinations."""
    psi = np.asarray(psi)
    n = psi.shape[0]
    steps = np.linspace(0.0, delta, points)
    per_entry = [np.exp(1j * (w + steps)) / math.sqrt(n) for w in omega]
    best = -np.inf
    # enumerate all but the last entry; vectorize over the last
    last = per_entry[-1]
    for head in itertools.product(*per_entry[:-1]):
        head = np.array(head)
        h_val = np.vdot(head, psi[:-1, :-1] @ head).real
        cross = 2.0 * np.real(np.conj(head) @ psi[:-1, -1] * last)
        tail = psi[-1, -1].real * np.abs(last) ** 2
        best = max(best, float(np.max(h_val + cross + tail)))
    return best


def iterations_to_accuracy(trace, optimum, rel=1e-6):
    """1-based index of the first trace value within ``rel`` of ``optimum``."""
    hit = np.nonzero(np.abs(np.asarray(trace) - optimum) <= rel * abs(optimum))[0]
    return int(hit[0]) + 1 if hit.size else None


def random_psd(rng, n, rank=None):
    rank = n if rank is None else rank
    g = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    return g @ g.conj().T
