"""Sequential convex refinement: re-fix psi, solve with AGP, halve the arcs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from cmradar.projection import TWO_PI, ArcRegion, phase_offset, region_from_similarity
from cmradar.scene import Scene, optimal_filter, psi, sinr
from cmradar.solver import SolverConfig, agp_solve

__all__ = ["PipelineConfig", "RunRecord", "halve_region", "default_delta_min", "optimize_waveform"]

FEASIBILITY_TOL = 1e-6


def default_delta_min(delta_initial: float) -> float:
    return max(1e-3, delta_initial / 2**10)


@dataclass(frozen=True)
class PipelineConfig:
    epsilon: float
    delta_min: float | None = None  # None: default_delta_min(initial delta)
    solver: SolverConfig = field(default_factory=SolverConfig)
    psi_update_each_refinement: bool = True

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 2.0:
            raise ValueError(f"similarity parameter out of range: {self.epsilon}")
        if self.delta_min is not None and not self.delta_min > 0:
            raise ValueError("delta_min must be positive")


@dataclass(eq=False)
class RunRecord:
    """Outcome of :func:`optimize_waveform`.

    ``sinr_trajectory_db[0]`` is the reference waveform's SINR; entry ``i``
    for ``i >= 1`` follows refinement ``i``, solved with arc width
    ``per_refinement_delta[i - 1]``. The returned waveform is the best one
    seen, reference included.
    """

    sinr_trajectory_db: list[float]
    per_refinement_delta: list[float]
    final_waveform: np.ndarray
    final_filter: np.ndarray
    final_sinr_db: float
    refinements: int
    initial_delta: float
    converged: bool
    inner_iterations: list[int] = field(default_factory=list)
    relaxed_traces: list[np.ndarray] = field(default_factory=list)

    @property
    def reference_sinr_db(self) -> float:
        return self.sinr_trajectory_db[0]


def halve_region(region: ArcRegion, solved) -> ArcRegion:
    """Keep, per entry, the half arc holding the solved phase.

    A phase exactly at the midpoint stays with the lower half.
    """
    solved = np.asarray(solved, dtype=complex)
    off = phase_offset(np.angle(solved), region.omega)
    # phases a hair below omega wrap to ~2π; fold them back to 0
    off = np.where(off > TWO_PI - FEASIBILITY_TOL, 0.0, off)
    if np.any(off > region.delta + FEASIBILITY_TOL):
        raise ValueError("infeasible refinement input")
    half = 0.5 * region.delta
    omega = np.where(off <= half, region.omega, region.omega + half)
    return ArcRegion(omega=omega, delta=half)


def _sinr_db(t, scene: Scene) -> float:
    return 10.0 * math.log10(sinr(t, optimal_filter(t, scene), scene))


def optimize_waveform(scene: Scene, t0, config: PipelineConfig) -> RunRecord:
    t0 = np.asarray(t0, dtype=complex)
    if t0.shape != (scene.tx_dim,):
        raise ValueError(f"dimension error: reference has shape {t0.shape}")
    if not np.allclose(np.abs(t0), 1.0 / math.sqrt(scene.tx_dim), rtol=0, atol=1e-9):
        raise ValueError("reference waveform is not constant-modulus")

    region = region_from_similarity(t0, config.epsilon)
    delta_min = config.delta_min if config.delta_min is not None else default_delta_min(region.delta)
    ref_db = _sinr_db(t0, scene)
    trajectory = [ref_db]
    deltas: list[float] = []
    iterations: list[int] = []
    traces: list[np.ndarray] = []
    best_db, best_t = ref_db, t0
    converged = True

    current = t0
    fixed_psi = None
    while region.delta > 0.0 and region.delta > delta_min:
        if config.psi_update_each_refinement or fixed_psi is None:
            fixed_psi = psi(current, scene)
        result = agp_solve(fixed_psi, region, current, config.solver)
        current = result.waveform
        converged &= result.converged
        deltas.append(region.delta)
        iterations.append(result.iterations)
        traces.append(result.objective_trace)
        value = _sinr_db(current, scene)
        trajectory.append(value)
        if value > best_db:
            best_db, best_t = value, current
        region = halve_region(region, current)

    return RunRecord(
        sinr_trajectory_db=trajectory,
        per_refinement_delta=deltas,
        final_waveform=best_t,
        final_filter=optimal_filter(best_t, scene),
        final_sinr_db=best_db,
        refinements=len(deltas),
        initial_delta=deltas[0] if deltas else region.delta,
        converged=converged,
        inner_iterations=iterations,
        relaxed_traces=traces,
    )
