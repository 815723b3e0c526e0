"""Accelerated gradient projection (AGP) for one relaxed QCQP subproblem.

For a fixed PSD matrix ``psi`` the subproblem maximizes ``t^H psi t`` over
constant-modulus waveforms whose phases lie in an :class:`ArcRegion`. On
that set ``||t||^2 = 1``, so shifting to ``P = psi - lam I`` with
``lam >= lambda_max(psi)`` changes the objective by the constant ``lam``
while making it concave. Replacing each arc by its convex hull then gives
a convex problem, solved by FISTA steps interleaved with the closed-form
projection. The result is mapped back onto the arcs by keeping phases.

Per iteration the cost is one dense matrix-vector product, O((N_T N)^2),
plus an O(N_T N) projection.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from cmradar import _backend
from cmradar.projection import TWO_PI, ArcRegion, phase_offset, project_waveform

__all__ = [
    "EigenvalueStalled",
    "SolverConfig",
    "SubproblemMatrices",
    "SubproblemResult",
    "max_eigenvalue",
    "build_subproblem",
    "fista_step",
    "agp_solve",
    "to_constant_modulus",
]

log = logging.getLogger(__name__)

POWER_ITER_MAX = 10_000


class EigenvalueStalled(ArithmeticError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    zeta: float = 1e-6
    max_iterations: int = 5000
    lambda_margin: float = 1e-6
    power_iter_tol: float = 1e-9

    def __post_init__(self):
        if not self.zeta >= 0:
            raise ValueError("zeta must be nonnegative")
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 2:
            raise ValueError("max_iterations must be an integer >= 2")
        if not self.lambda_margin >= 0:
            raise ValueError("lambda_margin must be nonnegative")
        if not self.power_iter_tol > 0:
            raise ValueError("power_iter_tol must be positive")


@dataclass(frozen=True, eq=False)
class SubproblemMatrices:
    psi: np.ndarray
    lam: float
    p: np.ndarray
    tau: float


@dataclass(frozen=True, eq=False)
class SubproblemResult:
    waveform: np.ndarray  # constant-modulus output
    relaxed: np.ndarray  # solution of the convex relaxation
    iterations: int
    objective_trace: np.ndarray  # t^H P t of each projected iterate
    converged: bool
    sub: SubproblemMatrices

    @property
    def relaxed_objective(self) -> float:
        return float(np.vdot(self.relaxed, self.sub.p @ self.relaxed).real)

    @property
    def objective(self) -> float:
        """``t^H psi t`` of the constant-modulus output."""
        return float(np.vdot(self.waveform, self.sub.psi @ self.waveform).real)


def max_eigenvalue(matrix, tol: float = 1e-9) -> float:
    """Largest eigenvalue of a Hermitian PSD matrix by power iteration."""
    a = np.ascontiguousarray(matrix, dtype=complex)
    lam, iterations, converged = _backend.power_iteration(a, tol, POWER_ITER_MAX)
    if not converged:
        raise EigenvalueStalled(f"eigenvalue iteration stalled after {iterations} iterations")
    return float(lam)


def build_subproblem(psi, config: SolverConfig = SolverConfig()) -> SubproblemMatrices:
    psi = np.ascontiguousarray(psi, dtype=complex)
    try:
        top = max_eigenvalue(psi, config.power_iter_tol)
    except EigenvalueStalled:
        # nearly repeated top eigenvalues are common here, so this is routine
        log.debug("power iteration stalled; using a dense eigensolver")
        top = float(np.linalg.eigvalsh(psi)[-1])
    lam = (1.0 + config.lambda_margin) * top
    if lam <= 0.0:
        raise ValueError("psi has no positive eigenvalue")
    p = psi - lam * np.eye(psi.shape[0])
    return SubproblemMatrices(psi=psi, lam=lam, p=p, tau=1.0 / (2.0 * lam))


def fista_step(t_current, t_previous, iter_index: int, sub: SubproblemMatrices) -> np.ndarray:
    """One extrapolated gradient-ascent step on ``t^H P t`` (before projection).

    ``v = t_cur + (k-1)/(k+2) (t_cur - t_prev)`` followed by ``v + tau * 2 P v``.
    """
    t_current = np.asarray(t_current, dtype=complex)
    t_previous = np.asarray(t_previous, dtype=complex)
    n = sub.p.shape[0]
    if t_current.shape != (n,) or t_previous.shape != (n,):
        raise ValueError("dimension error")
    if iter_index < 1:
        raise ValueError("iter_index starts at 1")
    c = (iter_index - 1.0) / (iter_index + 2.0)
    v = t_current + c * (t_current - t_previous)
    return v + sub.tau * 2.0 * (sub.p @ v)


def to_constant_modulus(t, region: ArcRegion) -> np.ndarray:
    """Keep the phase of each entry, clamped into its arc, at modulus 1/sqrt(n)."""
    t = np.asarray(t, dtype=complex)
    n = t.shape[0]
    if region.delta <= 0.0:
        return np.exp(1j * region.omega) / math.sqrt(n)
    off = phase_offset(np.angle(t), region.omega)
    # vanishing entries carry no phase information: use the arc midpoint
    off = np.where(np.abs(t) < 1e-15, 0.5 * region.delta, off)
    if region.delta < TWO_PI:
        past = off > region.delta
        nearer_start = (TWO_PI - off) < (off - region.delta)
        off = np.where(past, np.where(nearer_start, 0.0, region.delta), off)
    return np.exp(1j * (region.omega + off)) / math.sqrt(n)


def agp_solve(
    psi,
    region: ArcRegion,
    start,
    config: SolverConfig = SolverConfig(),
    *,
    accelerate: bool = True,
    sub: SubproblemMatrices | None = None,
) -> SubproblemResult:
    """Solve the relaxed subproblem from ``start`` and return a constant-modulus waveform.

    Iterates until two consecutive projected iterates differ by at most
    ``config.zeta`` in Euclidean norm, with the extrapolation behind that
    step also at most ``config.zeta``, or ``config.max_iterations`` updates
    have been made. The second condition keeps momentum from parking an
    iterate on an arc endpoint and calling it converged. Without convergence the best relaxed iterate is kept.
    ``accelerate=False`` drops the extrapolation, giving plain projected
    gradient.
    """
    start = np.asarray(start, dtype=complex)
    if start.shape != region.omega.shape:
        raise ValueError(f"dimension error: start {start.shape} vs region {region.omega.shape}")
    if sub is None:
        sub = build_subproblem(psi, config)
    if region.delta <= 0.0:
        fixed = project_waveform(start, region)
        return SubproblemResult(fixed, fixed, 0, np.empty(0), True, sub)

    last, best, iterations, trace, converged = _backend.agp_loop(
        sub.psi,
        sub.lam,
        sub.tau,
        region.omega,
        region.delta,
        start,
        config.zeta,
        int(config.max_iterations),
        accelerate,
    )
    relaxed = last if converged else best
    if not converged:
        log.debug("AGP hit %d iterations without meeting zeta=%g", iterations, config.zeta)
    return SubproblemResult(
        waveform=to_constant_modulus(relaxed, region),
        relaxed=relaxed,
        iterations=iterations,
        objective_trace=trace,
        converged=converged,
        sub=sub,
    )
