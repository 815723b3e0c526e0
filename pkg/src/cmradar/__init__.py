"""Constant-modulus, similarity-constrained MIMO radar waveform design.

SINR is maximized by a sequence of convex QCQP relaxations, each solved
with accelerated gradient projection (FISTA steps plus a closed-form
projector onto the relaxed per-entry regions).
"""

from cmradar._backend import NAME as BACKEND
from cmradar.metrics import beampattern, to_db
from cmradar.pipeline import PipelineConfig, RunRecord, halve_region, optimize_waveform
from cmradar.projection import ArcRegion, project_entry, project_waveform, region_from_similarity
from cmradar.reference import chirp_reference
from cmradar.scene import Clutter, Scene, optimal_filter, psi, simulate_receive, sinr, steering_matrix
from cmradar.solver import SolverConfig, agp_solve, build_subproblem

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ArcRegion",
    "Clutter",
    "PipelineConfig",
    "RunRecord",
    "Scene",
    "SolverConfig",
    "agp_solve",
    "beampattern",
    "build_subproblem",
    "chirp_reference",
    "halve_region",
    "optimal_filter",
    "optimize_waveform",
    "project_entry",
    "project_waveform",
    "psi",
    "region_from_similarity",
    "simulate_receive",
    "sinr",
    "steering_matrix",
    "to_db",
]
