"""Command-line front end.

Exit codes: 0 success, 1 usage or configuration error, 2 I/O error,
3 numerical failure (including a failed Monte Carlo validation).
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
import time
from dataclasses import replace
from pathlib import Path

import numpy as np

from cmradar import _backend
from cmradar.csvio import read_waveform, write_beampattern, write_trajectory, write_waveform
from cmradar.metrics import beampattern
from cmradar.pipeline import PipelineConfig, optimize_waveform
from cmradar.reference import chirp_reference
from cmradar.scenario import ConfigError, ScenarioFile, load_scenario
from cmradar.scene import optimal_filter, simulate_receive, sinr
from cmradar.solver import EigenvalueStalled

log = logging.getLogger("cmradar")

EXIT_OK, EXIT_CONFIG, EXIT_IO, EXIT_NUMERIC = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _scenario(path) -> ScenarioFile:
    return load_scenario(path) if path else ScenarioFile()


def cmd_generate_reference(args) -> int:
    ref = chirp_reference(args.num_tx, args.num_samples)
    write_waveform(args.out, ref.vector)
    print(f"wrote {ref.vector.size} entries to {args.out}")
    return EXIT_OK


def cmd_optimize(args) -> int:
    scenario = _scenario(args.scenario)
    if args.epsilon is not None:
        if not 0.0 <= args.epsilon <= 2.0:
            raise ConfigError("epsilon", "must lie in [0, 2]")
        scenario = replace(scenario, epsilon=args.epsilon)
    scene = scenario.scene()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    t0 = chirp_reference(scene.num_tx, scene.num_samples).vector
    config = PipelineConfig(
        epsilon=scenario.epsilon,
        delta_min=scenario.delta_min_rad,
        solver=scenario.solver_config(),
    )
    started = time.perf_counter()
    record = optimize_waveform(scene, t0, config)
    wall = time.perf_counter() - started

    deltas = [record.initial_delta] + record.per_refinement_delta
    write_trajectory(out / "sinr_trajectory.csv", deltas, record.sinr_trajectory_db)
    write_waveform(out / "reference_waveform.csv", t0)
    write_waveform(out / "waveform.csv", record.final_waveform)
    for name, t in (("reference", t0), ("optimized", record.final_waveform)):
        angles, power = beampattern(t, scene.num_tx, scene.num_samples)
        write_beampattern(out / f"beampattern_{name}.csv", angles, power)

    summary = {
        "final_sinr_db": record.final_sinr_db,
        "reference_sinr_db": record.reference_sinr_db,
        "refinements": record.refinements,
        "epsilon": scenario.epsilon,
        "converged": record.converged,
        "wall_time_s": wall,
        "backend": _backend.NAME,
    }
    (out / "run_summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    print(
        f"reference SINR {record.reference_sinr_db:.4f} dB -> optimized {record.final_sinr_db:.4f} dB "
        f"after {record.refinements} refinements ({wall:.3f} s)"
    )
    if not record.converged:
        print("warning: at least one subproblem stopped at the iteration cap (converged=false)")
    return EXIT_OK


def cmd_validate(args) -> int:
    scenario = _scenario(args.scenario)
    scene = scenario.scene()
    t = read_waveform(args.waveform)
    if t.size != scene.tx_dim:
        raise ConfigError("waveform", f"has {t.size} entries, scenario needs {scene.tx_dim}")
    seed = scenario.seed if args.seed is None else args.seed
    f = optimal_filter(t, scene)
    analytic = sinr(t, f, scene)
    mc = simulate_receive(t, f, scene, seed=seed, draws=args.draws)
    gap = abs(mc.empirical_sinr - analytic)
    ok = gap <= 3.0 * mc.std_error
    print(f"analytic SINR   {analytic:.10g} ({10 * math.log10(analytic):.4f} dB)")
    print(f"empirical SINR  {mc.empirical_sinr:.10g} ({mc.draws} draws, seed {seed})")
    print(f"standard error  {mc.std_error:.4g}")
    print(f"deviation       {gap / mc.std_error if mc.std_error > 0 else float('inf'):.3f} standard errors")
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_NUMERIC


def cmd_beampattern(args) -> int:
    t = read_waveform(args.waveform)
    if t.size != args.num_tx * args.num_samples:
        raise ConfigError("waveform", f"has {t.size} entries, expected {args.num_tx * args.num_samples}")
    angles, power = beampattern(t, args.num_tx, args.num_samples)
    write_beampattern(args.out, angles, power)
    print(f"wrote {angles.size} beampattern samples to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cmradar", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate-reference", help="write the orthogonal chirp reference waveform")
    p.add_argument("--num-tx", type=int, default=4)
    p.add_argument("--num-samples", type=int, default=16)
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_generate_reference)

    p = sub.add_parser("optimize", help="design a waveform from the chirp reference")
    p.add_argument("--scenario", help="scenario JSON (defaults to the standard scenario)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--epsilon", type=float, help="override the similarity parameter")
    p.add_argument("--seed", type=int, help="accepted for interface symmetry; optimization is deterministic")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("validate", help="Monte Carlo check of the analytic SINR of a waveform")
    p.add_argument("--scenario")
    p.add_argument("--waveform", required=True)
    p.add_argument("--draws", type=int, default=100_000)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("beampattern", help="write the peak-normalized transmit beampattern")
    p.add_argument("--waveform", required=True)
    p.add_argument("--num-tx", type=int, default=4)
    p.add_argument("--num-samples", type=int, default=16)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_beampattern)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ArithmeticError, EigenvalueStalled, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        # domain preconditions: bad sizes, insufficient draws, malformed CSV
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
