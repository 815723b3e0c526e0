"""JSON scenario files.

Every key is optional; omitted keys take the values of the standard
scenario: N = 16 samples, 4 transmit and 8 receive antennas, a 10 dB
target at 15 degrees and three 30 dB clutter sources at -50, -10 and 40
degrees, noise at 0 dB. Unknown keys are rejected.

Example::

    {
      "numTx": 4, "numRx": 8, "numSamples": 16,
      "targetAngleDeg": 15, "targetPowerDb": 10,
      "clutter": [{"angleDeg": -50, "powerDb": 30}],
      "epsilon": 0.5,
      "solver": {"zeta": 1e-6, "maxIterations": 5000},
      "pipeline": {"deltaMinRad": 0.001},
      "seed": 0
    }
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from cmradar.scene import Clutter, Scene
from cmradar.solver import SolverConfig

__all__ = ["ConfigError", "ScenarioFile", "load_scenario", "parse_scenario"]


class ConfigError(ValueError):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


DEFAULT_CLUTTER = ({"angleDeg": -50.0, "powerDb": 30.0}, {"angleDeg": -10.0, "powerDb": 30.0}, {"angleDeg": 40.0, "powerDb": 30.0})

_TOP_KEYS = {
    "numTx", "numRx", "numSamples", "targetAngleDeg", "targetPowerDb",
    "clutter", "epsilon", "solver", "pipeline", "seed",
}
_SOLVER_KEYS = {"zeta", "maxIterations"}
_PIPELINE_KEYS = {"deltaMinRad"}
_CLUTTER_KEYS = {"angleDeg", "powerDb"}


@dataclass(frozen=True)
class ScenarioFile:
    num_tx: int = 4
    num_rx: int = 8
    num_samples: int = 16
    target_angle_deg: float = 15.0
    target_power_db: float = 10.0
    clutter: tuple[tuple[float, float], ...] = tuple((c["angleDeg"], c["powerDb"]) for c in DEFAULT_CLUTTER)
    epsilon: float = 0.5
    zeta: float = 1e-6
    max_iterations: int = 5000
    delta_min_rad: float | None = None
    seed: int = 0

    def scene(self) -> Scene:
        return Scene(
            num_tx=self.num_tx,
            num_rx=self.num_rx,
            num_samples=self.num_samples,
            target_angle=math.radians(self.target_angle_deg),
            target_power_ratio=10.0 ** (self.target_power_db / 10.0),
            clutters=tuple(Clutter(math.radians(a), 10.0 ** (p / 10.0)) for a, p in self.clutter),
        )

    def solver_config(self) -> SolverConfig:
        return SolverConfig(zeta=self.zeta, max_iterations=self.max_iterations)


def _reject_unknown(obj: dict, allowed: set, where: str):
    for key in obj:
        if key not in allowed:
            raise ConfigError(f"{where}{key}", "unknown key")


def _int(obj, key, where, minimum):
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ConfigError(where + key, f"must be an integer >= {minimum}")
    return value


def _real(obj, key, where):
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigError(where + key, "must be a finite number")
    return float(value)


def _angle(obj, key, where):
    value = _real(obj, key, where)
    if not -90.0 < value < 90.0:
        raise ConfigError(where + key, "must lie strictly between -90 and 90 degrees")
    return value


def parse_scenario(data: dict) -> ScenarioFile:
    if not isinstance(data, dict):
        raise ConfigError("<root>", "scenario must be an object")
    _reject_unknown(data, _TOP_KEYS, "")
    kw = {}
    for key, name, minimum in (("numTx", "num_tx", 1), ("numRx", "num_rx", 1), ("numSamples", "num_samples", 1)):
        if key in data:
            kw[name] = _int(data, key, "", minimum)
    if "targetAngleDeg" in data:
        kw["target_angle_deg"] = _angle(data, "targetAngleDeg", "")
    if "targetPowerDb" in data:
        kw["target_power_db"] = _real(data, "targetPowerDb", "")
    if "epsilon" in data:
        eps = _real(data, "epsilon", "")
        if not 0.0 <= eps <= 2.0:
            raise ConfigError("epsilon", "must lie in [0, 2]")
        kw["epsilon"] = eps
    if "seed" in data:
        kw["seed"] = _int(data, "seed", "", 0)
    if "clutter" in data:
        items = data["clutter"]
        if not isinstance(items, list):
            raise ConfigError("clutter", "must be a list")
        parsed = []
        for i, item in enumerate(items):
            where = f"clutter[{i}]."
            if not isinstance(item, dict):
                raise ConfigError(f"clutter[{i}]", "must be an object")
            _reject_unknown(item, _CLUTTER_KEYS, where)
            for key in _CLUTTER_KEYS:
                if key not in item:
                    raise ConfigError(where + key, "missing")
            parsed.append((_angle(item, "angleDeg", where), _real(item, "powerDb", where)))
        kw["clutter"] = tuple(parsed)
    if "solver" in data:
        sv = data["solver"]
        if not isinstance(sv, dict):
            raise ConfigError("solver", "must be an object")
        _reject_unknown(sv, _SOLVER_KEYS, "solver.")
        if "zeta" in sv:
            zeta = _real(sv, "zeta", "solver.")
            if not zeta > 0:
                raise ConfigError("solver.zeta", "must be positive")
            kw["zeta"] = zeta
        if "maxIterations" in sv:
            kw["max_iterations"] = _int(sv, "maxIterations", "solver.", 2)
    if "pipeline" in data:
        pl = data["pipeline"]
        if not isinstance(pl, dict):
            raise ConfigError("pipeline", "must be an object")
        _reject_unknown(pl, _PIPELINE_KEYS, "pipeline.")
        if "deltaMinRad" in pl:
            dmin = _real(pl, "deltaMinRad", "pipeline.")
            if not dmin > 0:
                raise ConfigError("pipeline.deltaMinRad", "must be positive")
            kw["delta_min_rad"] = dmin
    scenario = ScenarioFile(**kw)
    if scenario.num_tx > scenario.num_samples:
        raise ConfigError("numTx", "must not exceed numSamples (chirp reference orthogonality)")
    return scenario


def load_scenario(path) -> ScenarioFile:
    """Read and validate a scenario. Raises OSError or ConfigError."""
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("<file>", f"invalid JSON: {exc}") from exc
    return parse_scenario(data)
