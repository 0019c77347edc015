"""Rectangular parameter sweeps of the centre-of-mass factor and the concurrences."""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidRange
from .model import Scenario, parse_scenario
from .oscillator import OscillatorSpec, com_factor, max_phase
from .scenarios import scenario_concurrence

DEFAULT_R = 0.05

# three periods of the bell-vacuum concurrence, 3 * 2π/√6
DEFAULT_GT_MAX = 3 * 2 * math.pi / math.sqrt(6)


@dataclass(frozen=True)
class Axis:
    name: str
    min: float
    max: float
    steps: int

    def __post_init__(self):
        if int(self.steps) != self.steps or self.steps < 1:
            raise InvalidRange(f"axis {self.name!r}: steps must be a positive integer, got {self.steps}")
        if not (math.isfinite(self.min) and math.isfinite(self.max)) or self.max < self.min:
            raise InvalidRange(f"axis {self.name!r}: invalid range [{self.min}, {self.max}]")

    def values(self) -> np.ndarray:
        if self.steps == 1:
            return np.array([self.min])
        return np.linspace(self.min, self.max, self.steps)

    def to_dict(self) -> dict:
        return {"name": self.name, "min": self.min, "max": self.max, "steps": self.steps}


@dataclass
class SweepGrid:
    """Values over ``y`` (rows) by ``x`` (columns), row-major."""

    x_axis: Axis
    y_axis: Axis
    values: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        shape = (self.y_axis.steps, self.x_axis.steps)
        if self.values.shape != shape:
            raise InvalidRange(f"values have shape {self.values.shape}, axes imply {shape}")
        if not np.all(np.isfinite(self.values)):
            raise InvalidRange("grid contains non-finite values")
        if np.any(self.values < 0):
            raise InvalidRange("grid contains negative values")

    def points(self):
        """Yield ``(x, y, value)`` in row-major order."""
        xs = self.x_axis.values()
        ys = self.y_axis.values()
        for j, y in enumerate(ys):
            for i, x in enumerate(xs):
                yield float(x), float(y), float(self.values[j, i])

    def to_dict(self) -> dict:
        return {
            "x_axis": self.x_axis.to_dict(),
            "y_axis": self.y_axis.to_dict(),
            "values": self.values.ravel().tolist(),
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SweepGrid":
        x = Axis(**d["x_axis"])
        y = Axis(**d["y_axis"])
        vals = np.asarray(d["values"], dtype=float)
        if vals.size != x.steps * y.steps:
            raise InvalidRange(f"{vals.size} values for a {y.steps}x{x.steps} grid")
        return cls(x, y, vals.reshape(y.steps, x.steps), dict(d.get("metadata", {})))


def evaluate_grid(func, xs, ys, workers: int = 1) -> np.ndarray:
    """``func(x, y)`` at every grid point; rows may be computed concurrently.

    Output ordering is by (row, column) regardless of ``workers``.
    """
    xs = list(xs)

    def row(y):
        return [func(x, y) for x in xs]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, ys))
    else:
        rows = [row(y) for y in ys]
    return np.array(rows, dtype=float).reshape(len(ys), len(xs))


def _check_r(r):
    if not (0.0 < r < 1.0):
        raise InvalidRange(f"relative displacement r must lie in (0, 1), got {r}")


def sweep_factor(r: float = DEFAULT_R, delta_steps: int = 101, workers: int = 1) -> SweepGrid:
    """Factor K over ``δ1, δ2 ∈ [0, asin(1 - r)]`` with both plates at ratio ``r``."""
    _check_r(r)
    if delta_steps < 2:
        raise InvalidRange(f"delta_steps must be >= 2, got {delta_steps}")
    dmax = max_phase(r)
    x = Axis("delta1", 0.0, dmax, delta_steps)
    y = Axis("delta2", 0.0, dmax, delta_steps)

    def k(d1, d2):
        return com_factor(OscillatorSpec(r, d1), OscillatorSpec(r, d2)).k

    values = evaluate_grid(k, x.values(), y.values(), workers)
    return SweepGrid(x, y, values, {"kind": "factor", "r": r})


def sweep_concurrence(
    scenario,
    r: float = DEFAULT_R,
    gt_max: float = DEFAULT_GT_MAX,
    gt_steps: int = 201,
    delta_steps: int = 101,
    kz0: float = 0.0,
    workers: int = 1,
) -> SweepGrid:
    """Corrected concurrence over ``(gt, δ)`` with ``δ1 = δ2 = δ``."""
    kind = parse_scenario(scenario)
    _check_r(r)
    if not (math.isfinite(gt_max) and gt_max > 0):
        raise InvalidRange(f"gt_max must be positive, got {gt_max}")
    if gt_steps < 1:
        raise InvalidRange(f"gt_steps must be >= 1, got {gt_steps}")
    if delta_steps < 2:
        raise InvalidRange(f"delta_steps must be >= 2, got {delta_steps}")
    x = Axis("gt", 0.0, gt_max, gt_steps)
    y = Axis("delta", 0.0, max_phase(r), delta_steps)

    def c(gt, delta):
        spec = OscillatorSpec(r, delta)
        return scenario_concurrence(kind, gt, spec, spec, kz0).corrected_concurrence

    values = evaluate_grid(c, x.values(), y.values(), workers)
    meta = {"kind": "concurrence", "scenario": kind.value, "r": r, "kz0": kz0, "delta1_equals_delta2": True}
    return SweepGrid(x, y, values, meta)


PRESETS = {
    "fig2": lambda workers=1: sweep_factor(DEFAULT_R, 101, workers),
    "fig3a": lambda workers=1: sweep_concurrence(Scenario.BELL_VACUUM, DEFAULT_R, workers=workers),
    "fig3b": lambda workers=1: sweep_concurrence(Scenario.GG_ONE, DEFAULT_R, workers=workers),
}
