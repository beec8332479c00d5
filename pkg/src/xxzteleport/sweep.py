"""2-D parameter sweeps and critical-curve tables written as CSV."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .channel import InputState
from .critical import feasibility_zero_T, max_teleportation_temperature
from .errors import ParameterError
from .metrics import fidelity_closed, input_concurrence, output_concurrence_closed
from .spin_model import ModelParams, log_partition_function

SWEEP_PARAMS = ("B", "b", "T", "theta", "lambda", "J")
SWEEP_HEADER = "x,y,C_in,C_out,F,Z,feasible"
CRITICAL_HEADER = "param,B_c,b_c,T_max"
NA = "NA"
FLOAT_FMT = "%.12e"


def fmt(value) -> str:
    if value is None:
        return NA
    return FLOAT_FMT % value


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    steps: int

    def __post_init__(self):
        if self.name not in SWEEP_PARAMS:
            raise ParameterError(f"unknown sweep parameter {self.name!r}; choose from {', '.join(SWEEP_PARAMS)}")
        if self.steps < 2:
            raise ParameterError(f"axis {self.name} needs at least 2 steps, got {self.steps}")

    @classmethod
    def parse(cls, text: str) -> "Axis":
        """Parse ``NAME:START:STOP:STEPS``."""
        parts = text.split(":")
        if len(parts) != 4:
            raise ParameterError(f"axis must look like NAME:START:STOP:STEPS, got {text!r}")
        try:
            return cls(parts[0], float(parts[1]), float(parts[2]), int(parts[3]))
        except ValueError as exc:
            raise ParameterError(f"bad axis {text!r}: {exc}") from exc

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class SweepSpec:
    x: Axis
    y: Axis
    fixed: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.x.name == self.y.name:
            raise ParameterError("x and y sweep parameters must differ")

    def points(self) -> list[dict]:
        pts = []
        for xv in self.x.values():
            for yv in self.y.values():
                vals = dict(self.fixed)
                vals[self.x.name] = float(xv)
                vals[self.y.name] = float(yv)
                pts.append(vals)
        return pts

    def validate(self) -> None:
        """Reject the sweep up front if any grid point is outside the model domain."""
        for vals in self.points():
            model_and_input(vals)


def model_and_input(vals: dict) -> tuple[ModelParams, InputState]:
    p = ModelParams(J=vals["J"], lam=vals["lambda"], B=vals["B"], b=vals["b"], T=vals["T"])
    return p, InputState(vals["theta"], vals.get("phi", 0.0))


def evaluate_point(vals: dict) -> tuple[float, float, float, float, bool]:
    """``(C_in, C_out, F, Z, feasible_at_zero_T)`` for one parameter dict."""
    p, s = model_and_input(vals)
    log_z = log_partition_function(p)
    z = math.exp(log_z) if log_z < 709.0 else math.inf
    feasible = feasibility_zero_T(p.J, p.lam, p.B, p.b).feasible_at_zero_T
    return (input_concurrence(s), output_concurrence_closed(p, s),
            fidelity_closed(p, s).value, z, feasible)


def _row(args) -> str:
    xname, yname, vals = args
    c_in, c_out, f, z, feasible = evaluate_point(vals)
    return ",".join([fmt(vals[xname]), fmt(vals[yname]), fmt(c_in), fmt(c_out), fmt(f), fmt(z),
                     "1" if feasible else "0"])


def sweep_rows(spec: SweepSpec, jobs: int = 1) -> list[str]:
    """CSV body lines in x-major order; identical for any ``jobs``."""
    spec.validate()
    tasks = [(spec.x.name, spec.y.name, vals) for vals in spec.points()]
    if jobs <= 1:
        return [_row(t) for t in tasks]
    chunk = max(1, len(tasks) // (4 * jobs))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_row, tasks, chunksize=chunk))


def sweep_csv(spec: SweepSpec, jobs: int = 1) -> str:
    return "\n".join([SWEEP_HEADER, *sweep_rows(spec, jobs)]) + "\n"


def critical_rows(J: float, lam: float, vary: str, grid, B: float = 0.0, b: float = 0.0) -> list[str]:
    """One row per grid value of ``vary`` (``"B"`` or ``"b"``), the other field held fixed."""
    if vary not in ("B", "b"):
        raise ParameterError(f"critical grid must vary B or b, got {vary!r}")
    rows = []
    for v in grid:
        Bv, bv = (v, b) if vary == "B" else (B, v)
        rep = feasibility_zero_T(J, lam, Bv, bv)
        tmax = max_teleportation_temperature(J, lam, Bv, bv).value
        rows.append(",".join([fmt(v), fmt(rep.B_c), fmt(rep.b_c), fmt(tmax)]))
    return rows


def critical_csv(J: float, lam: float, vary: str, grid, B: float = 0.0, b: float = 0.0) -> str:
    return "\n".join([CRITICAL_HEADER, *critical_rows(J, lam, vary, grid, B, b)]) + "\n"
