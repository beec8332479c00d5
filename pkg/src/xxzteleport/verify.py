"""Seeded cross-validation of every closed form against its matrix-level route."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .channel import (InputState, apply_channel_general, channel_coefficients, input_density,
                      output_state_from)
from .metrics import concurrence_general, fidelity_from, fidelity_general, output_concurrence_from
from .spin_model import ModelParams, thermal_state_closed, thermal_state_oracle

TOLERANCES = {
    "thermal_state": 1e-10,
    "output_state": 1e-10,
    "concurrence": 1e-10,
    "fidelity": 1e-8,
    "trace_identity": 1e-12,
}


def random_point(rng: np.random.Generator) -> tuple[ModelParams, InputState]:
    """Draw from J in [-3, 3] minus 0, lambda in (0, 3], B, b in [-5, 5], T in [0.05, 10]."""
    J = 0.0
    while J == 0.0:
        J = rng.uniform(-3, 3)
    lam = 3.0 - rng.uniform(0, 3)  # (0, 3]
    p = ModelParams(J, lam, rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(0.05, 10))
    return p, InputState(rng.uniform(0, math.pi / 2), rng.uniform(0, 2 * math.pi))


def point_deviations(p: ModelParams, s: InputState, corrupt: float = 0.0) -> dict[str, float]:
    """Absolute closed-vs-general deviations at one point.

    ``corrupt`` scales the a4 coefficient of the closed forms by ``1 + corrupt``;
    it exists so the harness can be shown to fail.
    """
    co = channel_coefficients(p)
    if corrupt:
        co = dataclasses.replace(co, r4=co.r4 * (1 + corrupt), a4=co.a4 * (1 + corrupt))
    oracle_rho = thermal_state_oracle(p).rho
    rho_in = input_density(s)
    general_out = apply_channel_general(oracle_rho, rho_in)
    closed_out = output_state_from(co, s).rho_out
    if math.isfinite(co.Z2) and math.isfinite(co.a3):
        trace_dev = abs(co.a2 + co.a3 + 2 * co.a1 - co.Z2) / co.Z2
    else:
        trace_dev = abs(co.r2 + co.r3 + 2 * co.r1 - 1.0)
    return {
        "thermal_state": float(np.max(np.abs(thermal_state_closed(p).rho - oracle_rho))),
        "output_state": float(np.max(np.abs(closed_out - general_out))),
        "concurrence": abs(output_concurrence_from(co, s) - concurrence_general(general_out).value),
        "fidelity": abs(fidelity_from(co, s).value - fidelity_general(rho_in, general_out).value),
        "trace_identity": trace_dev,
    }


@dataclass
class SuiteResult:
    name: str
    tolerance: float
    max_deviation: float = 0.0
    worst_point: tuple | None = None

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance


def run_verification(points: int = 200, seed: int = 42, corrupt: float = 0.0) -> list[SuiteResult]:
    rng = np.random.default_rng(seed)
    suites = {k: SuiteResult(k, tol) for k, tol in TOLERANCES.items()}
    for _ in range(points):
        p, s = random_point(rng)
        for name, dev in point_deviations(p, s, corrupt).items():
            suite = suites[name]
            if dev > suite.max_deviation or suite.worst_point is None:
                suite.max_deviation = max(dev, suite.max_deviation)
                suite.worst_point = (p, s)
    return list(suites.values())
