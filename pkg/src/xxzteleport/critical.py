"""Feasibility of entanglement teleportation and the critical parameters."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .channel import channel_coefficients
from .errors import ParameterError
from .spin_model import ModelParams

CLASSICAL_FIDELITY = 2.0 / 3.0
T_SCAN_RANGE = (1e-4, 1e4)
T_SCAN_POINTS = 512
ROOT_RTOL = 1e-10


@dataclass(frozen=True)
class FeasibilityReport:
    feasible_at_zero_T: bool
    margin: float
    B_c: float | None
    b_c: float | None


@dataclass(frozen=True)
class MaxTemperature:
    """Largest temperature at which ``a4 C_in - 2 a1`` changes sign.

    ``value`` is ``None`` when the quantity is non-positive over the whole scan
    range (no teleportation at any temperature).
    """

    value: float | None
    residual: float | None
    multimodal: bool = False
    roots: tuple[float, ...] = ()

    @property
    def feasible(self) -> bool:
        return self.value is not None


def _check(J: float, lam: float) -> None:
    ModelParams(J, lam)


def critical_uniform_field(J: float, lam: float, b: float = 0.0) -> float | None:
    """``lam J + sqrt(J^2 + b^2)`` when positive, else ``None``."""
    _check(J, lam)
    bc = lam * J + math.hypot(J, b)
    return bc if bc > 0 else None


def critical_inhomogeneous_field(J: float, lam: float, B: float = 0.0) -> float | None:
    """Smallest ``|b|`` at which the zero-temperature channel starts to teleport.

    ``None`` means no threshold is needed: the channel already works at b = 0.
    """
    _check(J, lam)
    if lam * J + abs(J) - abs(B) > 0:
        return None
    d = (abs(B) - lam * J) ** 2 - J * J
    if d < 0:
        # |B| - lam J >= |J| >= 0 here, so this cannot happen
        raise ArithmeticError(f"inconsistent critical-field algebra: (|B| - lam J)^2 - J^2 = {d}")
    return math.sqrt(d)


def feasibility_zero_T(J: float, lam: float, B: float = 0.0, b: float = 0.0) -> FeasibilityReport:
    _check(J, lam)
    margin = lam * J + math.hypot(J, b) - abs(B)
    return FeasibilityReport(
        feasible_at_zero_T=margin > 0,
        margin=margin,
        B_c=critical_uniform_field(J, lam, b),
        b_c=critical_inhomogeneous_field(J, lam, B),
    )


def low_T_critical_field(p: ModelParams, c_in: float = 1.0) -> float:
    """Approximate low-temperature bound on ``|B|``: ``B_c + T ln(C_in / 2)``.

    Only meaningful while ``T`` is small against the level spacing
    (roughly ``T <= 0.2 * eta``).
    """
    T = p.require_T()
    if not (0.0 < c_in <= 1.0):
        raise ParameterError(f"input concurrence must lie in (0, 1], got {c_in!r}")
    return p.lam * p.J + p.eta + T * math.log(c_in / 2.0)


def teleportation_margin(p: ModelParams, c_in: float = 1.0) -> float:
    """``(a4 C_in - 2 a1) / Z^2`` at the temperature carried by ``p``."""
    co = channel_coefficients(p)
    return co.r4 * c_in - 2.0 * co.r1


def max_teleportation_temperature(J: float, lam: float, B: float = 0.0, b: float = 0.0,
                                  c_in: float = 1.0) -> MaxTemperature:
    """Scan ``T`` on a log grid, then refine the largest sign change.

    Every downward crossing (positive to non-positive as T grows) is refined;
    more than one marks the result as multimodal.
    """
    base = ModelParams(J, lam, B, b)
    if not (0.0 < c_in <= 1.0):
        raise ParameterError(f"input concurrence must lie in (0, 1], got {c_in!r}")

    def g(T: float) -> float:
        return teleportation_margin(base.with_(T=T), c_in)

    grid = np.logspace(math.log10(T_SCAN_RANGE[0]), math.log10(T_SCAN_RANGE[1]), T_SCAN_POINTS)
    values = [g(float(t)) for t in grid]
    brackets = [(float(grid[i]), float(grid[i + 1]))
                for i in range(len(grid) - 1)
                if values[i] > 0.0 and values[i + 1] <= 0.0]
    if not brackets:
        return MaxTemperature(None, None)
    roots = []
    for lo, hi in brackets:
        if g(hi) == 0.0:
            roots.append(hi)
            continue
        roots.append(brentq(g, lo, hi, xtol=1e-300, rtol=ROOT_RTOL, maxiter=500))
    t_star = roots[-1]
    co = channel_coefficients(base.with_(T=t_star))
    residual = abs(co.r4 * c_in - 2.0 * co.r1)
    return MaxTemperature(t_star, residual, len(roots) > 1, tuple(roots))


def classical_threshold_check(F: float) -> bool:
    """True when a fidelity beats the best classical protocol (strictly above 2/3)."""
    if not (0.0 <= F <= 1.0):
        raise ParameterError(f"fidelity must lie in [0, 1], got {F!r}")
    return F > CLASSICAL_FIDELITY
