"""Concurrence and fidelity: matrix-level routes and closed forms."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import numkit
from .channel import ChannelCoefficients, InputState, channel_coefficients, validate_density
from .errors import InvalidDensityMatrixError
from .numkit import SIGMA_Y, kron2
from .spin_model import I00, I01, I10, I11, ModelParams

X_STATE_TOL = 1e-12
_YY = kron2(SIGMA_Y, SIGMA_Y)
_OFF_X = np.ones((4, 4), dtype=bool)
for _i in range(4):
    _OFF_X[_i, _i] = False
    _OFF_X[_i, 3 - _i] = False


def _clamp01(x: float) -> float:
    return min(1.0, max(0.0, float(x)))


@dataclass(frozen=True)
class ConcurrenceResult:
    value: float
    gammas: tuple[float, float, float, float]


@dataclass(frozen=True)
class FidelityResult:
    value: float


def spin_flip(rho) -> np.ndarray:
    """``(Y x Y) rho* (Y x Y)``."""
    return _YY @ np.conj(rho) @ _YY


def _from_gammas(gammas) -> ConcurrenceResult:
    g = sorted((float(v) for v in gammas), reverse=True)
    return ConcurrenceResult(_clamp01(max(2 * g[0] - sum(g), 0.0)), tuple(g))


def concurrence_general(rho) -> ConcurrenceResult:
    """Wootters concurrence of an arbitrary two-qubit density matrix.

    The gammas (square roots of the eigenvalues of ``rho rho~``) are the
    singular values of ``sqrt(rho) (Y x Y) sqrt(rho)*``, which avoids both a
    non-Hermitian eigenproblem and the sqrt-of-rounding loss on small gammas.
    """
    rho = validate_density(rho)
    root = numkit.sqrtm_psd(rho)
    gammas = numkit.singular_values(root @ _YY @ np.conj(root))
    return _from_gammas(gammas)


def is_x_state(rho, tol: float = X_STATE_TOL) -> bool:
    return bool(np.all(np.abs(np.asarray(rho)[_OFF_X]) <= tol))


def concurrence_x_state(rho) -> ConcurrenceResult:
    """Concurrence of a density matrix supported on the diagonal and anti-diagonal."""
    rho = np.asarray(rho, dtype=complex)
    if not is_x_state(rho):
        raise InvalidDensityMatrixError("matrix is not X-shaped")
    d = np.real(np.diag(rho)).clip(min=0.0)
    outer = math.sqrt(d[I11] * d[I00])
    inner = math.sqrt(d[I10] * d[I01])
    g14 = abs(rho[I11, I00])
    g23 = abs(rho[I10, I01])
    gammas = (outer + g14, abs(outer - g14), inner + g23, abs(inner - g23))
    value = 2 * max(0.0, g14 - inner, g23 - outer)
    return ConcurrenceResult(_clamp01(value), tuple(sorted(gammas, reverse=True)))


def input_concurrence(state: InputState) -> float:
    return _clamp01(math.sin(2 * state.theta))


def output_concurrence_closed(p: ModelParams, state: InputState) -> float:
    """``max((a4 C_in - 2 a1) / Z^2, 0)``."""
    return output_concurrence_from(channel_coefficients(p), state)


def output_concurrence_from(co: ChannelCoefficients, state: InputState) -> float:
    return _clamp01(max(co.r4 * input_concurrence(state) - 2 * co.r1, 0.0))


def fidelity_general(rho_in, rho_out) -> FidelityResult:
    """``[tr sqrt(sqrt(rho_in) rho_out sqrt(rho_in))]^2``.

    The trace is the sum of singular values of ``sqrt(rho_out) sqrt(rho_in)``.
    """
    rho_in = validate_density(rho_in, "rho_in")
    rho_out = validate_density(rho_out, "rho_out")
    s = numkit.singular_values(numkit.sqrtm_psd(rho_out) @ numkit.sqrtm_psd(rho_in))
    return FidelityResult(_clamp01(float(np.sum(s)) ** 2))


def fidelity_closed(p: ModelParams, state: InputState) -> FidelityResult:
    """``[a3 + (a2 - a3 + a4) sin^2(2 theta) / 2] / Z^2``."""
    return fidelity_from(channel_coefficients(p), state)


def fidelity_from(co: ChannelCoefficients, state: InputState) -> FidelityResult:
    s2 = math.sin(2 * state.theta) ** 2
    return FidelityResult(_clamp01(co.r3 + 0.5 * (co.r2 - co.r3 + co.r4) * s2))


def pure_state_fidelity(vec, rho) -> float:
    """``<v| rho |v>``."""
    v = np.asarray(vec, dtype=complex).reshape(-1)
    return float(np.real(v.conj() @ np.asarray(rho) @ v))
