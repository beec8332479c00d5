"""Teleportation of a two-qubit state through the thermal resource.

Each Bell outcome ``psi_k`` is paired with the Pauli correction ``sigma_k``
(``psi_0`` is the singlet, corrected by the identity), so a pure singlet
resource acts as the identity channel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import numkit
from .errors import InvalidDensityMatrixError, ParameterError
from .numkit import PAULIS, kron2
from .spin_model import I00, I01, I10, I11, ModelParams, log2cosh, log2sinh, log_partition_function

DENSITY_TOL = 1e-10
_LOG4 = math.log(4.0)

_S = 2 ** -0.5
BELL_STATES = (
    np.array([0, -_S, _S, 0], dtype=complex),   # (|01> - |10>)/sqrt2
    np.array([-_S, 0, 0, _S], dtype=complex),   # (|00> - |11>)/sqrt2
    np.array([_S, 0, 0, _S], dtype=complex),    # (|00> + |11>)/sqrt2
    np.array([0, _S, _S, 0], dtype=complex),    # (|01> + |10>)/sqrt2
)
BELL_PROJECTORS = tuple(numkit.projector(v) for v in BELL_STATES)
PAULI_PAIRS = tuple(
    ((i, j), kron2(PAULIS[i], PAULIS[j])) for i in range(4) for j in range(4)
)


@dataclass(frozen=True)
class InputState:
    """``cos(theta)|11> + e^{i phi} sin(theta)|00>``."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.theta) and 0.0 <= self.theta <= math.pi / 2):
            raise ParameterError(f"theta must lie in [0, pi/2], got {self.theta!r}")
        if not (math.isfinite(self.phi) and 0.0 <= self.phi < 2 * math.pi):
            raise ParameterError(f"phi must lie in [0, 2pi), got {self.phi!r}")

    @property
    def vector(self) -> np.ndarray:
        v = np.zeros(4, dtype=complex)
        v[I11] = math.cos(self.theta)
        v[I00] = complex(math.cos(self.phi), math.sin(self.phi)) * math.sin(self.theta)
        return v


@dataclass(frozen=True)
class ChannelCoefficients:
    """The four output-state coefficients, Z, and their overflow-safe ratios to Z^2.

    Raw ``a1..a4`` and ``Z2`` are ``inf`` once they exceed the float range;
    the ``r*`` ratios are always finite.
    """

    a1: float
    a2: float
    a3: float
    a4: float
    Z: float
    log_Z: float
    r1: float
    r2: float
    r3: float
    r4: float

    @property
    def Z2(self) -> float:
        return self.Z * self.Z

    @property
    def ratios(self) -> tuple[float, float, float, float]:
        return (self.r1, self.r2, self.r3, self.r4)


@dataclass(frozen=True)
class OutputState:
    rho_out: np.ndarray
    coeffs: ChannelCoefficients
    input: InputState


def validate_density(rho, name: str = "rho", tol: float = DENSITY_TOL) -> np.ndarray:
    """Check a 4x4 density matrix and return it as a complex array.

    Raises:
        InvalidDensityMatrixError: naming the violated property.
    """
    a = np.asarray(rho, dtype=complex)
    if a.shape != (4, 4):
        raise InvalidDensityMatrixError(f"{name}: expected shape (4, 4), got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidDensityMatrixError(f"{name}: non-finite entries")
    asym = numkit.asymmetry(a)
    if asym > tol:
        raise InvalidDensityMatrixError(f"{name}: not Hermitian (max asymmetry {asym:.3e})")
    tr = np.trace(a)
    if abs(tr - 1.0) > tol:
        raise InvalidDensityMatrixError(f"{name}: trace {tr.real:.12g} differs from 1")
    w_min = numkit.hermitian_eigendecompose(a).eigenvalues[0]
    if w_min < -tol:
        raise InvalidDensityMatrixError(f"{name}: not positive semidefinite (min eigenvalue {w_min:.3e})")
    return a


def input_density(state: InputState) -> np.ndarray:
    return numkit.projector(state.vector)


def bell_weights(rho_channel) -> np.ndarray:
    """``tr(E^k rho)`` for the four Bell projectors."""
    rho = np.asarray(rho_channel, dtype=complex)
    return np.array([np.real(np.trace(e @ rho)) for e in BELL_PROJECTORS])


def apply_channel_general(rho_channel, rho_in) -> np.ndarray:
    """Sum of ``p_ij (s_i x s_j) rho_in (s_i x s_j)`` with ``p_ij = w_i w_j``."""
    validate_density(rho_channel, "rho_channel")
    rho_in = validate_density(rho_in, "rho_in")
    w = bell_weights(rho_channel)
    out = np.zeros((4, 4), dtype=complex)
    for (i, j), op in PAULI_PAIRS:
        pij = w[i] * w[j]
        if pij != 0.0:
            out += pij * (op @ rho_in @ op)
    return 0.5 * (out + out.conj().T)


def pure_channel_output(channel_state, state: InputState) -> np.ndarray:
    """Teleport through a pure resource state (the zero-temperature channel)."""
    v = np.asarray(channel_state, dtype=complex).reshape(-1)
    if v.shape != (4,):
        raise ParameterError(f"channel state must have 4 components, got {v.shape}")
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > DENSITY_TOL:
        raise ParameterError(f"channel state is not normalised (norm {norm:.12g})")
    return apply_channel_general(numkit.projector(v), input_density(state))


def channel_coefficients(p: ModelParams) -> ChannelCoefficients:
    T = p.require_T()
    x = p.eta / T
    y = p.B / T
    k = p.lam * p.J / T
    log_Z = log_partition_function(p)
    log_Z2 = 2 * log_Z
    # log(4 cosh u cosh v) = log2cosh(u) + log2cosh(v)
    log_a1 = log2cosh(x) + log2cosh(y)
    log_a2 = -k + 2 * log2cosh(y)
    log_a3 = k + 2 * log2cosh(x)
    log_a4 = k + 2 * (log2sinh(x) + math.log(abs(p.J)) - math.log(p.eta))
    logs = (log_a1, log_a2, log_a3, log_a4)
    raw = [math.exp(v) if v < 709.0 else math.inf for v in logs]
    ratios = [math.exp(v - log_Z2) for v in logs]
    Z = math.exp(log_Z) if log_Z < 709.0 else math.inf
    return ChannelCoefficients(*raw, Z, log_Z, *ratios)


def output_state_closed(p: ModelParams, state: InputState) -> OutputState:
    return output_state_from(channel_coefficients(p), state)


def output_state_from(co: ChannelCoefficients, state: InputState) -> OutputState:
    r1, r2, r3, r4 = co.ratios
    c2 = math.cos(state.theta) ** 2
    s2 = math.sin(state.theta) ** 2
    corner = 0.5 * r4 * math.sin(2 * state.theta)
    rho = np.zeros((4, 4), dtype=complex)
    rho[I11, I11] = r2 * s2 + r3 * c2
    rho[I10, I10] = r1
    rho[I01, I01] = r1
    rho[I00, I00] = r2 * c2 + r3 * s2
    rho[I11, I00] = corner * complex(math.cos(state.phi), -math.sin(state.phi))
    rho[I00, I11] = corner * complex(math.cos(state.phi), math.sin(state.phi))
    return OutputState(rho, co, state)
