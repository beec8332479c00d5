"""Two-qubit XXZ Hamiltonian, its analytic eigensystem and the Gibbs state.

All exponentials are evaluated in the log domain with the dominant exponent
factored out, so temperatures down to ~1e-6 with O(1) couplings stay finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import numkit
from .errors import ParameterError
from .numkit import SIGMA_X, SIGMA_Y, SIGMA_Z, IDENTITY2, kron2

DEGENERACY_TOL = 1e-12

# basis indices
I11, I10, I01, I00 = 0, 1, 2, 3


def _basis(index: int) -> np.ndarray:
    v = np.zeros(4, dtype=complex)
    v[index] = 1.0
    return v


@dataclass(frozen=True)
class ModelParams:
    """Exchange ``J``, anisotropy ``lam``, fields ``B``/``b`` and temperature ``T``.

    ``T`` may be omitted for zero-temperature and spectral queries.
    """

    J: float
    lam: float = 1.0
    B: float = 0.0
    b: float = 0.0
    T: float | None = None

    def __post_init__(self):
        for name in ("J", "lam", "B", "b"):
            val = getattr(self, name)
            if not math.isfinite(val):
                raise ParameterError(f"{name} must be finite, got {val!r}")
        if self.J == 0:
            raise ParameterError("J = 0 is not admitted: the eigenvector parametrisation degenerates")
        if not self.lam > 0:
            raise ParameterError(f"anisotropy must satisfy lambda > 0, got {self.lam!r}")
        if self.T is not None and not (math.isfinite(self.T) and self.T > 0):
            raise ParameterError(f"temperature must be finite and > 0, got {self.T!r}")

    def with_(self, **changes) -> "ModelParams":
        vals = {"J": self.J, "lam": self.lam, "B": self.B, "b": self.b, "T": self.T}
        vals.update(changes)
        return ModelParams(**vals)

    def require_T(self) -> float:
        if self.T is None:
            raise ParameterError("this operation needs a temperature T > 0")
        return self.T

    @property
    def eta(self) -> float:
        return math.hypot(self.b, self.J)

    @property
    def epsilon(self) -> float:
        """``b - eta``, evaluated without cancellation for b > 0."""
        eta = self.eta
        if self.b > 0:
            return -self.J * self.J / (self.b + eta)
        return self.b - eta

    @property
    def zeta(self) -> float:
        """``b + eta``, evaluated without cancellation for b < 0."""
        eta = self.eta
        if self.b < 0:
            return self.J * self.J / (eta - self.b)
        return self.b + eta

    def energies(self) -> tuple[float, float, float, float]:
        lj = self.lam * self.J
        eta = self.eta
        return (0.5 * (lj - 2 * self.B), 0.5 * (lj + 2 * self.B), -0.5 * lj - eta, -0.5 * lj + eta)


def log2cosh(x: float) -> float:
    """``log(2 cosh x)`` without overflow."""
    ax = abs(x)
    return ax + math.log1p(math.exp(-2.0 * ax))


def log2sinh(x: float) -> float:
    """``log(2 sinh x)`` for ``x > 0``."""
    return x + math.log(-math.expm1(-2.0 * x))


def _exp(x: float) -> float:
    return math.exp(x) if x < 709.0 else math.inf


@dataclass(frozen=True)
class DerivedQuantities:
    eta: float
    epsilon: float
    zeta: float
    log_Z: float
    Z: float
    m: float
    n: float
    c: float


@dataclass(frozen=True)
class EigenPair:
    energy: float
    state: np.ndarray


@dataclass(frozen=True)
class EigenSystem:
    pairs: tuple[EigenPair, EigenPair, EigenPair, EigenPair]

    @property
    def energies(self) -> np.ndarray:
        return np.array([p.energy for p in self.pairs])

    @property
    def states(self) -> np.ndarray:
        """Eigenvectors as columns, in the order phi_1..phi_4."""
        return np.column_stack([p.state for p in self.pairs])


@dataclass(frozen=True)
class ThermalState:
    rho: np.ndarray
    Z: float
    log_Z: float
    derived: DerivedQuantities = field(repr=False)


def build_hamiltonian(p: ModelParams) -> np.ndarray:
    """``H = 1/2 [J(XX + YY + lam ZZ) + (B+b) Z1 + (B-b) Z2]`` as a 4x4 matrix."""
    h = p.J * (kron2(SIGMA_X, SIGMA_X) + kron2(SIGMA_Y, SIGMA_Y) + p.lam * kron2(SIGMA_Z, SIGMA_Z))
    h = h + (p.B + p.b) * kron2(SIGMA_Z, IDENTITY2) + (p.B - p.b) * kron2(IDENTITY2, SIGMA_Z)
    return 0.5 * h


def analytic_eigensystem(p: ModelParams) -> EigenSystem:
    e1, e2, e3, e4 = p.energies()
    J = p.J
    eps, zeta = p.epsilon, p.zeta
    n3 = math.hypot(J, eps)
    n4 = math.hypot(J, zeta)
    if n3 == 0 or n4 == 0:
        raise ParameterError("eigenvector normalisation vanishes; J must be nonzero")
    phi3 = (eps * _basis(I10) + J * _basis(I01)) / n3
    phi4 = (zeta * _basis(I10) + J * _basis(I01)) / n4
    return EigenSystem((
        EigenPair(e1, _basis(I00)),
        EigenPair(e2, _basis(I11)),
        EigenPair(e3, phi3),
        EigenPair(e4, phi4),
    ))


def log_partition_function(p: ModelParams) -> float:
    """``log Z`` with ``Z = 2 e^{-lam J/2T} cosh(B/T) + 2 e^{lam J/2T} cosh(eta/T)``."""
    T = p.require_T()
    half = p.lam * p.J / (2 * T)
    return float(np.logaddexp(-half + log2cosh(p.B / T), half + log2cosh(p.eta / T)))


def _derived(p: ModelParams, log_Z: float) -> DerivedQuantities:
    """Raw symbols of the closed form; these overflow to +-inf, never NaN."""
    T = p.require_T()
    x = p.eta / T
    log_m = log2cosh(x) - math.log(2.0)
    log_sh = log2sinh(x) - math.log(2.0) if x > 0 else -math.inf
    m = _exp(log_m)
    n = math.copysign(_exp(log_sh + math.log(abs(p.b)) - math.log(p.eta)), p.b) if p.b else 0.0
    c = math.copysign(_exp(p.lam * p.J / (2 * T) + log_sh + math.log(abs(p.J)) - math.log(p.eta)), p.J)
    return DerivedQuantities(p.eta, p.epsilon, p.zeta, log_Z, _exp(log_Z), m, n, c)


def thermal_state_closed(p: ModelParams) -> ThermalState:
    """Gibbs state from the closed-form X-shaped matrix."""
    T = p.require_T()
    log_Z = log_partition_function(p)
    e1, e2, _, _ = p.energies()
    eta = p.eta
    x = eta / T
    half = p.lam * p.J / (2 * T)
    # middle block: e^{half + x}/2 * [(1 -+ b/eta) + (1 +- b/eta) e^{-2x}]
    lo = -p.epsilon / eta   # 1 - b/eta
    hi = p.zeta / eta       # 1 + b/eta
    damp = math.exp(-2.0 * x)
    scale = math.exp(half + x - log_Z - math.log(2.0))
    rho = np.zeros((4, 4), dtype=complex)
    rho[I11, I11] = math.exp(-e2 / T - log_Z)
    rho[I00, I00] = math.exp(-e1 / T - log_Z)
    rho[I10, I10] = scale * (lo + hi * damp)
    rho[I01, I01] = scale * (hi + lo * damp)
    off = -scale * (p.J / eta) * (-math.expm1(-2.0 * x))
    rho[I10, I01] = off
    rho[I01, I10] = off
    return ThermalState(rho, _exp(log_Z), log_Z, _derived(p, log_Z))


def thermal_state_oracle(p: ModelParams) -> ThermalState:
    """Gibbs state from the spectral exponential of the numeric Hamiltonian."""
    T = p.require_T()
    h = build_hamiltonian(p)
    dec = numkit.hermitian_eigendecompose(h)
    e_min = dec.eigenvalues[0]
    weights = np.exp(-(dec.eigenvalues - e_min) / T)
    v = dec.eigenvectors
    unnorm = (v * weights) @ v.conj().T
    tr = float(np.sum(weights))
    rho = unnorm / tr
    rho = 0.5 * (rho + rho.conj().T)
    log_Z = math.log(tr) - e_min / T
    return ThermalState(rho, _exp(log_Z), log_Z, _derived(p, log_Z))


def ground_state(p: ModelParams) -> tuple[np.ndarray, float, bool]:
    """Lowest eigenpair of the analytic spectrum and a degeneracy flag."""
    es = analytic_eigensystem(p)
    order = sorted(range(4), key=lambda i: es.pairs[i].energy)
    lowest = es.pairs[order[0]]
    degenerate = es.pairs[order[1]].energy - lowest.energy <= DEGENERACY_TOL
    return lowest.state, lowest.energy, degenerate


def thermal_energy(p: ModelParams) -> float:
    """``tr(rho H)``."""
    rho = thermal_state_closed(p).rho
    return float(np.real(np.trace(rho @ build_hamiltonian(p))))
