"""Dense complex linear algebra for the small matrices used here.

Basis order for two-qubit operators is {|11>, |10>, |01>, |00>} with the first
tensor factor acting on qubit 1.  Single-qubit operators are written in the
basis (|1>, |0>), where |1> is spin up, so ``SIGMA_Z @ [1, 0] == +[1, 0]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, NotHermitianError

HERMITIAN_TOL = 1e-10
NEGATIVE_CLAMP = 1e-10
_OFFDIAG_TOL = 1e-14
_MAX_SWEEPS = 60
_TINY = np.finfo(float).tiny
# eigenvalues this far below the spectral radius are numerically zero
_RANK_CUTOFF = 8 * np.finfo(float).eps

IDENTITY2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (IDENTITY2, SIGMA_X, SIGMA_Y, SIGMA_Z)


@dataclass(frozen=True)
class HermitianEigenDecomposition:
    """Eigenvalues in ascending order and the matching orthonormal columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def _as_square(m) -> np.ndarray:
    a = np.array(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def asymmetry(m) -> float:
    """Largest entry of |M - M^H|."""
    a = np.asarray(m, dtype=complex)
    return float(np.max(np.abs(a - a.conj().T)))


def hermitian_eigendecompose(m, tol: float = HERMITIAN_TOL) -> HermitianEigenDecomposition:
    """Diagonalise a Hermitian matrix with cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot ``a[p, q]`` and then
    applies the real symmetric Jacobi rotation, so the composite unitary is
    ``[[c, s], [-s e^{-ia}, c e^{-ia}]]`` on the (p, q) plane.  Sweeps continue
    until the off-diagonal Frobenius norm falls below ``1e-14`` relative to
    ``max(1, max|m|)``.

    Raises:
        NotHermitianError: if ``max|m - m^H| > tol``.
    """
    a = _as_square(m)
    asym = asymmetry(a)
    if asym > tol:
        raise NotHermitianError(asym, tol)
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(a))))
    offmask = ~np.eye(n, dtype=bool)

    for _ in range(_MAX_SWEEPS):
        off = float(np.linalg.norm(a[offmask]))
        if off < _OFFDIAG_TOL * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                mag = abs(g)
                if mag < _TINY:
                    a[p, q] = a[q, p] = 0.0
                    continue
                phase = g / mag  # e^{i alpha}
                app, aqq = a[p, p].real, a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                conj_phase = phase.conjugate()

                # columns: a <- a U
                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - s * conj_phase * col_q
                a[:, q] = s * col_p + c * conj_phase * col_q
                # rows: a <- U^H a
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p - s * phase * row_q
                a[q, :] = s * row_p + c * phase * row_q
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
                a[p, q] = 0.0
                a[q, p] = 0.0

                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * conj_phase * vq
                v[:, q] = s * vp + c * conj_phase * vq

    w = np.real(np.diag(a)).copy()
    order = np.argsort(w, kind="stable")
    return HermitianEigenDecomposition(w[order], v[:, order])


def _from_spectrum(dec: HermitianEigenDecomposition, values) -> np.ndarray:
    v = dec.eigenvectors
    out = (v * values) @ v.conj().T
    return 0.5 * (out + out.conj().T)


def matrix_function(m, f: Callable[[float], float]) -> np.ndarray:
    """Return ``V f(L) V^H`` for Hermitian ``m = V L V^H``.

    ``f`` is called once per eigenvalue with a Python float.

    Raises:
        DomainError: if ``f`` fails or returns a non-finite value at an eigenvalue.
    """
    dec = hermitian_eigendecompose(m)
    values = []
    for lam in dec.eigenvalues:
        try:
            y = f(float(lam))
        except (ValueError, ArithmeticError) as exc:
            raise DomainError(f"function undefined at eigenvalue {lam:.6e}: {exc}") from exc
        if not np.isfinite(y):
            raise DomainError(f"function is not finite at eigenvalue {lam:.6e}")
        values.append(y)
    return _from_spectrum(dec, np.asarray(values))


def clamp_psd_spectrum(eigenvalues) -> np.ndarray:
    """Clamp rounding noise out of a PSD spectrum.

    Values in ``[-1e-10, 0)`` and values whose magnitude is below
    ``8 eps * max|w|`` become zero.  Anything more negative is an error.
    """
    w = np.asarray(eigenvalues, dtype=float).copy()
    if np.any(w < -NEGATIVE_CLAMP):
        raise DomainError(f"matrix is not positive semidefinite: min eigenvalue {w.min():.3e}")
    cutoff = _RANK_CUTOFF * float(np.max(np.abs(w))) if w.size else 0.0
    w[(w < 0) | (np.abs(w) <= cutoff)] = 0.0
    return w


def sqrtm_psd(m) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix."""
    dec = hermitian_eigendecompose(m)
    return _from_spectrum(dec, np.sqrt(clamp_psd_spectrum(dec.eigenvalues)))


def expm_hermitian(m) -> np.ndarray:
    return matrix_function(m, math.exp)


def singular_values(a) -> np.ndarray:
    """Singular values of a square matrix, descending.

    Obtained from the Hermitian dilation ``[[0, A], [A^H, 0]]`` whose spectrum
    is ``+-s_i``; this keeps small singular values accurate to ``eps * |A|``
    rather than ``sqrt(eps)`` as squaring into ``A A^H`` would.
    """
    a = _as_square(a)
    n = a.shape[0]
    dilation = np.zeros((2 * n, 2 * n), dtype=complex)
    dilation[:n, n:] = a
    dilation[n:, :n] = a.conj().T
    w = hermitian_eigendecompose(dilation).eigenvalues
    return np.clip(w[::-1][:n], 0.0, None)


def kron2(a, b) -> np.ndarray:
    """Kronecker product of two 2x2 operators; ``a`` acts on qubit 1."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise ValueError(f"kron2 expects 2x2 factors, got {a.shape} and {b.shape}")
    return np.kron(a, b)


def dagger(m) -> np.ndarray:
    return np.asarray(m).conj().T


def projector(vec) -> np.ndarray:
    """``|v><v|`` for a column vector ``v``."""
    v = np.asarray(vec, dtype=complex).reshape(-1)
    return np.outer(v, v.conj())
