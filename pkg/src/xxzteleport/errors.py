"""Exception types raised by the library."""


class ParameterError(ValueError):
    """Model or input parameters outside the admitted domain."""


class NotHermitianError(ValueError):
    """A matrix expected to be Hermitian is not, within tolerance."""

    def __init__(self, asymmetry, tol):
        self.asymmetry = float(asymmetry)
        self.tol = float(tol)
        super().__init__(
            f"matrix is not Hermitian: max|M - M^H| = {asymmetry:.3e} > {tol:.1e}"
        )


class DomainError(ValueError):
    """A spectral function is undefined at an eigenvalue."""


class InvalidDensityMatrixError(ValueError):
    """A matrix fails one of the density-matrix properties."""
