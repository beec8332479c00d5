"""Quantum teleportation through the thermal state of a two-qubit XXZ chain."""

__version__ = "0.1.0"

from .channel import (InputState, apply_channel_general, channel_coefficients, input_density,
                      output_state_closed, pure_channel_output)
from .critical import (classical_threshold_check, critical_inhomogeneous_field,
                       critical_uniform_field, feasibility_zero_T, low_T_critical_field,
                       max_teleportation_temperature)
from .errors import DomainError, InvalidDensityMatrixError, NotHermitianError, ParameterError
from .metrics import (concurrence_general, concurrence_x_state, fidelity_closed, fidelity_general,
                      input_concurrence, output_concurrence_closed)
from .spin_model import (ModelParams, analytic_eigensystem, build_hamiltonian, ground_state,
                         thermal_state_closed, thermal_state_oracle)

__all__ = [
    "InputState", "ModelParams", "DomainError", "InvalidDensityMatrixError", "NotHermitianError",
    "ParameterError", "analytic_eigensystem", "apply_channel_general", "build_hamiltonian",
    "channel_coefficients", "classical_threshold_check", "concurrence_general",
    "concurrence_x_state", "critical_inhomogeneous_field", "critical_uniform_field",
    "feasibility_zero_T", "fidelity_closed", "fidelity_general", "ground_state",
    "input_concurrence", "input_density", "low_T_critical_field", "max_teleportation_temperature",
    "output_concurrence_closed", "output_state_closed", "pure_channel_output",
    "thermal_state_closed", "thermal_state_oracle",
]
