"""Necessary-and-sufficient steering test for two-qubit T states."""

from .entanglement import concurrence, concurrence_pure, ef_band, wootters_concurrence
from .errors import ConvergenceError, DomainError, InvalidStateError, NotTStateError
from .families import (
    BellDiagonalParams, bell_diagonal_from_t, random_bell_diagonal, random_separable_t,
    random_t_state, rank2_t_state, werner, werner_pd,
)
from .quantum_state import (
    apply_local_unitary, conditional_spectrum, correlation_matrix, is_t_state, local_bloch,
    mix_with_white_noise, phase_damp, validate,
)
from .steering import (
    GEOMETRIES, MeasurementGeometry, SingularSpectrum, SteeringReport, axial_closed_form,
    finite_bound, lhs_condition_holds, max_violation, singular_spectrum, steering_parameter_finite,
    steering_verdict,
)

__version__ = "0.1.0"
