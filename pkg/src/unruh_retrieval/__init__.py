"""Retrieving Unruh-degraded fermionic entanglement with partial measurement.

A qubit pair ``alpha|00> + beta|11>`` is shared by an inertial observer and
an accelerated one. The accelerated side applies a weak measurement before
accelerating and a reversing weak measurement afterwards. This package
computes the post-selected state, its concurrence and geometric discord, the
success probability, and the best reversal strength.
"""

from .channels import (
    AccelerationSpec,
    KrausChannel,
    MeasurementOperator,
    acceleration_to_r,
    apply_channel_to_rob,
    measure_branch,
    partial_measurement,
    reversal_measurement,
    reversal_operator,
    reversal_operator_stepwise,
    unruh_channel,
)
from .errors import (
    DegenerateObjectiveWarning,
    DegenerateStateError,
    UnruhRetrievalError,
    ValidationError,
)
from .measures import (
    BlochDecomposition,
    bloch_decompose,
    concurrence,
    concurrence_pm,
    concurrence_si_opt,
    concurrence_ud,
    geometric_discord,
    scaled_discord,
)
from .optimize import OptimalReversal, q_state_dependent, q_state_independent
from .protocol import ProtocolOutcome, closed_form_rho, run_pipeline, success_probability_si
from .states import (
    ProtocolParams,
    ThreeModePureState,
    TwoQubitDensityMatrix,
    initial_state,
    unruh_expand,
    validate_density,
)

__all__ = [name for name in dir() if not name.startswith("_")]
