"""Operators acting on Rob's qubit.

* the Unruh channel (an amplitude-damping channel with |0> and |1> swapped,
  so population drains towards |1>),
* the partial measurement ``M0 = sqrt(1-p)|0><0| + |1><1|``, ``M1 = sqrt(p)|0><0|``,
* its reversal ``X M0(q) X`` (flip, weak measurement, flip),
* the map from proper acceleration to the parameter r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

from . import qmath
from .errors import DimensionError, RangeError, ValidationError
from .states import (
    ThreeModePureState,
    TwoQubitDensityMatrix,
    check_r,
    check_reversal_strength,
    check_strength,
    validate_density,
)

COMPLETENESS_TOL = 1e-12

#: mode slots in the A x I x II ordering; "R" is Rob before he accelerates
MODES = {"A": 0, "R": 1, "I": 1}


def _completeness_defect(ops) -> float:
    total = sum(op.conj().T @ op for op in ops)
    return float(np.max(np.abs(total - qmath.I2)))


@dataclass(frozen=True)
class KrausChannel:
    operators: tuple

    def __post_init__(self):
        ops = tuple(qmath.as_operator(op, "Kraus operator") for op in self.operators)
        if not ops or any(op.shape != (2, 2) for op in ops):
            raise DimensionError("Kraus operators must be 2x2")
        defect = _completeness_defect(ops)
        if defect > COMPLETENESS_TOL:
            raise ValidationError(f"Kraus operators are not complete (defect {defect:.3g})")
        object.__setattr__(self, "operators", ops)

    def completeness(self) -> np.ndarray:
        return sum(op.conj().T @ op for op in self.operators)


@dataclass(frozen=True)
class MeasurementOperator:
    matrix: np.ndarray
    strength: float
    outcome: Literal["success", "failure"]


def unruh_channel(r: float) -> KrausChannel:
    """Kraus operators ``E1 = [[cos r, 0], [0, 1]]``, ``E2 = [[0, 0], [sin r, 0]]``."""
    r = check_r(r)
    e1 = np.array([[math.cos(r), 0], [0, 1]], dtype=complex)
    e2 = np.array([[0, 0], [math.sin(r), 0]], dtype=complex)
    return KrausChannel((e1, e2))


def apply_channel_to_rob(channel: KrausChannel, rho) -> TwoQubitDensityMatrix:
    """``sum_i (I (x) E_i) rho (I (x) E_i)^dagger`` on a two-qubit state."""
    rho = np.asarray(validate_density(rho))
    out = np.zeros((4, 4), dtype=complex)
    for e in channel.operators:
        k = qmath.embed(e, 1, n_modes=2)
        out += k @ rho @ k.conj().T
    return validate_density(out)


def partial_measurement(strength: float) -> tuple[MeasurementOperator, MeasurementOperator]:
    """Success/failure pair of the weak measurement with strength ``p``."""
    p = check_strength(strength, "p")
    m0 = np.array([[math.sqrt(1.0 - p), 0], [0, 1]], dtype=complex)
    m1 = np.array([[math.sqrt(p), 0], [0, 0]], dtype=complex)
    return MeasurementOperator(m0, p, "success"), MeasurementOperator(m1, p, "failure")


def reversal_operator(strength: float) -> np.ndarray:
    """``diag(1, sqrt(1-q))``, the reversal without its ``1/sqrt(1-q)`` prefactor.

    The prefactor only rescales the branch; leaving it out keeps branch norms
    equal to genuine probabilities.
    """
    q = check_reversal_strength(strength)
    return np.array([[1, 0], [0, math.sqrt(1.0 - q)]], dtype=complex)


def reversal_operator_stepwise(strength: float) -> np.ndarray:
    """The same operator built as bit flip, weak measurement, bit flip."""
    q = check_reversal_strength(strength)
    m0, _ = partial_measurement(q)
    return qmath.X @ m0.matrix @ qmath.X


def reversal_measurement(strength: float) -> tuple[MeasurementOperator, MeasurementOperator]:
    """Complete POVM pair for the reversal: ``X M0(q) X`` and ``X M1(q) X``."""
    q = check_reversal_strength(strength)
    m0, m1 = partial_measurement(q)
    flip = lambda m: qmath.X @ m @ qmath.X  # noqa: E731
    return (
        MeasurementOperator(flip(m0.matrix), q, "success"),
        MeasurementOperator(flip(m1.matrix), q, "failure"),
    )


def _mode_index(target) -> int:
    if isinstance(target, str) and target in MODES:
        return MODES[target]
    raise DimensionError(f"invalid target mode {target!r}; expected one of 'A', 'R', 'I'")


def apply_local(op, state: ThreeModePureState, target: str) -> ThreeModePureState:
    """Apply a 2x2 operator to one mode of a three-mode state."""
    m = op.matrix if isinstance(op, MeasurementOperator) else op
    full = qmath.embed(m, _mode_index(target), n_modes=3)
    return ThreeModePureState(full @ np.asarray(state))


def measure_branch(
    op: Union[MeasurementOperator, np.ndarray], state: ThreeModePureState, target: str
) -> tuple[ThreeModePureState, float]:
    """Unnormalized post-measurement branch and its conditional probability.

    The probability is ``||out||^2 / ||in||^2``, so chaining branches and
    multiplying their probabilities gives the joint probability.
    """
    norm_in = state.norm
    if norm_in == 0.0:
        raise ValidationError("cannot measure the zero vector")
    out = apply_local(op, state, target)
    return out, (out.norm / norm_in) ** 2


@dataclass(frozen=True)
class AccelerationSpec:
    """Proper acceleration ``a`` and Dirac mode frequency ``omega`` (natural units)."""

    a: float
    omega: float

    def __post_init__(self):
        if not self.a >= 0:
            raise RangeError(f"acceleration a={self.a!r} must be >= 0")
        if not self.omega > 0:
            raise RangeError(f"frequency omega={self.omega!r} must be > 0")


def acceleration_to_r(spec: AccelerationSpec) -> float:
    """r with ``cos r = (1 + exp(-2 pi omega / a))^(-1/2)``.

    Evaluated as ``arctan(exp(-pi omega / a))``, the same angle; ``a = 0`` and
    ``a = inf`` map to 0 and pi/4.
    """
    if spec.a == 0:
        return 0.0
    if math.isinf(spec.a):
        return math.pi / 4
    return math.atan(math.exp(-math.pi * spec.omega / spec.a))
