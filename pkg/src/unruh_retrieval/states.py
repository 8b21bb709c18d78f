"""Protocol parameters and the quantum states the protocol moves through."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import qmath
from .errors import (
    DimensionError,
    NegativeEigenvalueError,
    NonHermitianError,
    NormalizationError,
    PreconditionError,
    RangeError,
    ReversalStrengthError,
    TraceError,
)

R_MAX = math.pi / 4
NORM_TOL = 1e-12
DENSITY_TOL = 1e-10


def check_r(r: float) -> float:
    r = float(r)
    if not 0.0 <= r <= R_MAX or math.isnan(r):
        raise RangeError(f"r={r!r} outside [0, pi/4]")
    return r


def check_strength(value: float, name: str = "p") -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0 or math.isnan(value):
        raise RangeError(f"{name}={value!r} outside [0, 1]")
    return value


def check_reversal_strength(q: float) -> float:
    q = check_strength(q, "q")
    if q == 1.0:
        raise ReversalStrengthError("q=1 is not allowed: the reversal 1/sqrt(1-q) diverges")
    return q


def check_amplitudes(alpha: float, beta: float) -> tuple[float, float]:
    alpha, beta = float(alpha), float(beta)
    if alpha < 0 or beta < 0:
        raise RangeError(f"alpha and beta must be nonnegative, got ({alpha}, {beta})")
    if abs(alpha * alpha + beta * beta - 1.0) > NORM_TOL:
        raise NormalizationError(f"alpha^2 + beta^2 = {alpha * alpha + beta * beta!r}, expected 1")
    return alpha, beta


@dataclass(frozen=True)
class ProtocolParams:
    """Scalar knobs of the retrieval protocol.

    Attributes
    ----------
    alpha, beta : float
        Nonnegative real amplitudes of ``alpha|00> + beta|11>``.
    p : float
        Strength of the first (pre-acceleration) partial measurement, in [0, 1].
    q : float
        Strength of the reversing measurement, in [0, 1).
    r : float
        Acceleration parameter in [0, pi/4].
    """

    alpha: float
    beta: float
    p: float = 0.0
    q: float = 0.0
    r: float = 0.0

    def __post_init__(self):
        check_amplitudes(self.alpha, self.beta)
        check_strength(self.p, "p")
        check_reversal_strength(self.q)
        check_r(self.r)

    @classmethod
    def from_alpha(cls, alpha: float, p: float = 0.0, q: float = 0.0, r: float = 0.0) -> "ProtocolParams":
        """Build parameters with ``beta = sqrt(1 - alpha^2)``."""
        alpha = float(alpha)
        if not 0.0 <= alpha <= 1.0:
            raise RangeError(f"alpha={alpha!r} outside [0, 1]")
        return cls(alpha, math.sqrt(1.0 - alpha * alpha), p, q, r)

    @property
    def p_bar(self) -> float:
        return 1.0 - self.p

    @property
    def q_bar(self) -> float:
        return 1.0 - self.q

    def with_q(self, q: float) -> "ProtocolParams":
        return ProtocolParams(self.alpha, self.beta, self.p, q, self.r)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class TwoQubitDensityMatrix:
    """Validated 4x4 state of the Alice x Rob(region I) pair.

    Build it through :func:`validate_density`. The wrapped array is read-only
    and the object converts back with ``np.asarray``.
    """

    matrix: np.ndarray = field(repr=False)

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    def element(self, i: int, j: int) -> complex:
        """1-based matrix element, e.g. ``element(1, 4)`` is rho_14."""
        return complex(self.matrix[i - 1, j - 1])


@dataclass(frozen=True)
class ThreeModePureState:
    """Amplitudes over A x I x II; may be unnormalized (a measurement branch)."""

    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (8,):
            raise DimensionError(f"three-mode state needs 8 amplitudes, got {amps.size}")
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def __array__(self, dtype=None, copy=None):
        return self.amplitudes if dtype is None else self.amplitudes.astype(dtype)

    def normalized(self) -> "ThreeModePureState":
        n = self.norm
        if n == 0.0:
            raise NormalizationError("cannot normalize the zero vector")
        return ThreeModePureState(self.amplitudes / n)

    def amplitude(self, bits: str) -> complex:
        return complex(self.amplitudes[int(bits, 2)])

    def branch(self, region_ii: int) -> np.ndarray:
        """The 4-component (A x I) amplitudes with region II fixed to ``region_ii``."""
        return self.amplitudes.reshape(4, 2)[:, region_ii].copy()


def initial_state(alpha: float, beta: float) -> ThreeModePureState:
    """``alpha|000> + beta|110>``, region II parked in |0> before acceleration."""
    alpha, beta = check_amplitudes(alpha, beta)
    amps = np.zeros(8, dtype=complex)
    amps[0b000] = alpha
    amps[0b110] = beta
    return ThreeModePureState(amps)


def unruh_isometry(r: float) -> np.ndarray:
    """8x8 map that re-expresses Rob's Minkowski mode in Rindler modes I, II.

    On the region-II-vacuum subspace it sends ``|0>_R -> cos r|00> + sin r|11>``
    and ``|1>_R -> |10>`` (modes I, II); columns with region II occupied are zero.
    """
    r = check_r(r)
    c, s = math.cos(r), math.sin(r)
    v = np.zeros((4, 4), dtype=complex)
    v[0b00, 0b00] = c
    v[0b11, 0b00] = s
    v[0b10, 0b10] = 1.0
    return qmath.tensor_product(qmath.I2, v)


def unruh_expand(state: ThreeModePureState, r: float) -> ThreeModePureState:
    """Apply the Unruh mode expansion to Rob's qubit.

    Raises
    ------
    PreconditionError
        If region II is already occupied in ``state``.
    """
    amps = np.asarray(state, dtype=complex)
    if np.any(amps.reshape(4, 2)[:, 1] != 0):
        raise PreconditionError("unruh_expand needs region II in |0> (not yet expanded)")
    return ThreeModePureState(unruh_isometry(r) @ amps)


def validate_density(rho) -> TwoQubitDensityMatrix:
    """Check that ``rho`` is a two-qubit density matrix and wrap it.

    Validation only: nothing is clamped or renormalized. Each failure mode
    raises its own exception type.
    """
    if isinstance(rho, TwoQubitDensityMatrix):
        return rho
    arr = np.asarray(rho, dtype=complex)
    if arr.shape != (4, 4):
        raise DimensionError(f"density matrix must be 4x4, got {arr.shape}")
    if not qmath.is_hermitian(arr, DENSITY_TOL):
        raise NonHermitianError("density matrix is not Hermitian within 1e-10")
    tr = np.trace(arr).real
    if abs(tr - 1.0) > DENSITY_TOL:
        raise TraceError(f"trace is {tr!r}, expected 1")
    lowest = qmath.hermitian_eigenvalues(arr)[-1]
    if lowest < -DENSITY_TOL:
        raise NegativeEigenvalueError(f"eigenvalue {lowest!r} < -1e-10")
    return TwoQubitDensityMatrix(_frozen(arr))
