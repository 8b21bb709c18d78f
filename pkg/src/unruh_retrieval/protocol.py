"""End-to-end retrieval protocol.

Two independent routes produce the post-selected Alice/Rob state:

* :func:`run_pipeline` pushes amplitudes through each step on the
  three-mode Hilbert space and traces region II out at the end;
* :func:`closed_form_rho` writes the resulting X-shaped matrix directly.

Each route checks the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import qmath
from .channels import measure_branch, partial_measurement
from .errors import DegenerateStateError
from .states import (
    ProtocolParams,
    ThreeModePureState,
    TwoQubitDensityMatrix,
    initial_state,
    unruh_expand,
    validate_density,
)


@dataclass(frozen=True)
class ProtocolOutcome:
    """Post-selected state and bookkeeping of where probability was lost.

    ``n1`` is the probability that the first measurement succeeds; ``n2`` the
    probability that both succeed, which is also ``success_probability``.
    """

    rho: TwoQubitDensityMatrix
    success_probability: float
    n1: float
    n2: float


@dataclass(frozen=True)
class PipelineRun:
    """Unnormalized three-mode state after step 5, plus both branch probabilities."""

    state: ThreeModePureState
    first_branch: float
    second_branch: float


def pipeline_state(params: ProtocolParams) -> PipelineRun:
    """Run steps (1)-(5) on amplitudes, before tracing out region II.

    1. weak measurement ``M0(p)`` on Rob (success branch kept);
    2. instantaneous acceleration, i.e. the Unruh mode expansion;
    3. bit flip on region I;
    4. weak measurement ``M0(q)`` on region I (success branch kept);
    5. bit flip on region I.
    """
    first, _ = partial_measurement(params.p)
    second, _ = partial_measurement(params.q)

    psi = initial_state(params.alpha, params.beta)
    psi, prob1 = measure_branch(first, psi, "R")
    if prob1 == 0.0:
        raise DegenerateStateError("first measurement succeeds with probability 0")
    psi = unruh_expand(psi, params.r)
    psi, _ = measure_branch(qmath.X, psi, "I")
    psi, prob2 = measure_branch(second, psi, "I")
    psi, _ = measure_branch(qmath.X, psi, "I")
    return PipelineRun(psi, prob1, prob2)


def run_pipeline(params: ProtocolParams) -> ProtocolOutcome:
    run = pipeline_state(params)
    n2 = run.first_branch * run.second_branch
    if n2 == 0.0:
        raise DegenerateStateError("double-success probability is 0; no post-selected state")
    rho = qmath.partial_trace_last(run.state)
    rho = rho / np.trace(rho).real
    return ProtocolOutcome(validate_density(rho), n2, run.first_branch, n2)


def normalization_n1(params: ProtocolParams) -> float:
    return params.alpha**2 * params.p_bar + params.beta**2


def normalization_n2(params: ProtocolParams) -> float:
    a2, pb, qb = params.alpha**2, params.p_bar, params.q_bar
    c2, s2 = math.cos(params.r) ** 2, math.sin(params.r) ** 2
    return a2 * pb * c2 + a2 * pb * qb * s2 + params.beta**2 * qb


def closed_form_rho(params: ProtocolParams) -> ProtocolOutcome:
    """Post-selected state written out directly.

    Diagonal ``(a^2 pb cos^2 r, a^2 pb qb sin^2 r, 0, b^2 qb) / N2`` and
    corners ``a b sqrt(pb qb) cos r / N2``, with ``pb = 1-p``, ``qb = 1-q``.
    """
    a, b = params.alpha, params.beta
    pb, qb = params.p_bar, params.q_bar
    c, s = math.cos(params.r), math.sin(params.r)
    n2 = normalization_n2(params)
    if n2 <= 0.0:
        raise DegenerateStateError(f"N2 = {n2!r}: the post-selected branch never occurs")
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = a * a * pb * c * c
    m[1, 1] = a * a * pb * qb * s * s
    m[3, 3] = b * b * qb
    m[0, 3] = m[3, 0] = a * b * math.sqrt(pb * qb) * c
    return ProtocolOutcome(validate_density(m / n2), n2, normalization_n1(params), n2)


def success_probability_si(alpha: float, p: float, r: float) -> float:
    """Double-success probability when q takes the state-independent optimum."""
    pb = 1.0 - p
    return pb * math.cos(r) ** 2 * (1.0 + alpha * alpha * pb * math.sin(r) ** 2)
