"""Choosing the reversal strength q."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .errors import DegenerateObjectiveWarning, ValidationError
from .measures import concurrence, scaled_discord
from .protocol import closed_form_rho
from .states import ProtocolParams, check_r, check_strength

Q_GUARD = 1e-9
SCAN_POINTS = 257
GOLDEN_TOL = 1e-9
INV_PHI = (math.sqrt(5) - 1) / 2

MeasureKind = Literal["concurrence", "scaled_discord"]
MEASURES: dict[str, Callable] = {"concurrence": concurrence, "scaled_discord": scaled_discord}


@dataclass(frozen=True)
class OptimalReversal:
    q_opt: float
    value: float
    measure_kind: str
    method: Literal["state_independent", "state_dependent"]


def q_state_independent(p: float, r: float) -> float:
    """``1 - (1-p) cos^2 r``, capped at ``1 - 1e-9`` so that it stays a legal q.

    It depends on neither amplitude of the initial state.
    """
    p = check_strength(p, "p")
    r = check_r(r)
    return min(1.0 - (1.0 - p) * math.cos(r) ** 2, 1.0 - Q_GUARD)


def golden_section_max(f: Callable[[float], float], lo: float, hi: float, tol: float = GOLDEN_TOL):
    """Maximize a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x))``."""
    c = hi - INV_PHI * (hi - lo)
    d = lo + INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - INV_PHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + INV_PHI * (hi - lo)
            fd = f(d)
    x = (lo + hi) / 2
    return x, f(x)


def measure_at(params: ProtocolParams, measure_kind: str = "concurrence") -> float:
    try:
        measure = MEASURES[measure_kind]
    except KeyError:
        raise ValidationError(f"unknown measure {measure_kind!r}; choose from {sorted(MEASURES)}") from None
    return measure(closed_form_rho(params).rho)


def state_independent_optimum(alpha: float, p: float, r: float, measure_kind: str = "concurrence") -> OptimalReversal:
    q = q_state_independent(p, r)
    value = measure_at(ProtocolParams.from_alpha(alpha, p=p, q=q, r=r), measure_kind)
    return OptimalReversal(q, value, measure_kind, "state_independent")


def q_state_dependent(alpha: float, p: float, r: float, measure_kind: str = "concurrence") -> OptimalReversal:
    """Reversal strength maximizing the chosen measure of the post-selected state.

    A 257-point scan over ``q in [0, 1 - 1e-9]`` picks the best grid point
    (earliest on ties), then golden-section search refines inside the two
    neighbouring cells until the bracket is narrower than 1e-9.

    If ``alpha`` or ``beta`` vanishes the measure is zero for every q; a
    :class:`DegenerateObjectiveWarning` is issued and ``q_opt = 0`` returned.
    """
    base = ProtocolParams.from_alpha(alpha, p=p, r=r)
    if measure_kind not in MEASURES:
        raise ValidationError(f"unknown measure {measure_kind!r}; choose from {sorted(MEASURES)}")

    def objective(q: float) -> float:
        return measure_at(base.with_q(q), measure_kind)

    if base.alpha == 0.0 or base.beta == 0.0:
        warnings.warn(
            f"{measure_kind} is constant in q for alpha={base.alpha}, beta={base.beta}",
            DegenerateObjectiveWarning,
            stacklevel=2,
        )
        return OptimalReversal(0.0, objective(0.0), measure_kind, "state_dependent")

    q_max = 1.0 - Q_GUARD
    grid = np.linspace(0.0, q_max, SCAN_POINTS)
    values = np.array([objective(q) for q in grid])
    k = int(np.argmax(values))
    best_q, best_v = float(grid[k]), float(values[k])

    lo, hi = float(grid[max(k - 1, 0)]), float(grid[min(k + 1, SCAN_POINTS - 1)])
    q_ref, v_ref = golden_section_max(objective, lo, hi)
    if v_ref > best_v:
        best_q, best_v = q_ref, v_ref
    return OptimalReversal(best_q, best_v, measure_kind, "state_dependent")
