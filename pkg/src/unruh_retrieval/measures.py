"""Concurrence and geometric discord of two-qubit states."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import qmath
from .errors import DegenerateStateError, NegativeEigenvalueError
from .protocol import normalization_n2
from .states import ProtocolParams, validate_density

SPIN_FLIP = qmath.tensor_product(qmath.Y, qmath.Y)


def spin_flipped(rho) -> np.ndarray:
    """``(sy (x) sy) rho* (sy (x) sy)``, conjugation in the computational basis."""
    rho = np.asarray(validate_density(rho))
    return SPIN_FLIP @ rho.conj() @ SPIN_FLIP


def _wootters_singular_values(rho: np.ndarray) -> np.ndarray:
    # singular values of sqrt(rho) S sqrt(rho)* are the square roots of the
    # eigenvalues of rho S rho* S, without taking roots of rounding noise
    root = qmath.psd_sqrt(rho)
    return np.linalg.svd(root @ SPIN_FLIP @ root.conj(), compute_uv=False)


def wootters_eigenvalues(rho) -> np.ndarray:
    """Eigenvalues of ``rho (sy sy) rho* (sy sy)``, descending and clamped at 0.

    Computed from the Hermitian matrix ``sqrt(rho) rho~ sqrt(rho)`` which has
    the same spectrum.
    """
    rho = np.asarray(validate_density(rho))
    root = qmath.psd_sqrt(rho)
    herm = root @ spin_flipped(rho) @ root
    herm = (herm + herm.conj().T) / 2
    vals = qmath.hermitian_eigenvalues(herm, clamp=True)
    if vals[-1] < 0:
        raise NegativeEigenvalueError(f"Wootters eigenvalue {vals[-1]!r} < -1e-10")
    return vals


def concurrence(rho) -> float:
    """Wootters concurrence ``max(0, l1 - l2 - l3 - l4)`` of a two-qubit state.

    ``l_i`` are the square roots of :func:`wootters_eigenvalues`, obtained
    directly as singular values so that vanishing eigenvalues stay at machine
    precision instead of ``sqrt(eps)``.
    """
    rho = np.asarray(validate_density(rho))
    s = _wootters_singular_values(rho)
    return max(0.0, float(s[0] - s[1] - s[2] - s[3]))


def x_state_concurrence(rho) -> float:
    """Concurrence of an X-shaped state from its entries alone."""
    m = np.asarray(validate_density(rho))
    d = m.diagonal().real.clip(min=0.0)
    outer = abs(m[0, 3]) - math.sqrt(d[1] * d[2])
    inner = abs(m[1, 2]) - math.sqrt(d[0] * d[3])
    return 2.0 * max(0.0, outer, inner)


def concurrence_pm(params: ProtocolParams) -> float:
    """Concurrence after the full protocol: ``2 a b sqrt(pb qb) cos r / N2``."""
    n2 = normalization_n2(params)
    if n2 <= 0.0:
        raise DegenerateStateError(f"N2 = {n2!r}")
    return (
        2 * params.alpha * params.beta * math.sqrt(params.p_bar * params.q_bar)
        * math.cos(params.r) / n2
    )


def concurrence_ud(alpha: float, r: float) -> float:
    """Concurrence under Unruh decoherence alone, ``2 a b cos r``."""
    params = ProtocolParams.from_alpha(alpha, r=r)
    return 2 * params.alpha * params.beta * math.cos(params.r)


def concurrence_si_opt(alpha: float, p: float, r: float) -> float:
    """Concurrence reached with the state-independent reversal strength."""
    params = ProtocolParams.from_alpha(alpha, p=p, r=r)
    return 2 * params.alpha * params.beta / (1 + params.alpha**2 * params.p_bar * math.sin(r) ** 2)


@dataclass(frozen=True)
class BlochDecomposition:
    """Local Bloch vectors ``x`` (Alice), ``y`` (Rob) and correlations ``W``."""

    x: np.ndarray
    y: np.ndarray
    W: np.ndarray

    def reconstruct(self) -> np.ndarray:
        rho = qmath.tensor_product(qmath.I2, qmath.I2)
        for i, s in enumerate(qmath.PAULIS):
            rho = rho + self.x[i] * qmath.tensor_product(s, qmath.I2)
            rho = rho + self.y[i] * qmath.tensor_product(qmath.I2, s)
            for j, t in enumerate(qmath.PAULIS):
                rho = rho + self.W[i, j] * qmath.tensor_product(s, t)
        return rho / 4


def bloch_decompose(rho) -> BlochDecomposition:
    rho = np.asarray(validate_density(rho))

    def expect(op):
        return float(np.trace(rho @ op).real)

    x = np.array([expect(qmath.tensor_product(s, qmath.I2)) for s in qmath.PAULIS])
    y = np.array([expect(qmath.tensor_product(qmath.I2, s)) for s in qmath.PAULIS])
    w = np.array([[expect(qmath.tensor_product(s, t)) for t in qmath.PAULIS] for s in qmath.PAULIS])
    return BlochDecomposition(x, y, w)


def geometric_discord(rho) -> float:
    """Geometric discord ``(|x|^2 + ||W||_F^2 - lambda_max(x x^T + W W^T)) / 4``.

    Measured on Alice's side; the maximum for two qubits is 1/2.
    """
    b = bloch_decompose(rho)
    gram = np.outer(b.x, b.x) + b.W @ b.W.T
    lam = qmath.hermitian_eigenvalues(gram)[0]
    value = (b.x @ b.x + np.sum(b.W**2) - lam) / 4
    return max(0.0, float(value))


def scaled_discord(rho) -> float:
    """``2 * geometric_discord``, normalized to 1 for maximally entangled states."""
    return 2.0 * geometric_discord(rho)
