"""Small dense complex linear algebra for one, two and three qubits.

Matrices are plain ``numpy`` arrays of ``complex128``. Only the sizes the
protocol needs are accepted: 2, 4 and 8 (square operators, or column vectors
of that length).

Three-mode states use the ordering A (Alice) x I (Rob, region I) x II
(region II); basis index ``a*4 + i*2 + ii``.
"""

from __future__ import annotations

from functools import reduce

import numpy as np

from .errors import DimensionError, NonHermitianError, SizeOverflowError

SUPPORTED_DIMS = (1, 2, 4, 8)
HERMITIAN_TOL = 1e-10
CLAMP_TOL = 1e-10

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (X, Y, Z)

KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)


def as_operator(m, name: str = "matrix") -> np.ndarray:
    """Return ``m`` as a complex array, checking it has a supported shape."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or any(d not in SUPPORTED_DIMS for d in arr.shape):
        raise DimensionError(f"{name}: unsupported shape {np.shape(m)}")
    if arr.shape == (1, 1):
        raise DimensionError(f"{name}: scalars are not operators")
    return arr


def tensor_product(*factors) -> np.ndarray:
    """Kronecker product of two or more operators or column vectors.

    ``(a (x) b)[i*rb + k, j*cb + l] = a[i, j] * b[k, l]``. Vector operands
    give column vectors, so ``tensor_product(KET0, KET1)`` has shape (4, 1).

    Raises
    ------
    SizeOverflowError
        If the result would be larger than 8 x 8.
    """
    if len(factors) < 2:
        raise ValueError("tensor_product needs at least two factors")
    ops = [as_operator(f, name=f"factor {k}") for k, f in enumerate(factors)]
    rows = int(np.prod([o.shape[0] for o in ops]))
    cols = int(np.prod([o.shape[1] for o in ops]))
    if rows > 8 or cols > 8:
        raise SizeOverflowError(f"tensor product would be {rows}x{cols}; limit is 8x8")
    return reduce(np.kron, ops)


def ket(bits: str) -> np.ndarray:
    """Computational basis vector, e.g. ``ket("011")`` (flat array)."""
    if not bits or set(bits) - {"0", "1"} or len(bits) > 3:
        raise DimensionError(f"invalid basis label {bits!r}")
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int(bits, 2)] = 1.0
    return v


def embed(op, target: int, n_modes: int = 3) -> np.ndarray:
    """Pad a single-qubit operator with identities so it acts on ``target``."""
    op = as_operator(op, "op")
    if op.shape != (2, 2):
        raise DimensionError("embed expects a 2x2 operator")
    if not 0 <= target < n_modes or n_modes > 3:
        raise DimensionError(f"target {target} out of range for {n_modes} modes")
    factors = [I2] * n_modes
    factors[target] = op
    if n_modes == 1:
        return op.copy()
    return tensor_product(*factors)


def partial_trace_last(m) -> np.ndarray:
    """Trace out region II from a three-mode state.

    Accepts an 8x8 density matrix or an 8-component pure (possibly
    unnormalized) state vector; the vector is traced through its outer
    product. Returns the 4x4 matrix ``rho[ab, cd] = sum_e rho[abe, cde]``.
    """
    arr = np.asarray(m, dtype=complex)
    if arr.shape in ((8,), (8, 1)):
        psi = arr.reshape(4, 2)
        return psi @ psi.conj().T
    if arr.shape != (8, 8):
        raise DimensionError(f"partial_trace_last expects 8x8 or length-8 input, got {arr.shape}")
    return np.trace(arr.reshape(4, 2, 4, 2), axis1=1, axis2=3)


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    arr = np.asarray(m, dtype=complex)
    return arr.ndim == 2 and arr.shape[0] == arr.shape[1] and bool(
        np.max(np.abs(arr - arr.conj().T), initial=0.0) < tol
    )


def hermitian_eigenvalues(m, clamp: bool = False) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix (at most 4x4), descending.

    With ``clamp=True`` eigenvalues in ``[-1e-10, 0)`` are set to zero; more
    negative values are left alone for the caller to reject.
    """
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or not 1 <= arr.shape[0] <= 4:
        raise DimensionError(f"expected a square matrix up to 4x4, got {arr.shape}")
    if not is_hermitian(arr):
        raise NonHermitianError("matrix is not Hermitian within 1e-10")
    vals = np.linalg.eigvalsh(arr)[::-1].copy()
    if clamp:
        vals[(vals < 0) & (vals >= -CLAMP_TOL)] = 0.0
    return vals


def psd_sqrt(m) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix."""
    arr = np.asarray(m, dtype=complex)
    if not is_hermitian(arr):
        raise NonHermitianError("matrix is not Hermitian within 1e-10")
    w, v = np.linalg.eigh(arr)
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T
