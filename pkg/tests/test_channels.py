import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_allclose, assert_array_equal

from unruh_retrieval import qmath
from unruh_retrieval.channels import (
    AccelerationSpec,
    KrausChannel,
    acceleration_to_r,
    apply_channel_to_rob,
    measure_branch,
    partial_measurement,
    reversal_measurement,
    reversal_operator,
    reversal_operator_stepwise,
    unruh_channel,
)
from unruh_retrieval.errors import DimensionError, RangeError, ReversalStrengthError, ValidationError
from unruh_retrieval.states import ThreeModePureState, initial_state, unruh_expand, unruh_isometry
from unruh_retrieval.measures import concurrence

from conftest import random_density

S2 = 1 / math.sqrt(2)
rs = st.floats(0, math.pi / 4)
strengths = st.floats(0, 1)


def dm(vec):
    vec = np.asarray(vec, dtype=complex)
    return np.outer(vec, vec.conj())


def test_unruh_channel_identity_at_rest():
    e1, e2 = unruh_channel(0.0).operators
    assert_array_equal(e1, np.eye(2))
    assert_array_equal(e2, np.zeros((2, 2)))


def test_unruh_channel_infinite_acceleration():
    e1, e2 = unruh_channel(math.pi / 4).operators
    assert_allclose(e1, np.diag([S2, 1]), atol=1e-16)
    assert_allclose(e2, [[0, 0], [S2, 0]], atol=1e-16)


def test_unruh_channel_range():
    with pytest.raises(RangeError):
        unruh_channel(1.0)


@given(rs)
def test_unruh_channel_complete(r):
    assert np.max(np.abs(unruh_channel(r).completeness() - np.eye(2))) < 1e-12


def test_incomplete_kraus_rejected():
    with pytest.raises(ValidationError):
        KrausChannel((np.eye(2), np.eye(2)))


def test_identity_channel_leaves_state(rng):
    rho = random_density(rng)
    assert_allclose(apply_channel_to_rob(unruh_channel(0.0), rho).matrix, rho, atol=1e-15)


@given(st.floats(0, 1), rs)
def test_unruh_only_concurrence(alpha, r):
    beta = math.sqrt(1 - alpha * alpha)
    psi = alpha * qmath.ket("00") + beta * qmath.ket("11")
    out = apply_channel_to_rob(unruh_channel(r), dm(psi))
    assert abs(concurrence(out) - 2 * alpha * beta * math.cos(r)) < 1e-12


def test_lethargic_state_is_fixed():
    # Alice in |0>, Rob in |1>
    rho = dm(qmath.ket("01"))
    assert_allclose(apply_channel_to_rob(unruh_channel(math.pi / 4), rho).matrix, rho, atol=1e-16)


def test_channel_preserves_trace_and_positivity(rng):
    for r in np.linspace(0, math.pi / 4, 7):
        out = apply_channel_to_rob(unruh_channel(r), random_density(rng)).matrix
        assert abs(np.trace(out) - 1) < 1e-12
        assert qmath.hermitian_eigenvalues(out)[-1] >= -1e-10


def test_stinespring_consistency(rng):
    # the mode expansion followed by tracing region II is the Kraus channel
    for r in np.linspace(0, math.pi / 4, 6):
        g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        rho2 = g @ g.conj().T
        rho2 /= np.trace(rho2).real
        vac = np.diag([1, 0])
        full = qmath.tensor_product(rho2, vac)
        v = unruh_isometry(r)
        via_modes = qmath.partial_trace_last(v @ full @ v.conj().T)
        assert_allclose(via_modes, apply_channel_to_rob(unruh_channel(r), rho2).matrix, atol=1e-12)


def test_partial_measurement_limits():
    m0, m1 = partial_measurement(0.0)
    assert_array_equal(m0.matrix, np.eye(2))
    assert_array_equal(m1.matrix, np.zeros((2, 2)))
    m0, m1 = partial_measurement(1.0)
    assert_array_equal(m0.matrix, np.diag([0, 1]))
    assert (m0.outcome, m1.outcome) == ("success", "failure")


def test_partial_measurement_value():
    m0, _ = partial_measurement(0.36)
    assert_allclose(m0.matrix, np.diag([0.8, 1]), atol=1e-16)


@given(strengths)
def test_measurement_complete(p):
    m0, m1 = partial_measurement(p)
    total = m0.matrix.conj().T @ m0.matrix + m1.matrix.conj().T @ m1.matrix
    assert np.max(np.abs(total - np.eye(2))) < 1e-12


def test_reversal_values():
    assert_array_equal(reversal_operator(0.0), np.eye(2))
    assert_allclose(reversal_operator(0.75), np.diag([1, 0.5]), atol=1e-16)


def test_reversal_three_steps_exact():
    assert_array_equal(reversal_operator_stepwise(0.6), np.diag([1, math.sqrt(0.4)]))
    for q in np.linspace(0, 0.999, 37):
        assert_array_equal(reversal_operator_stepwise(q), reversal_operator(q))


def test_reversal_rejects_q_one():
    with pytest.raises(ReversalStrengthError):
        reversal_operator(1.0)


@given(st.floats(0, 0.999))
def test_reversal_povm_complete(q):
    s, f = reversal_measurement(q)
    total = s.matrix.conj().T @ s.matrix + f.matrix.conj().T @ f.matrix
    assert np.max(np.abs(total - np.eye(2))) < 1e-12


@given(st.floats(0, 0.999), st.floats(0, 2 * math.pi), st.floats(0, 2 * math.pi))
def test_reversal_undoes_measurement(p, theta, phi):
    psi = np.array([math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)])
    m0, _ = partial_measurement(p)
    out = reversal_operator(p) @ m0.matrix @ psi
    assert abs(abs(np.vdot(psi, out)) / np.linalg.norm(out) - 1) < 1e-12


def test_measure_branch_first_step():
    a, b, p = 0.6, 0.8, 0.3
    m0, m1 = partial_measurement(p)
    out, prob = measure_branch(m0, initial_state(a, b), "R")
    assert_allclose(out.amplitudes, a * math.sqrt(1 - p) * qmath.ket("000") + b * qmath.ket("110"), atol=1e-16)
    assert prob == pytest.approx(a * a * (1 - p) + b * b, abs=1e-15)
    _, prob_fail = measure_branch(m1, initial_state(a, b), "R")
    assert prob_fail == pytest.approx(a * a * p, abs=1e-15)


def test_measure_branch_trivial():
    psi = initial_state(0.6, 0.8)
    out, prob = measure_branch(partial_measurement(0.0)[0], psi, "R")
    assert prob == 1.0
    assert_array_equal(out.amplitudes, psi.amplitudes)


def test_measure_branch_on_alice():
    psi = initial_state(0.6, 0.8)
    out, prob = measure_branch(qmath.X, psi, "A")
    assert_allclose(out.amplitudes, 0.6 * qmath.ket("100") + 0.8 * qmath.ket("010"))
    assert prob == pytest.approx(1)


def test_measure_branch_invalid_target():
    with pytest.raises(DimensionError):
        measure_branch(qmath.X, initial_state(1, 0), "II")


def test_measure_branch_probabilities_sum_to_one():
    psi = unruh_expand(initial_state(0.6, 0.8), 0.4)
    s, f = reversal_measurement(0.3)
    assert measure_branch(s, psi, "I")[1] + measure_branch(f, psi, "I")[1] == pytest.approx(1, abs=1e-14)


def r_via_arccos(a, omega):
    return math.acos((1 + math.exp(-2 * math.pi * omega / a)) ** -0.5)


def test_acceleration_limits():
    assert acceleration_to_r(AccelerationSpec(0.0, 1.0)) == 0.0
    assert acceleration_to_r(AccelerationSpec(math.inf, 1.0)) == math.pi / 4
    assert acceleration_to_r(AccelerationSpec(1e12, 1.0)) == pytest.approx(math.pi / 4, abs=1e-11)
    assert acceleration_to_r(AccelerationSpec(1e-3, 1.0)) < 1e-300


def test_acceleration_reference_point():
    r = acceleration_to_r(AccelerationSpec(2 * math.pi, 1.0))
    assert r == pytest.approx(r_via_arccos(2 * math.pi, 1.0), abs=1e-12)
    assert r == pytest.approx(0.5452076238305836, abs=1e-12)
    assert math.cos(r) == pytest.approx((1 + math.exp(-1)) ** -0.5, abs=1e-14)


def test_acceleration_monotone():
    grid = np.logspace(-1, 3, 60)
    r_of_a = [acceleration_to_r(AccelerationSpec(a, 1.0)) for a in grid]
    r_of_w = [acceleration_to_r(AccelerationSpec(1.0, w)) for w in np.logspace(-2, 0.5, 60)]
    assert np.all(np.diff(r_of_a) > 0)
    assert np.all(np.diff(r_of_w) < 0)
    for a in grid[::7]:
        assert acceleration_to_r(AccelerationSpec(a, 1.0)) == pytest.approx(r_via_arccos(a, 1.0), abs=1e-12)


def test_acceleration_spec_validation():
    with pytest.raises(RangeError):
        AccelerationSpec(-1.0, 1.0)
    with pytest.raises(RangeError):
        AccelerationSpec(1.0, 0.0)
