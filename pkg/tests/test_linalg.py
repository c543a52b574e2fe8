import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zeno_repeater import linalg
from zeno_repeater.qstate import SIGMA_X, rotation_gate

from oracles import (
    charpoly_eigenvalues,
    explicit_kron,
    random_density,
    random_hermitian,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)
I2 = np.eye(2)


def test_matmul_identity_and_involution():
    assert np.array_equal(linalg.matmul(I2, SIGMA_X), SIGMA_X)
    assert np.array_equal(linalg.matmul(SIGMA_X, SIGMA_X), I2)


def test_matmul_rotation_inverse():
    theta = np.pi / 180
    out = linalg.matmul(rotation_gate(theta), rotation_gate(-theta))
    assert np.max(np.abs(out - I2)) < 1e-14


def test_matmul_dimension_mismatch():
    with pytest.raises(linalg.LinalgError):
        linalg.matmul(np.eye(2), np.eye(3))


def test_rejects_non_finite():
    with pytest.raises(linalg.LinalgError):
        linalg.matmul(np.array([[np.nan]]), np.eye(1))


def test_kron_identity():
    assert np.array_equal(linalg.kron(I2, I2), np.eye(4))


def test_kron_threshold_projector():
    one = np.diag([0.0, 1.0])
    out = linalg.kron(one, one)
    expected = np.zeros((4, 4))
    expected[3, 3] = 1
    assert np.array_equal(out, expected)


def test_kron_left_factor_is_slow():
    a = np.arange(4).reshape(2, 2) + 1j
    b = np.arange(4, 8).reshape(2, 2)
    assert np.allclose(linalg.kron(a, b), explicit_kron(a, b), atol=0)


@given(seeds)
def test_kron_associative_and_bilinear(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(3))
    lhs = linalg.kron(linalg.kron(a, b), c)
    rhs = linalg.kron(a, linalg.kron(b, c))
    assert np.max(np.abs(lhs - rhs)) < 1e-14
    alpha = complex(rng.normal(), rng.normal())
    assert np.max(np.abs(linalg.kron(alpha * a, b) - alpha * linalg.kron(a, b))) < 1e-14


def test_adjoint():
    theta = 0.3
    assert np.array_equal(linalg.adjoint(np.eye(3)), np.eye(3))
    assert np.allclose(linalg.adjoint(rotation_gate(theta)), rotation_gate(-theta), atol=1e-15)
    m = np.array([[1 + 2j, 3], [4j, 5]])
    assert np.array_equal(linalg.adjoint(linalg.adjoint(m)), m)
    assert linalg.adjoint(m)[0, 1] == -4j


def test_trace():
    assert linalg.trace(np.eye(16)) == 16
    with pytest.raises(linalg.LinalgError):
        linalg.trace(np.ones((2, 3)))


@given(seeds)
def test_trace_of_kron_factorises(seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    b = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    assert abs(linalg.trace(linalg.kron(a, b)) - linalg.trace(a) * linalg.trace(b)) < 1e-12


def test_partial_transpose_product_state(rng):
    ra, rb = random_density(rng, 2), random_density(rng, 2)
    out = linalg.partial_transpose(np.kron(ra, rb), 0, 2)
    assert np.max(np.abs(out - np.kron(ra.T, rb))) < 1e-15
    out = linalg.partial_transpose(np.kron(ra, rb), 1, 2)
    assert np.max(np.abs(out - np.kron(ra, rb.T))) < 1e-15


def test_partial_transpose_bell_spectrum():
    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    pt = linalg.partial_transpose(np.outer(phi, phi), 0, 2)
    assert np.allclose(linalg.hermitian_eigenvalues(pt), [-0.5, 0.5, 0.5, 0.5], atol=1e-14)


def test_partial_transpose_known_pattern():
    rho = np.arange(16).reshape(4, 4)
    expected = np.array([[0, 1, 8, 9], [4, 5, 12, 13], [2, 3, 10, 11], [6, 7, 14, 15]])
    assert np.array_equal(linalg.partial_transpose(rho, 0, 2).real, expected)


@given(seeds, st.integers(0, 3))
def test_partial_transpose_involution_trace_hermiticity(seed, q):
    rng = np.random.default_rng(seed)
    rho = random_density(rng, 16)
    pt = linalg.partial_transpose(rho, q, 4)
    assert np.array_equal(linalg.partial_transpose(pt, q, 4), rho)
    assert abs(np.trace(pt) - 1) < 1e-12
    assert linalg.hermiticity_error(pt) < 1e-14


def test_partial_transpose_errors():
    with pytest.raises(linalg.LinalgError):
        linalg.partial_transpose(np.eye(4), 2, 2)
    with pytest.raises(linalg.LinalgError):
        linalg.partial_transpose(np.eye(8), 0, 2)


def test_partial_trace_product_state(rng):
    ra, rb = random_density(rng, 2), random_density(rng, 4)
    full = np.kron(ra, rb)
    assert np.max(np.abs(linalg.partial_trace(full, {0}, 3) - ra)) < 1e-15
    assert np.max(np.abs(linalg.partial_trace(full, {1, 2}, 3) - rb)) < 1e-15


def test_partial_trace_keeps_relative_order(rng):
    rs = [random_density(rng, 2) for _ in range(4)]
    full = explicit_kron(*rs)
    out = linalg.partial_trace(full, {0, 3}, 4)
    assert np.max(np.abs(out - np.kron(rs[0], rs[3]))) < 1e-14


def test_partial_trace_outer_pair_of_two_bell_pairs():
    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    bell = np.outer(phi, phi)
    out = linalg.partial_trace(np.kron(bell, bell), {0, 3}, 4)
    assert np.max(np.abs(out - np.eye(4) / 4)) < 1e-15


@given(seeds)
def test_partial_trace_preserves_trace(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(rng, 16)
    keep = set(rng.choice(4, size=rng.integers(1, 5), replace=False).tolist())
    assert abs(np.trace(linalg.partial_trace(rho, keep, 4)) - 1) < 1e-12


def test_partial_trace_errors():
    with pytest.raises(linalg.LinalgError):
        linalg.partial_trace(np.eye(4), set(), 2)
    with pytest.raises(linalg.LinalgError):
        linalg.partial_trace(np.eye(4), {2}, 2)
    with pytest.raises(linalg.LinalgError):
        linalg.partial_trace(np.eye(5), {0}, 2)


def test_eigenvalues_simple():
    assert linalg.hermitian_eigenvalues(np.eye(4)) == pytest.approx([1, 1, 1, 1], abs=1e-15)
    assert linalg.hermitian_eigenvalues(SIGMA_X) == pytest.approx([-1, 1], abs=1e-15)
    assert linalg.hermitian_eigenvalues(np.array([[2.5]])) == [2.5]


def test_eigenvalues_rejects_non_hermitian():
    with pytest.raises(linalg.LinalgError):
        linalg.hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))
    with pytest.raises(linalg.LinalgError):
        linalg.hermitian_eigenvalues(np.eye(32))


def test_eigenvalues_reports_non_convergence(monkeypatch):
    monkeypatch.setattr(linalg, "EIG_MAX_SWEEPS", 1)
    h = random_hermitian(np.random.default_rng(3), 6)
    with pytest.raises(linalg.ConvergenceError):
        linalg.hermitian_eigenvalues(h)


def test_eigenvalues_match_charpoly_oracle(rng):
    for _ in range(200):
        h = random_hermitian(rng, 4)
        assert np.max(np.abs(np.array(linalg.hermitian_eigenvalues(h)) - charpoly_eigenvalues(h))) < 1e-9


@settings(max_examples=50)
@given(seeds, st.sampled_from([1, 2, 3, 5, 8, 16]))
def test_eigenvalues_sum_to_trace_and_ascend(seed, n):
    rng = np.random.default_rng(seed)
    h = random_hermitian(rng, n, scale=rng.uniform(0.01, 10))
    eigs = linalg.hermitian_eigenvalues(h)
    assert eigs == sorted(eigs)
    assert abs(sum(eigs) - np.trace(h).real) < 1e-10 * max(1.0, np.linalg.norm(h))


@settings(max_examples=50)
@given(seeds, st.sampled_from([2, 4, 16]), st.integers(1, 16))
def test_density_spectrum_nonnegative(seed, n, rank):
    rng = np.random.default_rng(seed)
    eigs = linalg.hermitian_eigenvalues(random_density(rng, n, min(rank, n)))
    assert min(eigs) >= -1e-10
    assert abs(sum(eigs) - 1) < 1e-10


def test_eigenvalues_degenerate_and_diagonal():
    d = np.diag([3.0, -1.0, 3.0, 0.0])
    assert linalg.hermitian_eigenvalues(d) == [-1.0, 0.0, 3.0, 3.0]
    u = np.linalg.qr(np.arange(16).reshape(4, 4) + np.eye(4))[0]
    assert np.allclose(linalg.hermitian_eigenvalues(u @ d @ u.T), [-1, 0, 3, 3], atol=1e-12)
