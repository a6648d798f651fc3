import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xyotto.matcore import (
    SIGMA0,
    SIGMA1,
    SIGMA2,
    SIGMA3,
    DomainError,
    InvalidDimension,
    NoConvergence,
    NotHermitian,
    check_density_matrix,
    hermitian_eigensystem,
    kron,
    partial_trace,
    spectral_map,
)

from conftest import random_density, random_hermitian


def test_diagonal_input():
    es = hermitian_eigensystem(np.diag([3.0, 1.0, 2.0, 0.0]))
    assert np.array_equal(es.values, [0.0, 1.0, 2.0, 3.0])
    assert np.allclose(np.abs(es.vectors), np.eye(4)[:, [3, 1, 2, 0]], atol=0)


def test_pauli_x():
    es = hermitian_eigensystem(SIGMA1)
    assert np.allclose(es.values, [-1, 1], atol=1e-15)
    r = 1 / np.sqrt(2)
    # phase convention: first component real positive
    assert np.allclose(es.vectors[:, 0], [r, -r], atol=1e-15)
    assert np.allclose(es.vectors[:, 1], [r, r], atol=1e-15)


def test_xy_hamiltonian_hand_values():
    h = np.zeros((4, 4))
    h[0, 0], h[3, 3] = 2.4, -2.4
    h[0, 3] = h[3, 0] = 3.2
    h[1, 2] = h[2, 1] = 8.0
    assert np.allclose(hermitian_eigensystem(h).values, [-8, -4, 4, 8], atol=1e-12)


def test_against_numpy_oracle(rng):
    for _ in range(200):
        a = random_hermitian(rng)
        es = hermitian_eigensystem(a)
        assert np.max(np.abs(es.values - np.linalg.eigvalsh(a))) < 1e-12


def test_thousand_random_reconstruct(rng):
    recon = ortho = 0.0
    for _ in range(1000):
        a = random_hermitian(rng)
        es = hermitian_eigensystem(a)
        recon = max(recon, np.max(np.abs(es.reconstruct() - a)))
        ortho = max(ortho, np.max(np.abs(es.vectors.conj().T @ es.vectors - np.eye(4))))
        assert np.all(np.diff(es.values) >= 0)
    assert recon <= 1e-10
    assert ortho <= 1e-12


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=32, max_size=32))
def test_hypothesis_reconstruction(xs):
    x = np.array(xs[:16]).reshape(4, 4) + 1j * np.array(xs[16:]).reshape(4, 4)
    a = 0.5 * (x + x.conj().T)
    es = hermitian_eigensystem(a)
    assert np.max(np.abs(es.reconstruct() - a)) <= 1e-10


def test_deterministic(rng):
    a = random_hermitian(rng)
    e1, e2 = hermitian_eigensystem(a), hermitian_eigensystem(a.copy())
    assert np.array_equal(e1.values, e2.values) and np.array_equal(e1.vectors, e2.vectors)


def test_not_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eigensystem(np.array([[0, 1], [0, 0]]))


def test_no_convergence():
    with pytest.raises(NoConvergence):
        hermitian_eigensystem(SIGMA1, max_sweeps=0)


def test_bad_dimension():
    with pytest.raises(InvalidDimension):
        hermitian_eigensystem(np.eye(3))
    with pytest.raises(InvalidDimension):
        partial_trace(np.eye(2) / 2, "A")


def test_partial_trace_bell():
    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    rho = np.outer(phi, phi)
    assert np.allclose(partial_trace(rho, "A"), np.eye(2) / 2, atol=1e-15)
    assert np.allclose(partial_trace(rho, "B"), np.eye(2) / 2, atol=1e-15)


def test_partial_trace_product(rng):
    ra, rb = random_density(rng, 2), random_density(rng, 2)
    rho = kron(ra, rb)
    assert np.allclose(partial_trace(rho, "A"), ra, atol=1e-15)
    assert np.allclose(partial_trace(rho, "B"), rb, atol=1e-15)


def _loop_partial_trace(rho, keep):
    out = np.zeros((2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                if keep == "A":
                    out[i, j] += rho[2 * i + k, 2 * j + k]
                else:
                    out[i, j] += rho[2 * k + i, 2 * k + j]
    return out


def test_partial_trace_properties(rng):
    for _ in range(50):
        rho = random_density(rng)
        for keep in "AB":
            r = partial_trace(rho, keep)
            assert np.allclose(r, _loop_partial_trace(rho, keep), atol=1e-15)
            assert abs(np.trace(r) - 1) <= 1e-12
            assert np.max(np.abs(r - r.conj().T)) <= 1e-15
        for s in (SIGMA1, SIGMA2, SIGMA3):
            lhs = np.trace(partial_trace(rho, "A") @ s)
            assert abs(lhs - np.trace(rho @ kron(s, SIGMA0))) <= 1e-10
            lhs = np.trace(partial_trace(rho, "B") @ s)
            assert abs(lhs - np.trace(rho @ kron(SIGMA0, s))) <= 1e-10


def test_partial_trace_linear(rng):
    a, b = random_density(rng), random_density(rng)
    mix = 0.3 * a + 0.7 * b
    assert np.allclose(partial_trace(mix, "A"), 0.3 * partial_trace(a, "A") + 0.7 * partial_trace(b, "A"))


def test_spectral_map_identity(rng):
    a = random_hermitian(rng)
    assert np.max(np.abs(spectral_map(a, lambda x: x) - a)) <= 1e-12


def test_spectral_map_sqrt():
    assert np.allclose(spectral_map(np.eye(4) / 4, np.sqrt, nonnegative=True), np.eye(4) / 2, atol=1e-15)


def test_spectral_map_log_on_support():
    def log2_support(x):
        return np.where(x > 0, np.log2(np.where(x > 0, x, 1.0)), 0.0)

    out = spectral_map(np.diag([0.5, 0.5, 0.0, 0.0]), log2_support, nonnegative=True)
    assert np.allclose(np.diag(out).real, [-1, -1, 0, 0])


def test_spectral_map_domain_error():
    with pytest.raises(DomainError):
        spectral_map(np.diag([0.5, 0.5, 0.0, 0.0]), np.log2, nonnegative=True)
    with pytest.raises(DomainError):
        spectral_map(np.diag([1.0, -0.5]), np.sqrt, nonnegative=True)


def test_spectral_map_clamps_roundoff():
    out = spectral_map(np.diag([1.0, -1e-12]), np.sqrt, nonnegative=True)
    assert np.allclose(out, np.diag([1.0, 0.0]))


def test_check_density_matrix():
    check_density_matrix(np.eye(4) / 4)
    with pytest.raises(Exception):
        check_density_matrix(np.eye(4) / 3)
    with pytest.raises(Exception):
        check_density_matrix(np.diag([1.5, -0.5]))
