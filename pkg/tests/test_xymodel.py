import math

import numpy as np
import pytest

from xyotto.matcore import SIGMA1, hermitian_eigensystem, kron
from xyotto.xymodel import InvalidParams, ModelParams, analytic_spectrum, build_hamiltonian


def test_ising_limit():
    h = build_hamiltonian(ModelParams(gamma=1.0, J=1.0, eta=0.0))
    assert np.array_equal(h, kron(SIGMA1, SIGMA1))


def test_fig1_entries():
    h = build_hamiltonian(ModelParams(gamma=0.4, J=8.0, eta=0.3))
    assert h[0, 0] == pytest.approx(2.4)
    assert h[0, 3] == pytest.approx(3.2)
    assert h[1, 2] == pytest.approx(8.0)
    assert h[1, 1] == h[2, 2] == 0
    assert h[3, 3] == pytest.approx(-2.4)
    assert np.all(h.imag == 0)


@pytest.mark.parametrize("g,e,j", [(0.4, 0.3, 8.0), (-0.7, 0.1, 2.5), (1.0, 1.0, 0.01), (0.0, 0.5, 3.0)])
def test_hermitian_exact(g, e, j):
    h = build_hamiltonian(ModelParams(g, j, e))
    assert np.max(np.abs(h - h.conj().T)) == 0


def test_fig1_spectrum():
    spec = analytic_spectrum(ModelParams(gamma=0.4, J=8.0, eta=0.3))
    assert np.allclose(spec.energies, [4, 8, -8, -4], atol=1e-14)
    n = math.hypot(6.4, 3.2)
    assert np.allclose(spec.states[0], [6.4 / n, 0, 0, 3.2 / n], atol=1e-15)
    r = 1 / math.sqrt(2)
    assert np.allclose(spec.states[1], [0, r, r, 0])
    assert np.allclose(spec.states[2], [0, r, -r, 0])


def test_degenerate_gamma_zero():
    spec = analytic_spectrum(ModelParams(gamma=0.0, J=1.0, eta=0.3))
    assert np.array_equal(spec.states[0], [1, 0, 0, 0])
    assert np.array_equal(spec.states[3], [0, 0, 0, 1])
    assert spec.energies[0] == pytest.approx(0.3)
    assert spec.energies[3] == pytest.approx(-0.3)


def test_fixed_order_not_sorted():
    # gamma^2 + eta^2 < 1 puts E2 = J above E1 = calB
    spec = analytic_spectrum(ModelParams(gamma=0.4, J=8.0, eta=0.3))
    assert spec.energies[1] > spec.energies[0]


def _grid():
    for g in np.linspace(-1, 1, 9):
        for e in np.linspace(0, 1, 8):
            for j in np.linspace(0.01, 10, 8):
                yield ModelParams(float(g), float(j), float(e))


def test_oracle_grid():
    count = 0
    for p in _grid():
        h = build_hamiltonian(p)
        spec = analytic_spectrum(p)
        oracle = hermitian_eigensystem(h)
        assert np.max(np.abs(np.sort(spec.energies) - oracle.values)) <= 1e-10
        for e, v in zip(spec.energies, spec.states):
            assert np.max(np.abs(h @ v - e * v)) <= 1e-10
        assert np.max(np.abs(spec.states.conj() @ spec.states.T - np.eye(4))) <= 1e-12
        assert spec.energies[0] == -spec.energies[3] and spec.energies[1] == -spec.energies[2]
        assert math.fsum(spec.energies) == 0
        count += 1
    assert count >= 500


def test_states_independent_of_J(rng):
    for _ in range(100):
        g, e = rng.uniform(-1, 1), rng.uniform(0, 1)
        j, kappa = rng.uniform(0.01, 10), rng.uniform(0.1, 20)
        a = analytic_spectrum(ModelParams(g, j, e)).states
        b = analytic_spectrum(ModelParams(g, kappa * j, e)).states
        assert np.max(np.abs(a - b)) <= 1e-12


@pytest.mark.parametrize(
    "kw", [dict(gamma=1.2, J=1, eta=0), dict(gamma=0, J=0, eta=0), dict(gamma=0, J=-1, eta=0), dict(gamma=0, J=1, eta=-0.1)]
)
def test_invalid(kw):
    with pytest.raises(InvalidParams):
        ModelParams(**kw)


def test_derived():
    p = ModelParams(0.4, 8.0, 0.3)
    assert p.B_m == pytest.approx(2.4)
    assert p.calB == pytest.approx(4.0)
