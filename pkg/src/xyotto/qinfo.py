"""Entropies, relative entropies, mutual information and concurrence, all in bits."""

from __future__ import annotations

import math

import numpy as np

from .matcore import (
    SIGMA2,
    CLAMP_TOL,
    clamp_spectrum,
    hermitian_eigensystem,
    kron,
    partial_trace,
    spectral_map,
)

TINY = 1e-300
NORM_TOL = 1e-12
X_TOL = 1e-12

SPIN_FLIP = kron(SIGMA2, SIGMA2)
_OFF_X = ~np.eye(4, dtype=bool) & ~np.fliplr(np.eye(4, dtype=bool))


class InvalidDistribution(ValueError):
    pass


class SupportMismatch(ValueError):
    """Raised when the first argument has weight where the second has none."""

    value = math.inf


class NotXState(ValueError):
    pass


def _prob_vector(p) -> np.ndarray:
    a = np.asarray(p, dtype=float)
    if a.ndim != 1 or a.size == 0:
        raise InvalidDistribution("probability vector must be one-dimensional and non-empty")
    if np.any(a < 0) or abs(a.sum() - 1.0) > NORM_TOL:
        raise InvalidDistribution(f"not a probability distribution: {a}")
    return a


def _xlog2x(p: np.ndarray) -> float:
    p = p[p > TINY]
    return float(np.sum(p * np.log2(p)))


def shannon_entropy(p) -> float:
    return -_xlog2x(_prob_vector(p))


def relative_entropy(p, q) -> float:
    """Classical relative entropy ``sum p log2(p/q)``.

    Terms with ``p_i`` below 1e-300 count as zero. Raises ``SupportMismatch``
    (carrying ``value = inf``) if some ``p_i > 0`` meets ``q_i == 0``.
    """
    p, q = _prob_vector(p), _prob_vector(q)
    if p.shape != q.shape:
        raise InvalidDistribution("distributions have different lengths")
    s = p > TINY
    if np.any(q[s] <= 0):
        raise SupportMismatch("relative entropy is infinite: support of p not contained in support of q")
    d = float(np.sum(p[s] * (np.log2(p[s]) - np.log2(q[s]))))
    return max(d, 0.0)


def _spectrum(rho) -> np.ndarray:
    return clamp_spectrum(hermitian_eigensystem(rho).values)


def von_neumann_entropy(rho) -> float:
    return -_xlog2x(_spectrum(rho))


def _support_log2(lam: np.ndarray) -> np.ndarray:
    return np.where(lam > TINY, np.log2(np.where(lam > TINY, lam, 1.0)), 0.0)


def quantum_relative_entropy(rho, sigma) -> float:
    """``tr rho log2 rho - tr rho log2 sigma``.

    The logarithm of ``sigma`` is restricted to its support; any weight of
    ``rho`` outside that support raises ``SupportMismatch``.
    """
    es = hermitian_eigensystem(sigma)
    lam = clamp_spectrum(es.values)
    # rho's weight on the numerically null part of sigma
    null = es.vectors[:, lam <= 1e-12]
    leak = float(np.real(np.trace(null.conj().T @ np.asarray(rho) @ null))) if null.size else 0.0
    if leak > CLAMP_TOL:
        raise SupportMismatch("support of rho is not contained in support of sigma")
    log_sigma = (es.vectors * _support_log2(lam)) @ es.vectors.conj().T
    cross = float(np.real(np.trace(np.asarray(rho) @ log_sigma)))
    return -von_neumann_entropy(rho) - cross


def mutual_information(rho) -> float:
    return (
        von_neumann_entropy(partial_trace(rho, "A"))
        + von_neumann_entropy(partial_trace(rho, "B"))
        - von_neumann_entropy(rho)
    )


def wootters_lambdas(rho) -> np.ndarray:
    """Descending square roots of the eigenvalues of ``sqrt(rho) rho~ sqrt(rho)``."""
    r = np.asarray(rho, dtype=complex)
    root = spectral_map(r, np.sqrt, nonnegative=True)
    flipped = SPIN_FLIP @ r.conj() @ SPIN_FLIP
    m = root @ flipped @ root
    m = 0.5 * (m + m.conj().T)
    return np.sqrt(_spectrum(m))[::-1]


def signed_concurrence(rho) -> float:
    """``lambda_1 - lambda_2 - lambda_3 - lambda_4`` before clamping at zero."""
    lam = wootters_lambdas(rho)
    return float(lam[0] - lam[1:].sum())


def concurrence(rho) -> float:
    return max(0.0, signed_concurrence(rho))


def concurrence_x_closed_form(rho) -> float:
    """Concurrence of an X-shaped two-qubit state straight from its entries."""
    r = np.asarray(rho, dtype=complex)
    if r.shape != (4, 4) or np.max(np.abs(r[_OFF_X])) > X_TOL:
        raise NotXState("state has entries outside the diagonal and anti-diagonal")
    d = r.diagonal().real
    c = max(
        abs(r[1, 2]) - math.sqrt(max(d[0] * d[3], 0.0)),
        abs(r[0, 3]) - math.sqrt(max(d[1] * d[2], 0.0)),
    )
    return 2.0 * max(0.0, c)
