"""Small dense Hermitian linear algebra for one- and two-qubit operators.

Everything here works on 2x2 or 4x4 complex numpy arrays. The eigensolver
is a cyclic complex Jacobi iteration written out by hand so that it can act
as an independent check on the closed-form XY spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

HERMITIAN_TOL = 1e-10
CLAMP_TOL = 1e-10
OFFDIAG_TOL = 1e-14
MAX_SWEEPS = 100

SIGMA0 = np.eye(2, dtype=complex)
SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA0, SIGMA1, SIGMA2, SIGMA3)


class LinAlgError(Exception):
    pass


class NotHermitian(LinAlgError):
    pass


class NoConvergence(LinAlgError):
    pass


class InvalidDimension(LinAlgError):
    pass


class DomainError(LinAlgError):
    pass


class InvalidState(LinAlgError):
    pass


@dataclass(frozen=True)
class EigenSystem:
    """Ascending eigenvalues and matching orthonormal columns of ``vectors``."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T


def as_matrix(m, dims=(2, 4)) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] not in dims:
        raise InvalidDimension(f"expected a square matrix of size {dims}, got shape {a.shape}")
    return a


def kron(a, b) -> np.ndarray:
    """Tensor product with the left factor acting on subsystem A."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def hermiticity_defect(m) -> float:
    a = np.asarray(m, dtype=complex)
    return float(np.max(np.abs(a - a.conj().T)))


def _phase_fix(vectors: np.ndarray) -> np.ndarray:
    # first component that is not round-off noise becomes real positive
    out = vectors.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        idx = int(np.argmax(np.abs(col) > 1e-12 * np.max(np.abs(col))))
        z = col[idx]
        out[:, k] = col * (abs(z) / z)
    return out


def hermitian_eigensystem(m, tol: float = OFFDIAG_TOL, max_sweeps: int = MAX_SWEEPS) -> EigenSystem:
    """Diagonalize a Hermitian matrix with cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot element and then
    applies a real plane rotation that annihilates it. Sweeps stop once the
    off-diagonal Frobenius norm drops below ``tol`` times the Frobenius norm
    of the input (the norm is floored at 1 so tiny matrices use an absolute
    target).

    Raises
    ------
    NotHermitian
        If ``m`` deviates from its adjoint by more than 1e-10.
    NoConvergence
        If ``max_sweeps`` sweeps do not reach the target.
    """
    a = as_matrix(m)
    if hermiticity_defect(a) > HERMITIAN_TOL:
        raise NotHermitian(f"matrix is not Hermitian (defect {hermiticity_defect(a):.3g})")
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    target = tol * max(1.0, float(np.linalg.norm(a)))

    def off(x):
        return float(np.linalg.norm(x - np.diag(np.diag(x))))

    for _ in range(max_sweeps + 1):
        if off(a) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                phase = apq / r
                app, aqq = a[p, p].real, a[q, q].real
                theta = 0.5 * np.arctan2(2.0 * r, aqq - app)
                c, s = np.cos(theta), np.sin(theta)
                # columns p, q of the unitary: diag(1, conj(phase)) @ [[c, s], [-s, c]]
                u = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                cols = [p, q]
                a[:, cols] = a[:, cols] @ u
                a[cols, :] = u.conj().T @ a[cols, :]
                a[p, q] = a[q, p] = 0.0
                v[:, cols] = v[:, cols] @ u
    else:
        raise NoConvergence(f"Jacobi iteration did not converge in {max_sweeps} sweeps")

    values = np.diag(a).real.copy()
    order = np.argsort(values, kind="stable")
    return EigenSystem(values=values[order], vectors=_phase_fix(v[:, order]))


def partial_trace(rho, keep: str) -> np.ndarray:
    """Reduce a two-qubit operator to subsystem ``keep`` ('A' or 'B')."""
    r = np.asarray(rho, dtype=complex)
    if r.shape != (4, 4):
        raise InvalidDimension(f"partial trace needs a 4x4 operator, got shape {r.shape}")
    t = r.reshape(2, 2, 2, 2)  # indices a, b, a', b'
    if keep == "A":
        return np.einsum("ibjb->ij", t)
    if keep == "B":
        return np.einsum("aiaj->ij", t)
    raise ValueError(f"keep must be 'A' or 'B', not {keep!r}")


def clamp_spectrum(values: np.ndarray, tol: float = CLAMP_TOL) -> np.ndarray:
    """Zero out round-off negatives; anything below ``-tol`` is a real error."""
    if np.any(values < -tol):
        raise DomainError(f"eigenvalue {values.min():.3g} is negative beyond tolerance {tol}")
    return np.where(values < 0, 0.0, values)


def spectral_map(m, f: Callable[[np.ndarray], np.ndarray], nonnegative: bool = False) -> np.ndarray:
    """Return ``sum_i f(lambda_i) |v_i><v_i|`` for Hermitian ``m``.

    With ``nonnegative=True`` small negative eigenvalues are clamped to zero
    before ``f`` is applied. ``DomainError`` is raised if ``f`` yields a
    non-finite value on any eigenvalue.
    """
    es = hermitian_eigensystem(m)
    lam = clamp_spectrum(es.values) if nonnegative else es.values
    with np.errstate(all="ignore"):
        fl = np.asarray(f(lam), dtype=float)
    if not np.all(np.isfinite(fl)):
        raise DomainError(f"function undefined on spectrum {lam}")
    out = (es.vectors * fl) @ es.vectors.conj().T
    return 0.5 * (out + out.conj().T)


def check_density_matrix(rho, tol: float = 1e-12) -> np.ndarray:
    """Validate and return ``rho`` as a complex array.

    Hermiticity and unit trace are checked to ``tol``; positivity is checked
    against the eigenvalue clamp tolerance.
    """
    r = as_matrix(rho)
    if hermiticity_defect(r) > tol:
        raise InvalidState(f"density matrix is not Hermitian (defect {hermiticity_defect(r):.3g})")
    tr = np.trace(r)
    if abs(tr - 1.0) > tol:
        raise InvalidState(f"density matrix trace is {tr.real:.15g}, expected 1")
    values = hermitian_eigensystem(r).values
    if values.min() < -CLAMP_TOL:
        raise InvalidState(f"density matrix has negative eigenvalue {values.min():.3g}")
    return r
