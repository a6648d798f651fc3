"""Gibbs states at the two bath contacts and the work and heat of the Otto cycle.

Units
-----
Temperatures are thermal energies in the same units as ``J``: occupation
probabilities are ``exp(-E/T) / Z``. Entropies are in bits. Work and heat are
reported in bit units, i.e. energy multiplied by ``log2(e)``. With that
choice the net work satisfies

    W = (T1 - T2) (S1 - S2) - T1 H[p2||p1] - T2 H[p1||p2]

with base-2 entropies, and the energy form ``sum (E1 - E2)(p1 - p2)`` agrees
with it after the same ``log2(e)`` scaling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import qinfo
from .matcore import partial_trace, hermitian_eigensystem
from .xymodel import InvalidParams, ModelParams, XYSpectrum, analytic_spectrum

BIT_ENERGY = 1.0 / math.log(2.0)
COMMUTE_TOL = 1e-10


class InvalidTemperature(ValueError):
    pass


class InvalidEnginePoint(InvalidParams):
    pass


@dataclass(frozen=True)
class EnginePoint:
    """One Otto cycle: coupling J1 at the hot bath T1, J2 at the cold bath T2."""

    gamma: float
    eta: float
    J1: float
    T1: float
    J2: float
    T2: float

    def __post_init__(self):
        for name in ("J1", "T1", "J2", "T2"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise InvalidEnginePoint(f"{name} must be finite and > 0, got {v}")
        if not self.T1 > self.T2:
            raise InvalidEnginePoint(f"T1 must exceed T2, got T1={self.T1}, T2={self.T2}")
        # gamma/eta bounds
        self.hot_params()

    def hot_params(self) -> ModelParams:
        return ModelParams(gamma=self.gamma, J=self.J1, eta=self.eta)

    def cold_params(self) -> ModelParams:
        return ModelParams(gamma=self.gamma, J=self.J2, eta=self.eta)

    def with_j2(self, J2: float) -> "EnginePoint":
        return replace(self, J2=J2)

    def scaled(self, kappa: float) -> "EnginePoint":
        """All couplings and temperatures multiplied by ``kappa``."""
        return replace(
            self, J1=kappa * self.J1, T1=kappa * self.T1, J2=kappa * self.J2, T2=kappa * self.T2
        )


@dataclass(frozen=True)
class ThermalEnsemble:
    probabilities: np.ndarray
    log_Z: float
    spectrum: XYSpectrum
    temperature: float

    @property
    def Z(self) -> float:
        return math.exp(self.log_Z)


@dataclass(frozen=True)
class WorkBreakdown:
    """Net work with its entropy/relative-entropy decomposition and the two heats.

    For subsystem work the heats are undefined; ``has_heats`` is False and
    ``Q2``/``Q4`` are zero.
    """

    W: float
    term_entropy: float
    term_T1_relent: float
    term_T2_relent: float
    Q2: float = 0.0
    Q4: float = 0.0
    has_heats: bool = True


def gibbs_ensemble(params: ModelParams, T: float) -> ThermalEnsemble:
    if not (math.isfinite(T) and T > 0):
        raise InvalidTemperature(f"temperature must be finite and > 0, got {T}")
    spec = analytic_spectrum(params)
    x = -(spec.energies - spec.energies.min()) / T
    w = np.exp(x)
    s = w.sum()
    log_Z = -spec.energies.min() / T + math.log(s)
    return ThermalEnsemble(probabilities=w / s, log_Z=log_Z, spectrum=spec, temperature=T)


def density_matrix(ens: ThermalEnsemble) -> np.ndarray:
    v = ens.spectrum.states
    rho = (v.T * ens.probabilities) @ v.conj()
    return 0.5 * (rho + rho.conj().T)


def _stages(point: EnginePoint) -> tuple[ThermalEnsemble, ThermalEnsemble]:
    return gibbs_ensemble(point.hot_params(), point.T1), gibbs_ensemble(point.cold_params(), point.T2)


def heat_cold(point: EnginePoint) -> float:
    """Heat absorbed from the cold bath while re-thermalizing at J2."""
    hot, cold = _stages(point)
    return BIT_ENERGY * float(np.dot(cold.spectrum.energies, cold.probabilities - hot.probabilities))


def heat_hot(point: EnginePoint) -> float:
    """Heat absorbed from the hot bath while re-thermalizing at J1."""
    hot, cold = _stages(point)
    return BIT_ENERGY * float(np.dot(hot.spectrum.energies, hot.probabilities - cold.probabilities))


def net_work_energy(point: EnginePoint) -> float:
    hot, cold = _stages(point)
    dE = hot.spectrum.energies - cold.spectrum.energies
    return BIT_ENERGY * float(np.dot(dE, hot.probabilities - cold.probabilities))


def _decompose(T1: float, T2: float, q1, q2) -> tuple[float, float, float]:
    term_entropy = (T1 - T2) * (qinfo.shannon_entropy(q1) - qinfo.shannon_entropy(q2))
    return term_entropy, T1 * qinfo.relative_entropy(q2, q1), T2 * qinfo.relative_entropy(q1, q2)


def net_work_information(point: EnginePoint) -> WorkBreakdown:
    """Net work assembled from entropies and relative entropies of the occupations."""
    hot, cold = _stages(point)
    te, t1, t2 = _decompose(point.T1, point.T2, hot.probabilities, cold.probabilities)
    return WorkBreakdown(
        W=te - t1 - t2,
        term_entropy=te,
        term_T1_relent=t1,
        term_T2_relent=t2,
        Q2=heat_cold(point),
        Q4=heat_hot(point),
    )


def reduced_spectra(rho1, rho2) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues of two commuting one-qubit states, paired through a shared eigenbasis.

    The shared basis is taken from ``rho1 + sqrt(2) rho2``, which separates
    the common eigenvectors unless both states are degenerate.
    """
    rho1, rho2 = np.asarray(rho1), np.asarray(rho2)
    defect = float(np.max(np.abs(rho1 @ rho2 - rho2 @ rho1)))
    if defect > COMMUTE_TOL:
        raise ValueError(f"reduced states do not commute (defect {defect:.3g})")
    v = hermitian_eigensystem(rho1 + math.sqrt(2.0) * rho2).vectors
    q1 = np.clip(np.real(np.diag(v.conj().T @ rho1 @ v)), 0.0, None)
    q2 = np.clip(np.real(np.diag(v.conj().T @ rho2 @ v)), 0.0, None)
    return q1 / q1.sum(), q2 / q2.sum()


def _effective_energy_work(T1: float, T2: float, q1: np.ndarray, q2: np.ndarray) -> float:
    # sum (q1 - q2)(-T1 log2 q1 + T2 log2 q2): the decomposition with the
    # entropy terms cancelled analytically, so small results keep their digits;
    # the T1-sized common offset is removed since sum(q1 - q2) = 0
    eps = T2 * np.log2(q2) - T1 * np.log2(q1)
    return float(np.dot(q1 - q2, eps - eps[0]))


def subsystem_work(point: EnginePoint, which: str = "A") -> WorkBreakdown:
    """Work attributed to one qubit, built like the total-work decomposition.

    The reduced states at the two stages replace the two-qubit occupations.
    ``W`` is evaluated in the cancellation-free form; the three terms are
    reported as they are and sum to ``W`` up to round-off.
    """
    if which not in ("A", "B"):
        raise ValueError(f"which must be 'A' or 'B', not {which!r}")
    hot, cold = _stages(point)
    r1 = partial_trace(density_matrix(hot), which)
    r2 = partial_trace(density_matrix(cold), which)
    q1, q2 = reduced_spectra(r1, r2)
    te, t1, t2 = _decompose(point.T1, point.T2, q1, q2)
    if np.all(q1 > qinfo.TINY) and np.all(q2 > qinfo.TINY):
        w = _effective_energy_work(point.T1, point.T2, q1, q2)
    else:
        w = te - t1 - t2
    return WorkBreakdown(W=w, term_entropy=te, term_T1_relent=t1, term_T2_relent=t2, has_heats=False)
