"""Two-qubit XY chain in a longitudinal field locked to the coupling."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .matcore import SIGMA0, SIGMA1, SIGMA2, SIGMA3, kron

S1S1 = kron(SIGMA1, SIGMA1).real
S2S2 = kron(SIGMA2, SIGMA2).real
ZFIELD = (kron(SIGMA3, SIGMA0) + kron(SIGMA0, SIGMA3)).real


class InvalidParams(ValueError):
    pass


@dataclass(frozen=True)
class ModelParams:
    """Anisotropy ``gamma``, coupling ``J`` and field ratio ``eta`` (``B_m = eta * J``)."""

    gamma: float
    J: float
    eta: float

    def __post_init__(self):
        for name in ("gamma", "J", "eta"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParams(f"{name} must be finite")
        if not -1.0 <= self.gamma <= 1.0:
            raise InvalidParams(f"gamma must lie in [-1, 1], got {self.gamma}")
        if not self.J > 0:
            raise InvalidParams(f"J must be > 0, got {self.J}")
        if not self.eta >= 0:
            raise InvalidParams(f"eta must be >= 0, got {self.eta}")

    @property
    def B_m(self) -> float:
        return self.eta * self.J

    @property
    def calB(self) -> float:
        return math.hypot(self.B_m, self.gamma * self.J)


@dataclass(frozen=True)
class XYSpectrum:
    """Eigenpairs in the fixed order (calB, J, -J, -calB).

    ``states[i]`` is the i-th eigenvector as a length-4 array in the
    |00>, |01>, |10>, |11> basis. The order is not sorted by energy.
    """

    energies: np.ndarray
    states: np.ndarray
    params: ModelParams

    def projector(self, i: int) -> np.ndarray:
        v = self.states[i]
        return np.outer(v, v.conj())


def build_hamiltonian(params: ModelParams) -> np.ndarray:
    g, J = params.gamma, params.J
    h = 0.5 * (1 + g) * J * S1S1 + 0.5 * (1 - g) * J * S2S2 + 0.5 * params.B_m * ZFIELD
    return h.astype(complex)


def analytic_spectrum(params: ModelParams) -> XYSpectrum:
    """Closed-form eigensystem of :func:`build_hamiltonian`.

    For ``gamma * J == 0`` the |00>/|11> block is already diagonal and the
    outer states are taken as |00> and |11> themselves.
    """
    B, gJ, calB = params.B_m, params.gamma * params.J, params.calB
    r = 1.0 / math.sqrt(2.0)
    states = np.zeros((4, 4))
    if gJ == 0.0:
        states[0, 0] = 1.0
        states[3, 3] = 1.0
    else:
        n1 = math.hypot(calB + B, gJ)
        n4 = math.hypot(calB - B, gJ)
        states[0, [0, 3]] = (calB + B) / n1, gJ / n1
        states[3, [0, 3]] = (calB - B) / n4, -gJ / n4
    states[1, [1, 2]] = r, r
    states[2, [1, 2]] = r, -r
    energies = np.array([calB, params.J, -params.J, -calB])
    return XYSpectrum(energies=energies, states=states.astype(complex), params=params)
