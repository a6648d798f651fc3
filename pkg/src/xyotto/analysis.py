"""Sweeps over the cold-stage coupling J2 and location of the critical points."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace
from typing import Callable

import numpy as np
from scipy.optimize import bisect

from . import qinfo
from .matcore import SIGMA0, SIGMA1, SIGMA2, SIGMA3, hermitian_eigensystem, kron, partial_trace
from .thermo import (
    EnginePoint,
    density_matrix,
    gibbs_ensemble,
    heat_cold,
    heat_hot,
    net_work_energy,
    net_work_information,
    subsystem_work,
)
from .xymodel import ModelParams, analytic_spectrum, build_hamiltonian

COARSE_POINTS = 1024
ROOT_XTOL = 1e-10
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class InvalidGrid(ValueError):
    pass


class SearchFailed(RuntimeError):
    pass


class NoBracket(SearchFailed):
    pass


@dataclass(frozen=True)
class CycleTemplate:
    """An engine with everything fixed except the cold-stage coupling."""

    gamma: float = 0.4
    eta: float = 0.3
    J1: float = 8.0
    T1: float = 1000.0
    T2: float = 0.1

    def __post_init__(self):
        # validates the shared fields via a throwaway point
        self.at(self.J1)

    def at(self, J2: float) -> EnginePoint:
        return EnginePoint(gamma=self.gamma, eta=self.eta, J1=self.J1, T1=self.T1, J2=J2, T2=self.T2)

    def scaled(self, kappa: float) -> "CycleTemplate":
        return replace(self, J1=kappa * self.J1, T1=kappa * self.T1, T2=kappa * self.T2)


FIG1 = CycleTemplate()


@dataclass(frozen=True)
class SweepRow:
    J2: float
    W_AB: float
    term_entropy: float
    term_T1_relent: float
    term_T2_relent: float
    Q2: float
    Q4: float
    w_A: float
    w_B: float
    deficit: float
    S1: float
    S2: float
    mutual_info_2: float
    concurrence_2: float
    p2: tuple[float, float, float, float]

    def as_record(self) -> dict[str, float]:
        """Flat mapping in output-column order (``J2`` becomes ``j2``, ``p2`` is split)."""
        d = asdict(self)
        rec = {"j2": d.pop("J2")}
        p2 = d.pop("p2")
        rec.update(d)
        rec.update({f"p2{i + 1}": float(p) for i, p in enumerate(p2)})
        return rec


@dataclass(frozen=True)
class CriticalReport:
    J_min: float
    J_max: float
    W_max: float
    concurrence_at_J_max: float
    j_max: float
    w_max: float
    concurrence_at_j_max: float
    j_crit: float
    C_crit: float
    separability_threshold: float
    I_min: float
    C_min: float


def cold_state(template: CycleTemplate, J2: float) -> np.ndarray:
    params = ModelParams(gamma=template.gamma, J=J2, eta=template.eta)
    return density_matrix(gibbs_ensemble(params, template.T2))


def hot_state(template: CycleTemplate) -> np.ndarray:
    return density_matrix(gibbs_ensemble(ModelParams(template.gamma, template.J1, template.eta), template.T1))


def evaluate(template: CycleTemplate, J2: float) -> SweepRow:
    point = template.at(float(J2))
    info = net_work_information(point)
    W = net_work_energy(point)
    wA = subsystem_work(point, "A").W
    wB = subsystem_work(point, "B").W
    p1 = gibbs_ensemble(point.hot_params(), point.T1).probabilities
    cold = gibbs_ensemble(point.cold_params(), point.T2)
    rho2 = density_matrix(cold)
    return SweepRow(
        J2=float(J2),
        W_AB=W,
        term_entropy=info.term_entropy,
        term_T1_relent=info.term_T1_relent,
        term_T2_relent=info.term_T2_relent,
        Q2=info.Q2,
        Q4=info.Q4,
        w_A=wA,
        w_B=wB,
        deficit=W - wA - wB,
        S1=qinfo.shannon_entropy(p1),
        S2=qinfo.shannon_entropy(cold.probabilities),
        mutual_info_2=qinfo.mutual_information(rho2),
        concurrence_2=qinfo.concurrence(rho2),
        p2=tuple(float(p) for p in cold.probabilities),
    )


def j2_grid(j2_min: float, j2_max: float, steps: int) -> np.ndarray:
    if not (isinstance(steps, (int, np.integer)) and steps >= 2):
        raise InvalidGrid(f"steps must be an integer >= 2, got {steps!r}")
    if not (math.isfinite(j2_min) and math.isfinite(j2_max) and 0 < j2_min < j2_max):
        raise InvalidGrid(f"need 0 < j2_min < j2_max, got ({j2_min}, {j2_max})")
    grid = np.linspace(j2_min, j2_max, steps)
    grid[-1] = j2_max
    return grid


def sweep(
    template: CycleTemplate, j2_min: float, j2_max: float, steps: int, workers: int | None = None
) -> list[SweepRow]:
    """Evaluate every quantity on a uniform J2 grid including both endpoints."""
    grid = j2_grid(j2_min, j2_max, steps)
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda j: evaluate(template, j), grid))
    return [evaluate(template, j) for j in grid]


def find_j_min(template: CycleTemplate) -> float:
    return template.T2 / template.T1 * template.J1


def _objective(template: CycleTemplate, objective: str) -> Callable[[float], float]:
    if objective == "total":
        return lambda j: net_work_energy(template.at(j))
    if objective == "subsystem":
        return lambda j: subsystem_work(template.at(j), "A").W
    raise ValueError(f"objective must be 'total' or 'subsystem', not {objective!r}")


def golden_max(f: Callable[[float], float], lo: float, hi: float, width: float) -> tuple[float, float]:
    """Golden-section search for the maximum of a unimodal ``f`` on ``[lo, hi]``."""
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > width:
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + GOLDEN * (hi - lo)
            f2 = f(x2)
    x = 0.5 * (lo + hi)
    return x, f(x)


def maximize_work(
    template: CycleTemplate, objective: str = "total", coarse_points: int = COARSE_POINTS
) -> tuple[float, float]:
    """Locate the J2 maximizing total (``W_AB``) or single-qubit (``w_A``) work.

    A uniform scan over ``[J_min, J1]`` brackets the best interior point and
    golden-section search refines it to ``1e-9 * max(1, J1)``.
    """
    f = _objective(template, objective)
    xs = np.linspace(find_j_min(template), template.J1, coarse_points)
    ys = np.array([f(x) for x in xs])
    k = int(np.argmax(ys))
    if k in (0, len(xs) - 1) or ys[k] <= max(ys[0], ys[-1]):
        raise SearchFailed(f"no interior maximum of {objective} work on [{xs[0]}, {xs[-1]}]")
    scale = max(1.0, template.J1)
    x, y = golden_max(f, xs[k - 1], xs[k + 1], 1e-9 * scale)
    x, y = _polish(f, x, y, 1e-6 * scale)
    if y < ys[k]:
        return float(xs[k]), float(ys[k])
    return float(x), float(y)


def _polish(f: Callable[[float], float], x: float, y: float, h: float) -> tuple[float, float]:
    """Refine a flat maximum by bisecting the central-difference slope.

    Comparing function values stalls near sqrt(machine eps) on a flat top;
    the slope keeps its sign information well below that. Falls back to
    ``(x, y)`` if the slope does not change sign across ``x +- 10 h``.
    """

    def slope(t):
        return f(t + h) - f(t - h)

    lo, hi = x - 10 * h, x + 10 * h
    if not (slope(lo) > 0 > slope(hi)):
        return x, y
    xr = float(bisect(slope, lo, hi, xtol=1e-12, maxiter=200))
    return xr, f(xr)


def _root_target(template: CycleTemplate, target: str) -> Callable[[float], float]:
    if target == "subsystem-work-zero":
        return lambda j: subsystem_work(template.at(j), "A").W
    if target == "concurrence-zero":
        return lambda j: qinfo.signed_concurrence(cold_state(template, j))
    raise ValueError(f"unknown root target {target!r}")


def find_root(template: CycleTemplate, target: str, bracket: tuple[float, float]) -> float:
    """Bisect for the J2 where the target function changes sign."""
    f = _root_target(template, target)
    lo, hi = bracket
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return float(lo)
    if fhi == 0.0:
        return float(hi)
    if (flo > 0) == (fhi > 0):
        raise NoBracket(f"{target}: no sign change on [{lo}, {hi}] (f={flo:.3g}, {fhi:.3g})")
    return float(bisect(f, lo, hi, xtol=ROOT_XTOL, maxiter=200))


def critical_report(template: CycleTemplate = FIG1) -> CriticalReport:
    j_min = find_j_min(template)
    J_max, W_max = maximize_work(template, "total")
    j_max, w_max = maximize_work(template, "subsystem")
    j_crit = find_root(template, "subsystem-work-zero", (j_max, template.J1))
    sep = find_root(template, "concurrence-zero", (j_min, j_max))
    rho1 = hot_state(template)
    return CriticalReport(
        J_min=j_min,
        J_max=J_max,
        W_max=W_max,
        concurrence_at_J_max=qinfo.concurrence(cold_state(template, J_max)),
        j_max=j_max,
        w_max=w_max,
        concurrence_at_j_max=qinfo.concurrence(cold_state(template, j_max)),
        j_crit=j_crit,
        C_crit=qinfo.concurrence(cold_state(template, j_crit)),
        separability_threshold=sep,
        I_min=qinfo.mutual_information(rho1),
        C_min=qinfo.concurrence(rho1),
    )


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.tolerance)


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


def _random_params(rng: np.random.Generator, n: int) -> list[ModelParams]:
    g = rng.uniform(-1, 1, n)
    e = rng.uniform(0, 1, n)
    j = rng.uniform(0, 10, n)
    return [ModelParams(gamma=float(a), J=float(max(c, 1e-3)), eta=float(b)) for a, b, c in zip(g, e, j)]


def verify_suite(
    spectrum_fn=analytic_spectrum, template: CycleTemplate = FIG1, seed: int = 20240611
) -> list[Check]:
    """Run the oracle cross-checks and invariants; every entry reports its worst deviation.

    ``spectrum_fn`` defaults to the closed-form spectrum and exists so a
    deliberately broken spectrum can be fed in as a negative control.
    """
    rng = np.random.default_rng(seed)
    checks: list[Check] = []

    recon = ortho = 0.0
    for _ in range(1000):
        a = rng.uniform(-1, 1, (4, 4)) + 1j * rng.uniform(-1, 1, (4, 4))
        a = 0.5 * (a + a.conj().T)
        es = hermitian_eigensystem(a)
        recon = max(recon, float(np.max(np.abs(es.reconstruct() - a))))
        ortho = max(ortho, float(np.max(np.abs(es.vectors.conj().T @ es.vectors - np.eye(4)))))
    checks += [Check("jacobi_reconstruction", recon, 1e-10), Check("jacobi_orthonormality", ortho, 1e-12)]

    eig_dev = resid = sortho = 0.0
    for p in _random_params(rng, 500):
        h = build_hamiltonian(p)
        spec = spectrum_fn(p)
        oracle = hermitian_eigensystem(h).values
        eig_dev = max(eig_dev, float(np.max(np.abs(np.sort(spec.energies) - oracle))))
        for e, v in zip(spec.energies, spec.states):
            resid = max(resid, float(np.max(np.abs(h @ v - e * v))))
        sortho = max(sortho, float(np.max(np.abs(spec.states.conj() @ spec.states.T - np.eye(4)))))
    checks += [
        Check("spectrum_vs_oracle_eigenvalues", eig_dev, 1e-10),
        Check("spectrum_eigen_residual", resid, 1e-10),
        Check("spectrum_orthonormality", sortho, 1e-12),
    ]

    jind = 0.0
    for p in _random_params(rng, 100):
        s1 = spectrum_fn(p).states
        s2 = spectrum_fn(ModelParams(p.gamma, 3.7 * p.J, p.eta)).states
        jind = max(jind, float(np.max(np.abs(s1 - s2))))
    checks.append(Check("eigenvectors_independent_of_J", jind, 1e-12))

    x = rng.uniform(-1, 1, (4, 4)) + 1j * rng.uniform(-1, 1, (4, 4))
    rho = x @ x.conj().T
    rho /= np.trace(rho)
    pt = 0.0
    for s in (SIGMA1, SIGMA2, SIGMA3):
        lhs = np.trace(partial_trace(rho, "A") @ s)
        rhs = np.trace(rho @ kron(s, SIGMA0))
        pt = max(pt, abs(lhs - rhs))
    checks.append(Check("partial_trace_defining_property", float(pt), 1e-10))

    j_min = find_j_min(template)
    grid = np.linspace(j_min, template.J1, 201)[1:]
    eq78 = law = wab = vn = 0.0
    for j in grid:
        pt_ = template.at(float(j))
        W = net_work_energy(pt_)
        info = net_work_information(pt_)
        eq78 = max(eq78, abs(W - info.W) / max(1.0, abs(W)))
        law = max(law, _rel(W, info.Q2 + info.Q4))
        wab = max(wab, abs(subsystem_work(pt_, "A").W - subsystem_work(pt_, "B").W))
        ens = gibbs_ensemble(pt_.cold_params(), pt_.T2)
        vn = max(vn, abs(qinfo.von_neumann_entropy(density_matrix(ens)) - qinfo.shannon_entropy(ens.probabilities)))
    checks += [
        Check("eq7_eq8_max_dev", eq78, 1e-9),
        Check("first_law_max_dev", law, 1e-12),
        Check("wA_equals_wB", wab, 1e-12),
        Check("von_neumann_vs_shannon", vn, 1e-10),
    ]

    zero = max(
        abs(net_work_energy(template.at(j_min))),
        abs(net_work_energy(template.at(template.J1))),
        abs(subsystem_work(template.at(j_min)).W),
    )
    checks.append(Check("zero_work_boundaries", zero, 1e-12))

    checks.append(Check("concurrence_generic_vs_xform", concurrence_max_deviation(rng), 1e-10))

    checks.append(Check("relative_entropy_quantum_vs_classical", qre_max_deviation(rng, template), 1e-9))

    kap = 0.0
    for kappa in (0.37, 2.0, 13.0):
        for j in (0.05, 0.575065, 3.0):
            a, b = template.at(j), template.at(j).scaled(kappa)
            for f in (net_work_energy, heat_cold, heat_hot, lambda q: subsystem_work(q).W):
                kap = max(kap, abs(f(b) - kappa * f(a)) / max(abs(kappa * f(a)), 1e-300))
    checks.append(Check("kappa_scaling", kap, 1e-12))
    return checks


def thermal_state_grid(rng: np.random.Generator, n: int = 100) -> list[np.ndarray]:
    """Random Gibbs states whose occupations all stay above ~1e-8.

    ``J/T`` is capped at 6 so the spectrum spread over ``T`` stays below ~17.
    Nearly pure states are excluded on purpose: there the generic concurrence
    loses digits to square roots of round-off-level eigenvalues.
    """
    states = []
    for _ in range(n):
        p = ModelParams(float(rng.uniform(-1, 1)), float(rng.uniform(0.1, 5)), float(rng.uniform(0, 1)))
        T = p.J / float(rng.uniform(0.2, 6))
        states.append(density_matrix(gibbs_ensemble(p, T)))
    return states


def concurrence_max_deviation(rng: np.random.Generator, n: int = 100) -> float:
    return max(
        abs(qinfo.concurrence(r) - qinfo.concurrence_x_closed_form(r)) for r in thermal_state_grid(rng, n)
    )


def qre_max_deviation(rng: np.random.Generator, template: CycleTemplate = FIG1, n: int = 100) -> float:
    """Worst gap between quantum and classical relative entropy over field-locked state pairs.

    Covers random pairs sharing (gamma, eta) whose second state is well
    conditioned, plus the cold-versus-hot pair along the template's J2 range.
    """
    worst = 0.0
    for _ in range(n):
        g, e = float(rng.uniform(-1, 1)), float(rng.uniform(0, 1))
        ens = [
            gibbs_ensemble(ModelParams(g, float(rng.uniform(0.1, 3)), e), float(rng.uniform(0.5, 5)))
            for _ in range(2)
        ]
        r, s = (density_matrix(x) for x in ens)
        d = qinfo.quantum_relative_entropy(r, s) - qinfo.relative_entropy(ens[0].probabilities, ens[1].probabilities)
        worst = max(worst, abs(d))
    hot = gibbs_ensemble(ModelParams(template.gamma, template.J1, template.eta), template.T1)
    rho1 = density_matrix(hot)
    for j in np.linspace(find_j_min(template), template.J1, 25):
        cold = gibbs_ensemble(ModelParams(template.gamma, float(j), template.eta), template.T2)
        d = qinfo.quantum_relative_entropy(density_matrix(cold), rho1) - qinfo.relative_entropy(
            cold.probabilities, hot.probabilities
        )
        worst = max(worst, abs(d))
    return worst
