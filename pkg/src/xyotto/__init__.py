"""Quantum Otto cycle with a two-qubit XY chain as working substance."""

from .analysis import (
    FIG1,
    CriticalReport,
    CycleTemplate,
    SweepRow,
    critical_report,
    find_j_min,
    find_root,
    maximize_work,
    sweep,
    verify_suite,
)
from .thermo import (
    EnginePoint,
    WorkBreakdown,
    density_matrix,
    gibbs_ensemble,
    heat_cold,
    heat_hot,
    net_work_energy,
    net_work_information,
    subsystem_work,
)
from .xymodel import ModelParams, analytic_spectrum, build_hamiltonian

__version__ = "0.1.0"
