"""異方的エネルギー、充填エネルギーの LP、有理近似、反例生成"""

from .approx import cone_planes, rational_approx, snap_plane
from .counterexample import CounterexampleResult, counterexample_multigraph, witness_gap
from .exceptions import ConeInfeasible, EnergyError, GapTooSmall, IntegrandError, NonGraphCellError
from .filling_lp import (
    FillingLPResult,
    angle_candidates,
    filling_energy_lp,
    solve_filling_lp,
    strict_gap_witness,
)
from .functionals import energy_chain, energy_multigraph, energy_report
from .integrands import Integrand, MatrixIntegrand, graph_matrix

__all__ = [
    "EnergyError",
    "IntegrandError",
    "NonGraphCellError",
    "ConeInfeasible",
    "GapTooSmall",
    "Integrand",
    "MatrixIntegrand",
    "graph_matrix",
    "energy_chain",
    "energy_multigraph",
    "energy_report",
    "FillingLPResult",
    "angle_candidates",
    "filling_energy_lp",
    "solve_filling_lp",
    "strict_gap_witness",
    "rational_approx",
    "cone_planes",
    "snap_plane",
    "CounterexampleResult",
    "counterexample_multigraph",
    "witness_gap",
]
