"""充填エネルギーの LP と多凸性ギャップの検出

有限の候補集合 {P_i} の上で
    min Σ x_i Ψ(P_i)  s.t.  Σ x_i ω_{P_i} = ω_{P0},  x ≥ 0
を解く。値 < Ψ(P0) ならその候補集合の上で多凸性が破れている (片側の判定)。
"""

from dataclasses import dataclass
from fractions import Fraction
from math import atan, radians, tan
from typing import Sequence

from backend.grassmann import FloatMeasure, RationalPlane, plane_from_columns
from backend.logging import energy_logger as logger
from backend.lp import LPProblem, LPSolution, lp_solve

from .integrands import Integrand

_VALUE_TOL = 1e-9
WITNESS_THRESHOLD = 1.0 - _VALUE_TOL
# 第2の LP で最適値に許す相対誤差
_OPTIMALITY_SLACK = 1e-13


@dataclass(frozen=True)
class FillingLPResult:
    """filling_energy_lp の詳細

    Attributes:
        value: LP の最適値
        reference: Ψ(P0)
        measure: 最適な μ* (浮動小数点形、質量 x_i)
        solution: LP の解 (基底・残差など)
        candidates: 候補平面
    """

    value: float
    reference: float
    measure: FloatMeasure
    solution: LPSolution
    candidates: tuple[RationalPlane, ...]

    @property
    def gap(self) -> float:
        """Ψ(P0) − 最適値 (正なら多凸性の破れ)"""
        return self.reference - self.value


def _columns(
    integrand: Integrand, reference: RationalPlane, candidates: Sequence[RationalPlane]
) -> tuple[list[float], list[list[float]], list[float]]:
    if not candidates:
        raise ValueError("candidate set is empty")
    for plane in candidates:
        if (plane.n, plane.d) != (reference.n, reference.d):
            raise ValueError(f"candidate {plane!r} is not in Gr({reference.d},{reference.n})")
    cost = [integrand(plane) for plane in candidates]
    omegas = [plane.omega.coords for plane in candidates]
    matrix = [[float(omega[r]) for omega in omegas] for r in range(len(reference.omega.coords))]
    rhs = [float(c) for c in reference.omega.coords]
    return cost, matrix, rhs


def _measure(
    reference: RationalPlane, candidates: Sequence[RationalPlane], x: Sequence[float]
) -> FloatMeasure:
    measure = FloatMeasure(reference.n, reference.d)
    for plane, mass in zip(candidates, x):
        if float(mass) > 1e-12:
            measure.add(plane.key, plane.omega, float(mass))
    return measure


def solve_filling_lp(
    integrand: Integrand, reference: RationalPlane, candidates: Sequence[RationalPlane]
) -> FillingLPResult:
    """候補集合上の充填エネルギー LP を解く

    Args:
        integrand: Ψ
        reference: P0
        candidates: 候補平面 (P0 を含めば必ず実行可能)

    Returns:
        FillingLPResult: 値・μ*・LP の解

    Raises:
        ValueError: 候補が空、または LP が実行不能 (P0 が候補の錐の外) の場合
    """
    planes = tuple(dict.fromkeys(candidates))
    cost, matrix, rhs = _columns(integrand, reference, planes)
    labels = tuple(str(plane.key) for plane in planes)
    solution = lp_solve(LPProblem(cost=cost, matrix=matrix, rhs=rhs, labels=labels))
    if solution.status != "optimal":
        raise ValueError(f"filling LP is {solution.status}; include P0 among the candidates")
    assert solution.x is not None and solution.value is not None
    value = float(solution.value)
    reference_value = integrand(reference)
    logger.info(
        f"filling LP: {len(planes)} candidates, value={value:.9g}, "
        f"Psi(P0)={reference_value:.9g}, residual={solution.residual:.2e}"
    )
    return FillingLPResult(
        value, reference_value, _measure(reference, planes, solution.x), solution, planes
    )


def filling_energy_lp(
    integrand: Integrand, reference: RationalPlane, candidates: Sequence[RationalPlane]
) -> tuple[float, FloatMeasure]:
    """(LP の値, μ*)

    Examples:
        >>> from backend.grassmann import coordinate_plane
        >>> P0 = coordinate_plane(2, 1)
        >>> value, _ = filling_energy_lp(Integrand.area(2, 1), P0, angle_candidates(45))
        >>> round(value, 9)
        1.0
    """
    result = solve_filling_lp(integrand, reference, candidates)
    return result.value, result.measure


def strict_gap_witness(
    integrand: Integrand, reference: RationalPlane, candidates: Sequence[RationalPlane]
) -> FloatMeasure | None:
    """μ ≠ δ_{P0} で ∫Ψ dμ ≤ Ψ(P0) となる μ があれば返す

    値が Ψ(P0) より真に小さければ最適な μ* を返す。等しければ、最適性を保ったまま
    P0 の原子の質量を最小化する第2の LP を解き、それが 1 − 1e-9 未満なら返す。
    """
    result = solve_filling_lp(integrand, reference, candidates)
    if result.value < result.reference - _VALUE_TOL:
        logger.info(f"strict gap witness: value below Psi(P0) by {result.gap:.6g}")
        return result.measure

    planes = result.candidates
    if reference not in planes:
        return result.measure if result.value <= result.reference + _VALUE_TOL else None

    cost, matrix, rhs = _columns(integrand, reference, planes)
    position = planes.index(reference)
    # Σ x_i Ψ_i + slack = value + ゆるみ で最適性を保つ
    matrix = [row + [0.0] for row in matrix] + [cost + [1.0]]
    rhs = rhs + [result.value + _OPTIMALITY_SLACK * max(1.0, abs(result.value))]
    objective = [1.0 if k == position else 0.0 for k in range(len(planes))] + [0.0]
    second = lp_solve(LPProblem(cost=objective, matrix=matrix, rhs=rhs))
    if second.status != "optimal" or second.value is None or second.x is None:
        return None
    logger.debug(f"strict gap witness: minimal P0 mass {float(second.value):.9g}")
    if float(second.value) < WITNESS_THRESHOLD:
        return _measure(reference, planes, second.x[: len(planes)])
    return None


def angle_candidates(step_degrees: float) -> list[RationalPlane]:
    """d=1, n=2 の角度格子 θ ∈ (−90°, 90°) の有理方向 (1, tan θ)

    tan θ は分母 10^4 以下の有理数で近似する。0° は必ず含む。

    Examples:
        >>> [plane.key for plane in angle_candidates(45)]
        [(1, -1), (1, 0), (1, 1)]
    """
    if step_degrees <= 0:
        raise ValueError(f"angle step must be positive, got {step_degrees}")
    planes: dict[tuple[int, ...], RationalPlane] = {}
    count = int(90 / step_degrees)
    for k in range(-count, count + 1):
        angle = k * step_degrees
        if abs(angle) >= 90:
            continue
        slope = Fraction(tan(radians(angle))).limit_denominator(10**4)
        plane = plane_from_columns([(1, slope)])
        planes.setdefault(plane.key, plane)
    return [planes[key] for key in sorted(planes, key=lambda key: atan(key[1] / key[0]))]
