"""浮動小数点の測度を厳密形の原子測度で近似する

各原子を分母 q の有理平面に寄せ、重心のずれを補正原子で打ち消す。

- 一般の場合: 座標平面 ±e_I の原子で補正する
- 正の場合: 錐 {W(X) : X ∈ {−1,0,1}^{(n−d)×d}} の非負結合で補正する
  (元の原子を (1−η) 倍して重心を錐の内部に寄せ、η を段階的に増やす)

最後に全質量が入力と一致するよう有理数倍し、ワッサースタイン距離が eps 未満なら採用する。
"""

from fractions import Fraction
from itertools import combinations, product
from typing import Callable

import numpy as np

from backend.grassmann import (
    DVector,
    FloatMeasure,
    GrassmannMeasure,
    RationalPlane,
    float_wedge,
    minors_map,
    multi_indices,
    plane_from_columns,
    plane_from_dvector,
    wasserstein_distance,
    wedge_of_columns,
)
from backend.logging import energy_logger as logger
from backend.lp import LPProblem, lp_solve

from .exceptions import ConeInfeasible

Sampler = Callable[[int], FloatMeasure]

DENOMINATORS = tuple(2**k for k in range(2, 13))
CONE_STEPS = (Fraction(0),) + tuple(Fraction(1, 2**k) for k in range(10, 0, -1))
_EXACT_LIMIT = 10**9


def float_basis(omega: np.ndarray, n: int, d: int) -> np.ndarray:
    """単位 d ベクトル ω が表す平面の正の向きの基底 (n×d、列が基底)"""
    if d == 1:
        return omega.reshape(n, 1)
    if d == n:
        return np.eye(n)
    lookup = {index: k for k, index in enumerate(multi_indices(n, d))}
    rows = []
    for target in combinations(range(n), d + 1):
        row = np.zeros(n)
        for position, k in enumerate(target):
            rest = target[:position] + target[position + 1 :]
            row[k] += (-1) ** position * omega[lookup[rest]]
        rows.append(row)
    _, _, vt = np.linalg.svd(np.asarray(rows))
    basis = vt[-d:].T
    if float(np.dot(float_wedge(basis.T.tolist()).coords, omega)) < 0:
        basis[:, -1] *= -1
    return basis


def snap_plane(omega: np.ndarray, n: int, d: int, q: int) -> RationalPlane | None:
    """基底の各列を分母 q の有理数に丸めた平面 (退化・向きの反転なら None)"""
    basis = float_basis(omega, n, d)
    columns = []
    for j in range(d):
        column = basis[:, j] / np.max(np.abs(basis[:, j]))
        columns.append(tuple(Fraction(round(float(x) * q), q) for x in column))
    wedge = wedge_of_columns(columns)
    if wedge.is_zero() or float(np.dot(wedge.unit().coords, omega)) <= 0:
        return None
    return plane_from_columns(columns)


def _snapped_atoms(source: FloatMeasure, q: int) -> list[tuple[RationalPlane, Fraction]] | None:
    atoms = []
    for omega, mass in source.atoms.values():
        coords = np.asarray(omega.coords, dtype=float)
        plane = snap_plane(coords, source.n, source.d, q)
        if plane is None:
            return None
        scale = Fraction(mass / plane.W.norm()).limit_denominator(_EXACT_LIMIT)
        if scale > 0:
            atoms.append((plane, scale))
    return atoms


def _exact_barycenter(atoms: list[tuple[RationalPlane, Fraction]], n: int, d: int) -> DVector:
    total = DVector.zero(n, d)
    for plane, scale in atoms:
        total = total + plane.W.scaled(scale)
    return total


def _generic_correction(residual: DVector) -> list[tuple[RationalPlane, Fraction]]:
    """±e_I の座標平面で残差を埋める"""
    atoms = []
    for index, value in residual.as_dict().items():
        sign = 1 if value > 0 else -1
        plane = plane_from_dvector(DVector.coordinate(index, residual.n, sign))
        atoms.append((plane, abs(Fraction(value))))
    return atoms


def cone_planes(n: int, d: int) -> list[RationalPlane]:
    """W(X), X ∈ {−1,0,1}^{(n−d)×d} の平面 (P0 に関して正の向き)"""
    planes = []
    for entries in product((-1, 0, 1), repeat=(n - d) * d):
        x = [entries[i * d : (i + 1) * d] for i in range(n - d)]
        planes.append(plane_from_dvector(minors_map(x, d)))
    return planes


def _cone_correction(
    atoms: list[tuple[RationalPlane, Fraction]], target: DVector, cone: list[RationalPlane]
) -> list[tuple[RationalPlane, Fraction]] | None:
    """(1−η)·原子 + 錐の非負結合 で重心を target に合わせる (見つからなければ None)"""
    current = _exact_barycenter(atoms, target.n, target.d)
    matrix = [[plane.W.coords[r] for plane in cone] for r in range(len(target.coords))]
    for eta in CONE_STEPS:
        residual = target - current.scaled(1 - eta)
        problem = LPProblem(
            cost=[Fraction(1)] * len(cone), matrix=matrix, rhs=list(residual.coords), exact=True
        )
        solution = lp_solve(problem)
        if solution.status != "optimal" or solution.x is None:
            continue
        logger.debug(f"cone correction feasible at eta={eta}")
        shrunk = [(plane, scale * (1 - eta)) for plane, scale in atoms]
        extra = [(plane, Fraction(y)) for plane, y in zip(cone, solution.x) if y > 0]
        return shrunk + extra
    return None


def _target(source: FloatMeasure, q: int, reference: RationalPlane | None) -> DVector:
    barycenter = np.asarray(source.barycenter().coords, dtype=float)
    n, d = source.n, source.d
    if reference is not None:
        head = float(np.dot(barycenter, np.asarray(reference.omega.coords, dtype=float)))
        scale = Fraction(head / reference.W.norm()).limit_denominator(_EXACT_LIMIT)
        return reference.W.scaled(scale)
    coords = [
        Fraction(0) if abs(b) < 1e-12 else Fraction(float(b)).limit_denominator(q * q)
        for b in barycenter
    ]
    return DVector.from_coords(coords, n, d)


def _check_positive_input(source: FloatMeasure, reference: RationalPlane) -> None:
    axis = np.asarray(reference.omega.coords, dtype=float)
    for key, (omega, _) in source.atoms.items():
        if float(np.dot(omega.coords, axis)) <= 0:
            raise ValueError(f"atom {key} is not positively oriented with respect to P0")
    barycenter = np.asarray(source.barycenter().coords, dtype=float)
    along = float(np.dot(barycenter, axis))
    if along <= 0 or np.linalg.norm(barycenter - along * axis) > 1e-9 * max(along, 1.0):
        raise ValueError("barycenter is not a positive multiple of the P0 d-vector")


def rational_approx(
    source: FloatMeasure | GrassmannMeasure | Sampler,
    eps: float,
    positive_cone: RationalPlane | None = None,
    samples: int = 256,
) -> GrassmannMeasure:
    """厳密形の原子測度による近似

    Args:
        source: 浮動小数点の原子測度 (厳密形ならそのまま返す)、または標本数を受け取るサンプラー
        eps: ワッサースタイン距離の上限
        positive_cone: 正の場合の基準平面 P0 (None なら一般の場合)
        samples: サンプラーに渡す標本数

    Returns:
        GrassmannMeasure: 全質量が入力と一致し、重心が目標方向の有理数倍の測度

    Raises:
        ConeInfeasible: どの分母でも eps 以内の近似が見つからない場合
        ValueError: 正の場合の前提 (正の向き、重心が P0 方向) が満たされない場合
    """
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if isinstance(source, GrassmannMeasure):
        return source
    if callable(source) and not isinstance(source, FloatMeasure):
        source = source(samples)
    if positive_cone is not None:
        _check_positive_input(source, positive_cone)
    n, d = source.n, source.d
    input_mass = source.total_mass()
    cone = cone_planes(n, d) if positive_cone is not None else []

    last_distance = float("inf")
    for q in DENOMINATORS:
        atoms = _snapped_atoms(source, q)
        if atoms is None:
            continue
        target = _target(source, q, positive_cone)
        if positive_cone is not None:
            corrected = _cone_correction(atoms, target, cone)
            if corrected is None:
                continue
        else:
            residual = target - _exact_barycenter(atoms, n, d)
            corrected = atoms + _generic_correction(residual)
        candidate = GrassmannMeasure(n, d, tuple(corrected))
        if candidate.is_empty():
            continue
        factor = Fraction(input_mass / candidate.total_mass()).limit_denominator(_EXACT_LIMIT)
        candidate = candidate.scaled(factor)
        last_distance = wasserstein_distance(candidate, source)
        logger.debug(f"rational_approx: q={q}, atoms={len(candidate)}, W1={last_distance:.3g}")
        if last_distance < eps:
            logger.info(
                f"rational_approx: q={q}, {len(candidate)} atoms, wasserstein={last_distance:.3g}"
            )
            return candidate
    raise ConeInfeasible(
        f"no rational approximation within {eps} up to denominator {DENOMINATORS[-1]} "
        f"(last distance {last_distance:.3g})"
    )
