"""グラスマン測度の距離

- tv_distance: 厳密キーごとの質量差の総和
- chordal_distance: 単位 d ベクトル間のユークリッド距離 |ω_P − ω_Q|
- wasserstein_distance: 弦距離を地上コストとする輸送 LP の最適値
"""

from backend.logging import grassmann_logger as logger
from backend.lp import LPProblem, lp_solve

from .dvector import DVector
from .exceptions import DimensionMismatchError, MassMismatchError
from .measure import FloatMeasure, GrassmannMeasure
from .plane import RationalPlane

MeasureLike = GrassmannMeasure | FloatMeasure


def _as_float_measure(measure: MeasureLike) -> FloatMeasure:
    if isinstance(measure, GrassmannMeasure):
        return measure.to_float()
    return measure


def _unit(item: DVector | RationalPlane) -> DVector:
    if isinstance(item, RationalPlane):
        return item.omega
    return item if not item.exact else item.unit()


def chordal_distance(a: DVector | RationalPlane, b: DVector | RationalPlane) -> float:
    """|ω_a − ω_b| (向きを区別する)

    Examples:
        >>> from backend.grassmann import coordinate_plane
        >>> round(chordal_distance(coordinate_plane(2, 1), coordinate_plane(2, 1, -1)), 6)
        2.0
    """
    return (_unit(a) - _unit(b)).norm()


def tv_distance(mu: MeasureLike, nu: MeasureLike) -> float:
    """全変動距離 Σ_key |m_μ(key) − m_ν(key)|

    Args:
        mu: 測度 (厳密形または浮動小数点形)
        nu: 同じ (n, d) の測度

    Returns:
        float: 全変動距離

    Raises:
        DimensionMismatchError: (n, d) が異なる場合
    """
    left, right = _as_float_measure(mu), _as_float_measure(nu)
    if (left.n, left.d) != (right.n, right.d):
        raise DimensionMismatchError(
            f"tv_distance between Gr({left.d},{left.n}) and Gr({right.d},{right.n})"
        )
    keys = set(left.atoms) | set(right.atoms)
    return sum(abs(left.mass_of(key) - right.mass_of(key)) for key in keys)


def wasserstein_distance(
    mu: MeasureLike, nu: MeasureLike, tolerance: float = 1e-9
) -> float:
    """弦距離を地上コストとする 1-ワッサースタイン距離

    両測度を全質量 1 に正規化し、輸送計画 π_ij ≥ 0 の LP
    (行和 = a_i、列和 = b_j) を lp_solve で解く。

    Args:
        mu: 測度
        nu: 全質量が mu と等しい測度
        tolerance: 全質量比較の相対許容誤差

    Returns:
        float: 最適輸送コスト

    Raises:
        MassMismatchError: 全質量が許容誤差を超えて異なる場合
    """
    left, right = _as_float_measure(mu), _as_float_measure(nu)
    if (left.n, left.d) != (right.n, right.d):
        raise DimensionMismatchError("wasserstein_distance on different Grassmannians")
    total_left, total_right = left.total_mass(), right.total_mass()
    scale = max(total_left, total_right, 1.0)
    if abs(total_left - total_right) > tolerance * scale:
        raise MassMismatchError(
            f"total masses differ: {total_left!r} vs {total_right!r}"
        )
    if total_left == 0.0:
        return 0.0

    sources = [(omega, mass / total_left) for omega, mass in left.atoms.values()]
    targets = [(omega, mass / total_right) for omega, mass in right.atoms.values()]
    rows, cols = len(sources), len(targets)

    cost = [
        (omega_a - omega_b).norm() for omega_a, _ in sources for omega_b, _ in targets
    ]
    matrix: list[list[float]] = []
    rhs: list[float] = []
    for i, (_, mass) in enumerate(sources):
        matrix.append([1.0 if k // cols == i else 0.0 for k in range(rows * cols)])
        rhs.append(mass)
    # 最後の列制約は他の制約から従うので落とす
    for j, (_, mass) in enumerate(targets[:-1]):
        matrix.append([1.0 if k % cols == j else 0.0 for k in range(rows * cols)])
        rhs.append(mass)

    solution = lp_solve(LPProblem(cost=cost, matrix=matrix, rhs=rhs))
    if solution.status != "optimal":
        raise MassMismatchError(f"transport LP ended with status {solution.status}")
    logger.debug(
        f"wasserstein: {rows}x{cols} plan, value={float(solution.value):.6g}"
    )
    return max(float(solution.value), 0.0)
