"""非多凸な行列被積分関数に対する反例 (Q 価関数) の生成

厳密なギャップの証人 μ (∫Ψ dμ < Ψ(P0)) を有理近似し、多価グラフ構成で
∂B = ∂[0,1] の正の向きのチェイン B = Q^{−1}[graph u] を作る。
サイズスケジュール (M:N) を順に試し、証明された余裕
(Q·F_ψ(0) − F_ψ(u))/Q がギャップの半分以上になった時点で返す。
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from backend.constructions import ConstructionResult, QValuedPL, build_multigraph, extract_qvalued
from backend.grassmann import FloatMeasure, GrassmannMeasure, coordinate_plane
from backend.logging import energy_logger as logger
from config.settings import get_settings

from .approx import rational_approx
from .exceptions import GapTooSmall
from .functionals import energy_multigraph
from .integrands import MatrixIntegrand


@dataclass
class CounterexampleResult:
    """反例と証明書

    Attributes:
        function: Q 価関数 u
        multiplicity: Q
        energy: F_ψ(u)
        reference: Q·F_ψ(0)
        margin: (Q·F_ψ(0) − F_ψ(u))/Q
        gap: 証人のギャップ Ψ(P0) − ∫Ψ dμ
        size: 採用した (M, N)
        construction: 多価グラフ構成の結果
        history: 試したサイズごとの記録
    """

    function: QValuedPL
    multiplicity: int
    energy: float
    reference: float
    margin: float
    gap: float
    size: tuple[int, int]
    construction: ConstructionResult
    history: list[dict[str, Any]] = field(default_factory=list)


def witness_gap(integrand: MatrixIntegrand, witness: FloatMeasure | GrassmannMeasure) -> float:
    """Ψ(P0) − ∫Ψ dμ (Ψ は ψ の橋渡し)"""
    bridge = integrand.bridge()
    measure = witness.to_float() if isinstance(witness, GrassmannMeasure) else witness
    return bridge(coordinate_plane(integrand.n, integrand.d)) - measure.integrate(bridge)


def normalized_measure(measure: GrassmannMeasure) -> GrassmannMeasure:
    """重心が W_P0 の正の有理数倍の測度を、重心がちょうど W_P0 になるよう縮める"""
    plane = coordinate_plane(measure.n, measure.d)
    ratio = measure.barycenter().ratio_to(plane.W)
    if ratio is None or ratio <= 0:
        raise ValueError("barycenter is not a positive multiple of W_P0")
    return measure.scaled(1 / Fraction(ratio))


def counterexample_multigraph(
    integrand: MatrixIntegrand,
    witness: FloatMeasure | GrassmannMeasure,
    eps: float | None = None,
    sizes: Sequence[tuple[int, int]] | None = None,
    offset_prime: int | None = None,
) -> CounterexampleResult:
    """F_ψ(u) < Q·F_ψ(0) となる Q 価関数 u を作る

    Args:
        integrand: ψ (d = 1)
        witness: strict_gap_witness が返した証人 μ (原子はすべて正の向き)
        eps: 有理近似のワッサースタイン許容誤差 (既定は設定の WASSERSTEIN_EPS)
        sizes: (M, N) のスケジュール (既定は設定の COUNTEREXAMPLE_SIZES)
        offset_prime: オフセットの素数

    Returns:
        CounterexampleResult: u・エネルギー・余裕・採用サイズ

    Raises:
        ValueError: 証人のギャップが正でない場合
        GapTooSmall: セル予算内、またはスケジュール内で余裕を証明できなかった場合
    """
    settings = get_settings()
    gap = witness_gap(integrand, witness)
    if gap <= 0:
        raise ValueError(f"witness has no strict gap (gap={gap:.3g})")
    plane = coordinate_plane(integrand.n, integrand.d)
    tolerance = settings.WASSERSTEIN_EPS if eps is None else eps
    measure = normalized_measure(rational_approx(witness, tolerance, positive_cone=plane))
    bridge = integrand.bridge()
    schedule = list(sizes) if sizes is not None else settings.size_schedule()
    zero_energy = integrand([[0.0]] * (integrand.n - integrand.d))
    history: list[dict[str, Any]] = []

    for height, size in schedule:
        estimate = (2 * size) * (2 * height) ** (integrand.n - 1)
        if estimate > settings.CELL_BUDGET:
            raise GapTooSmall(
                f"size (M={height}, N={size}) needs about {estimate} tiles, "
                f"over the budget {settings.CELL_BUDGET}"
            )
        result = build_multigraph(measure, size, height, offset_prime)
        if len(result.chain) > settings.CELL_BUDGET:
            raise GapTooSmall(
                f"multigraph with {len(result.chain)} cells exceeds the budget {settings.CELL_BUDGET}"
            )
        multiplicity, function = extract_qvalued(result.chain)
        energy = energy_multigraph(integrand, function)
        reference = multiplicity * zero_energy
        margin = (reference - energy) / multiplicity
        keys = [omega for omega, _ in result.chain.gaussian_image().atoms.values()]
        keys += [omega for omega, _ in result.target.atoms.values()]
        spread = result.tv_error * bridge.oscillation(keys)
        history.append(
            {
                "M": height,
                "N": size,
                "Q": multiplicity,
                "energy": energy,
                "reference": reference,
                "margin": margin,
                "tv_error": result.tv_error,
                "spread": spread,
            }
        )
        logger.info(
            f"counterexample: M={height}, N={size}, Q={multiplicity}, "
            f"F(u)={energy:.9g}, Q*F(0)={reference:.9g}, margin={margin:.6g}, gap={gap:.6g}"
        )
        if margin >= gap / 2:
            return CounterexampleResult(
                function, multiplicity, energy, reference, margin, gap, (height, size),
                result, history,
            )
    raise GapTooSmall(f"margin not certified within the size schedule (gap {gap:.6g})")
