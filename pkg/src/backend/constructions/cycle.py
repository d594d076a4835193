"""サイクル構成 A_N = N^{−(n−d)}·ρ_N ∂(Q̃⌞[0,N]^n)"""

from fractions import Fraction

from backend.chains import PolyChain, is_zero, shrink
from backend.grassmann import GrassmannMeasure, tv_distance
from backend.logging import construction_logger as logger
from backend.torus import LatticeCell, build_periodic_filling, region_cycle, split_tile

from .common import with_offset_retries
from .result import ConstructionResult


def build_cycle(
    measure: GrassmannMeasure, size: int, offset_prime: int | None = None
) -> ConstructionResult:
    """重心 0 の測度からガウス像が μ に近い d サイクルを作る

    Args:
        measure: Σ s_i W_i = 0 の原子測度
        size: 格子の一辺 N (≥ 1)
        offset_prime: オフセットの素数 (既定は設定の OFFSET_PRIME)

    Returns:
        ConstructionResult: supp ⊆ [0,1]^n のサイクルと TV 誤差、定数 c = 2n·mass(Q̃ ∩ ∂[F])

    Raises:
        NonZeroClassError: 重心が 0 でない場合
        DegenerateOffsetError: 一般の位置のオフセットが見つからない場合

    Examples:
        >>> mu = GrassmannMeasure(2, 1)
        >>> build_cycle(mu, 4).chain.is_empty()
        True
    """
    if size < 1:
        raise ValueError(f"grid size N must be >= 1, got {size}")
    n, d = measure.n, measure.d
    target = measure.to_float()
    if measure.is_empty():
        return ConstructionResult(
            PolyChain.zero(n, d), target, 0.0, 0.0, True, c_constant=0.0,
            parameters={"N": size},
        )

    cell = LatticeCell.unit(n)

    def attempt(prime: int):
        built = build_periodic_filling(measure.atoms, cell, prime, max_retries=0)
        return built, split_tile(built.filling, built.families, cell)

    built, split = with_offset_retries(attempt, "build_cycle", offset_prime)
    region = region_cycle(
        built.filling, built.families, cell, [0] * n, [size - 1] * n, split=split
    )
    chain = shrink(region, size).scaled(Fraction(1, size ** (n - d)))

    c_constant = 2 * n * split.face_mass()
    tv_error = tv_distance(chain.gaussian_image(), target)
    boundary_ok = is_zero(chain.boundary())
    logger.info(
        f"build_cycle: N={size}, prime={built.prime}, cells={len(chain)}, "
        f"tv={tv_error:.6g}, c={c_constant:.6g}, closed={boundary_ok}"
    )
    return ConstructionResult(
        chain,
        target,
        tv_error,
        chain.mass(),
        boundary_ok,
        c_constant=c_constant,
        parameters={"N": size, "prime": built.prime},
    )
