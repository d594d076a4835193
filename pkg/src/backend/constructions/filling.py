"""充填構成: ∂A = ∂[D] となる d チェイン

μ̃ = μ + δ_{−P0} を周期的に充填し、E = [0,N]^d × [0,M]^{n−d} で切り出す。
E 内の −P0 の平面 (高さ h) を取り除き、鉛直プリズム
R_h = −P(∂[[0,N]^d], h) で境界を ∂[[0,N]^d] に戻してから ρ_N で縮める。
"""

from fractions import Fraction
from itertools import product
from math import floor

from backend.chains import PolyChain, currents_equal, cube_chain, prism, shrink
from backend.grassmann import GrassmannMeasure, tv_distance
from backend.logging import construction_logger as logger
from backend.torus import LatticeCell, build_periodic_filling, region_cycle, split_tile

from .common import check_matching_class, is_identity, unit_disc, with_offset_retries
from .result import ConstructionResult


def plane_heights(offset_tail: tuple[Fraction, ...], lo: int, hi: int) -> list[tuple[Fraction, ...]]:
    """−P0 族の平面の高さ h = frac(v_tail) + m (lo ≤ m_k ≤ hi)"""
    base = [value - floor(value) for value in offset_tail]
    return [
        tuple(b + m for b, m in zip(base, shift))
        for shift in product(range(lo, hi + 1), repeat=len(base))
    ]


def build_filling(
    measure: GrassmannMeasure,
    size: int,
    height: int,
    offset_prime: int | None = None,
) -> ConstructionResult:
    """重心 W_P0 の測度から、境界が単位 d 立方体の境界に一致するチェインを作る

    Args:
        measure: Σ s_i W_i = W_P0 の原子測度
        size: 底面の一辺 N
        height: 高さ方向の格子数 M (2 ≤ M ≤ N)
        offset_prime: オフセットの素数

    Returns:
        ConstructionResult: ∂A = ∂[D] を満たすチェインと TV 誤差

    Raises:
        NonMatchingClassError: 重心が W_P0 でない場合
        DegenerateOffsetError: 一般の位置のオフセットが見つからない場合
    """
    if height < 2 or size < height:
        raise ValueError(f"need 2 <= M <= N, got M={height}, N={size}")
    n, d = measure.n, measure.d
    plane = check_matching_class(measure)
    target = measure.to_float()
    disc = unit_disc(n, d)
    parameters = {"N": size, "M": height}
    if is_identity(measure):
        logger.info("build_filling: identity measure, returning the unit disc")
        return ConstructionResult(disc, target, 0.0, disc.mass(), True, parameters=parameters)

    atoms = list(measure.atoms) + [(plane.reversed(), Fraction(1))]
    removed = len(atoms) - 1
    cell = LatticeCell.unit(n)

    def attempt(prime: int):
        built = build_periodic_filling(atoms, cell, prime, max_retries=0)
        return built, split_tile(built.filling, built.families, cell)

    built, split = with_offset_retries(attempt, "build_filling", offset_prime)
    upper = [size - 1] * d + [height - 1] * (n - d)
    region = region_cycle(
        built.filling, built.families, cell, [0] * n, upper, exclude=[removed], split=split
    )

    base_boundary = cube_chain([0] * n, [size] * d + [0] * (n - d)).boundary()
    heights = plane_heights(built.families[removed].offset[d:], 0, height - 1)
    total = region
    for h in heights:
        total = total - prism(base_boundary, (0,) * d + h)
    chain = shrink(total, size).scaled(Fraction(1, len(heights)))

    tv_error = tv_distance(chain.gaussian_image(), target)
    boundary_ok = currents_equal(chain.boundary(), disc.boundary())
    logger.info(
        f"build_filling: N={size}, M={height}, prime={built.prime}, planes={len(heights)}, "
        f"cells={len(chain)}, tv={tv_error:.6g}, boundary_ok={boundary_ok}"
    )
    return ConstructionResult(
        chain,
        target,
        tv_error,
        chain.mass(),
        boundary_ok,
        parameters={**parameters, "prime": built.prime, "planes": len(heights)},
    )
