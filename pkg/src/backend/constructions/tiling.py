"""タイリング作用素 τ_i(B) = Σ_{k∈⟨2^i⟩^d} τ_{2^{−i}k} ρ_{2^i} B"""

from fractions import Fraction
from itertools import product

from backend.chains import PolyChain, currents_equal, reduce, scale, translate
from backend.logging import construction_logger as logger

from .common import unit_disc
from .exceptions import BoundaryMismatchError


def tile_shrink(chain: PolyChain, steps: int) -> PolyChain:
    """∂B = ∂[D] の B を 2^{−i} 倍に縮めて [0,1]^d に 2^{id} 枚敷き詰める

    Args:
        chain: ∂B = ∂[D] の d チェイン
        steps: i (≥ 0)

    Returns:
        PolyChain: ∂τ_i(B) = ∂[D] のチェイン (i = 0 なら B そのもの)

    Raises:
        BoundaryMismatchError: ∂B ≠ ∂[D] の場合

    Examples:
        >>> from backend.chains import cube_chain
        >>> len(tile_shrink(cube_chain((0, 0), (1, 0)), 2))
        1
    """
    if steps < 0:
        raise ValueError(f"tiling step must be >= 0, got {steps}")
    n, d = chain.n, chain.d
    disc = unit_disc(n, d)
    if not currents_equal(chain.boundary(), disc.boundary()):
        raise BoundaryMismatchError("boundary of the chain is not the boundary of the unit cube")
    if steps == 0:
        return chain

    count = 2**steps
    small = scale(chain, Fraction(1, count))
    pieces = PolyChain.zero(n, d)
    for index in product(range(count), repeat=d):
        shift = [Fraction(k, count) for k in index] + [0] * (n - d)
        pieces = pieces + translate(small, shift)
    result = reduce(pieces)
    logger.info(f"tile_shrink: i={steps}, {count**d} copies, {len(chain)} -> {len(result)} cells")
    return result
