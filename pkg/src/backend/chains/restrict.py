"""チェインの凸多面体への制限 T⌞U と境界項 T ∩ ∂[U]"""

from fractions import Fraction
from typing import Sequence

from backend.logging import chains_logger as logger

from .chain import PolyChain, chain_from_cells
from .polytope import HalfSpace, Polytope, clip_parametrized, simplex_constraints
from .simplex import Cell, Point

Region = Polytope | Sequence[HalfSpace]


def _halfspaces(region: Region) -> tuple[HalfSpace, ...]:
    if isinstance(region, Polytope):
        return region.halfspaces
    return tuple(region)


def clip_cell(
    cell: Cell, halfspaces: Sequence[HalfSpace]
) -> list[tuple[list[Point], int]] | None:
    """1つのセルを半空間の共通部分で切る

    Returns:
        None: セル全体が閉領域の内側 (そのまま残す)
        list: (頂点列, 向きの符号) の列 (外側なら空)
    """
    values = [[h.value(v) for v in cell] for h in halfspaces]
    cutting = []
    for h_values in values:
        if all(s >= 0 for s in h_values) and any(s > 0 for s in h_values):
            return []
        if any(s > 0 for s in h_values):
            cutting.append(h_values)
    if not cutting:
        return None
    if len(cell) == 1:
        return []

    k = len(cell) - 1
    constraints = simplex_constraints(k)
    for h_values in cutting:
        base = h_values[0]
        row = tuple(s - base for s in h_values[1:])
        constraints.append((row, -base))
    origin = cell[0]
    columns = [tuple(x - y for x, y in zip(v, origin)) for v in cell[1:]]
    return clip_parametrized(origin, columns, constraints)


def restrict(chain: PolyChain, region: Region) -> PolyChain:
    """T⌞U: 各単体を閉凸多面体 U で切り、引き寄せ分割で単体に戻す

    Args:
        chain: 入力チェイン
        region: 全次元の凸多面体 (Polytope または半空間の列)

    Returns:
        PolyChain: 制限したチェイン (空もありうる)

    Examples:
        >>> T = PolyChain.from_simplices(2, 1, [([(-1, -1), (1, 1)], 1)])
        >>> restrict(T, Polytope.box((0, 0), (1, 1))).vertices()
        [(Fraction(0, 1), Fraction(0, 1)), (Fraction(1, 1), Fraction(1, 1))]
    """
    halfspaces = _halfspaces(region)
    pieces: list[tuple[Sequence[Point], Fraction]] = []
    kept = cut = 0
    for cell, coeff in chain.items():
        clipped = clip_cell(cell, halfspaces)
        if clipped is None:
            pieces.append((cell, coeff))
            kept += 1
            continue
        cut += 1
        for vertices, sign in clipped:
            pieces.append((vertices, coeff if sign > 0 else -coeff))
    logger.debug(f"restrict: {kept} cells kept, {cut} cells clipped")
    return chain_from_cells(chain.n, chain.d, pieces, check=False)


def intersect_boundary(chain: PolyChain, region: Region) -> PolyChain:
    """T ∩ ∂[U] = ∂(T⌞U) − (∂T)⌞U

    同じ面は同じ単体に分割されるので、U の内部の項は形式的に打ち消し合い、
    ∂U 上のセルだけが残る。
    """
    if chain.d == 0:
        raise ValueError("intersect_boundary needs a chain of grade d >= 1")
    clipped = restrict(chain, region)
    return clipped.boundary() - restrict(chain.boundary(), region)
