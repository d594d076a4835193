"""基本タイル S_F = ∂(Q̃⌞F) と領域サイクル

S_F = S̃⌞F + Q̃ ∩ ∂[F] のうち、第2項をファセットごとの面パーツ W_φ に分ける。
格子セルの箱 E = ∪_{j∈J} F_j では、内部のファセットの面パーツは隣のタイルと打ち消すので
∂(Q̃⌞E) = S̃⌞E + Σ_{j∈J} Σ_{隣が J の外のファセット φ} τ_{Kj} W_φ。
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from backend.chains import (
    PolyChain,
    TransversalityError,
    intersect_boundary,
    chain_from_cells,
    reduce,
    restrict,
)
from backend.chains.simplex import Cell, Point
from backend.logging import torus_logger as logger

from .family import PlaneFamily, subtorus_chain
from .lattice import Facet, LatticeCell
from .periodic import PeriodicChain


@dataclass
class TileSplit:
    """S_F の分解

    Attributes:
        interior: S̃⌞F (族を F で切り出したもの)
        faces: ファセット (k, 0|1) → 面パーツ W_φ
    """

    interior: PolyChain
    faces: dict[Facet, PolyChain] = field(default_factory=dict)

    def face_total(self) -> PolyChain:
        total = PolyChain.zero(self.interior.n, self.interior.d)
        for facet in sorted(self.faces):
            total = total + self.faces[facet]
        return total

    def face_mass(self) -> float:
        return sum(chain.mass() for chain in self.faces.values())

    def total(self) -> PolyChain:
        return self.interior + self.face_total()


def _check_transversal(chains: Iterable[PolyChain], cell: LatticeCell) -> None:
    for chain in chains:
        if chain.d >= chain.n:
            continue
        for simplex, _ in chain.items():
            k = cell.in_lattice_hyperplane(simplex)
            if k is not None:
                raise TransversalityError(
                    f"cell {simplex} lies in a lattice hyperplane of axis {k}"
                )


def _lift(filling: PeriodicChain, cell: LatticeCell) -> PolyChain:
    lo, hi = cell.bounding_box()
    _check_transversal([filling.representatives, filling.boundary().representatives], cell)
    return filling.lift_over(lo, hi)


def tile_fundamental(filling: PeriodicChain, cell: LatticeCell) -> PolyChain:
    """S_F = ∂(Q̃⌞F)

    Args:
        filling: 周期充填 Q
        cell: 格子セル F

    Returns:
        PolyChain: d サイクル

    Raises:
        TransversalityError: Q̃ または ∂Q̃ のセルが F の格子超平面に含まれる場合
    """
    if filling.is_empty():
        return PolyChain.zero(filling.n, filling.grade - 1)
    lifted = _lift(filling, cell)
    return restrict(lifted, cell.region()).boundary()


def _assign_faces(chain: PolyChain, cell: LatticeCell) -> dict[Facet, PolyChain]:
    buckets: dict[Facet, dict[Cell, Fraction]] = {}
    for simplex, coeff in chain.items():
        facets = cell.facet_of(simplex)
        if len(facets) != 1:
            raise TransversalityError(
                f"boundary piece {simplex} lies on {len(facets)} facets of the cell"
            )
        buckets.setdefault(facets[0], {})[simplex] = coeff
    return {
        facet: PolyChain(chain.n, chain.d, cells) for facet, cells in sorted(buckets.items())
    }


def split_tile(
    filling: PeriodicChain, families: Sequence[PlaneFamily], cell: LatticeCell
) -> TileSplit:
    """S_F を内部パーツとファセットごとの面パーツに分ける

    Args:
        filling: 周期充填 Q (∂Q = Σ s_i T_{P_i})
        families: Q が充填する族
        cell: 格子セル F

    Returns:
        TileSplit: 内部パーツと面パーツ

    Raises:
        TransversalityError: 面パーツのセルがちょうど1つのファセットに乗らない場合
    """
    n, d = filling.n, filling.grade - 1
    region = cell.region()
    interior = PolyChain.zero(n, d)
    for family in families:
        interior = interior + subtorus_chain(family.plane, family.offset, region).scaled(
            family.scale
        )
    if filling.is_empty():
        return TileSplit(interior)
    lifted = _lift(filling, cell)
    faces = _assign_faces(intersect_boundary(lifted, region), cell)
    logger.debug(
        f"split_tile: interior {len(interior)} cells, "
        f"faces {sum(len(c) for c in faces.values())} cells on {len(faces)} facets"
    )
    return TileSplit(interior, faces)


def region_cycle(
    filling: PeriodicChain,
    families: Sequence[PlaneFamily],
    cell: LatticeCell,
    lo: Sequence[int],
    hi: Sequence[int],
    exclude: Sequence[int] = (),
    split: TileSplit | None = None,
) -> PolyChain:
    """E = ∪_{lo ≤ j ≤ hi} F_j に対する ∂(Q̃⌞E) (exclude の族は S̃⌞E から除く)

    Args:
        filling: 周期充填 Q
        families: Q が充填する族
        cell: 格子セル F
        lo: 添字箱の下端 (含む)
        hi: 添字箱の上端 (含む)
        exclude: S̃⌞E に加えない族の添字
        split: 計算済みの split_tile の結果

    Returns:
        PolyChain: 正規化した d チェイン
    """
    tile = split or split_tile(filling, families, cell)
    n = cell.n
    upper = [h + 1 for h in hi]
    region = cell.region(lo, upper)
    interior = PolyChain.zero(n, filling.grade - 1)
    for index, family in enumerate(families):
        if index in exclude:
            continue
        interior = interior + subtorus_chain(family.plane, family.offset, region).scaled(
            family.scale
        )

    pieces: list[tuple[list[Point], Fraction]] = []
    for (k, side), part in sorted(tile.faces.items()):
        cells = part.items()
        layer = lo[k] if side == 0 else hi[k]
        ranges = [
            range(layer, layer + 1) if axis == k else range(lo[axis], hi[axis] + 1)
            for axis in range(n)
        ]
        for index in product(*ranges):
            shift = cell.translation(index)
            for simplex, coeff in cells:
                moved = [tuple(x + s for x, s in zip(v, shift)) for v in simplex]
                pieces.append((moved, coeff))
    faces = chain_from_cells(n, filling.grade - 1, pieces, check=False)
    result = reduce(interior + faces)
    logger.info(
        f"region_cycle: box {list(lo)}..{list(hi)}, "
        f"{len(interior)} interior + {len(faces)} face cells -> {len(result)}"
    )
    return result
