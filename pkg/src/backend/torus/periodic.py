"""R^n/Z^n 上の周期的チェイン

代表セルは、辞書式最小頂点が半開の基本セル [0,1)^n に入るよう整数平行移動して持つ。
実際のチェインは代表のすべての Z^n 平行移動の和。
"""

from fractions import Fraction
from itertools import product
from math import ceil, floor
from typing import Sequence

from backend.chains import PolyChain, chain_from_cells, is_zero, restrict
from backend.chains.simplex import Cell, Point, as_point
from backend.logging import torus_logger as logger

from .family import unit_cube_region


def _normalize_cell(cell: Cell) -> Cell:
    shift = [floor(x) for x in cell[0]]
    if not any(shift):
        return cell
    return tuple(tuple(x - s for x, s in zip(v, shift)) for v in cell)


class PeriodicChain:
    """Z^n 周期的な多面体チェイン

    Attributes:
        representatives: 正規化された代表セルのチェイン

    Examples:
        >>> T = PolyChain.from_simplices(2, 1, [([(2, "1/2"), (3, "1/2")], 1)])
        >>> PeriodicChain.from_chain(T).representatives.vertices()[0]
        (Fraction(0, 1), Fraction(1, 2))
    """

    __slots__ = ("representatives",)

    def __init__(self, representatives: PolyChain) -> None:
        pieces = [(_normalize_cell(cell), coeff) for cell, coeff in representatives.items()]
        self.representatives = chain_from_cells(
            representatives.n, representatives.d, pieces, check=False
        )

    @classmethod
    def from_chain(cls, chain: PolyChain) -> "PeriodicChain":
        """任意のチェインを代表とみなし、セルを基本セルへ寄せる"""
        return cls(chain)

    @classmethod
    def zero(cls, n: int, d: int) -> "PeriodicChain":
        return cls(PolyChain.zero(n, d))

    @property
    def n(self) -> int:
        return self.representatives.n

    @property
    def grade(self) -> int:
        return self.representatives.d

    def __len__(self) -> int:
        return len(self.representatives)

    def is_empty(self) -> bool:
        return self.representatives.is_empty()

    def items(self) -> list[tuple[Cell, Fraction]]:
        return self.representatives.items()

    def __eq__(self, other: object) -> bool:
        """形式的な等号。周期カレントとしての等号は periodic_equal"""
        if not isinstance(other, PeriodicChain):
            return NotImplemented
        return self.representatives == other.representatives

    def __hash__(self) -> int:
        return hash(self.representatives)

    def __repr__(self) -> str:
        return f"PeriodicChain(n={self.n}, grade={self.grade}, cells={len(self)})"

    def __add__(self, other: "PeriodicChain") -> "PeriodicChain":
        return PeriodicChain(self.representatives + other.representatives)

    def __neg__(self) -> "PeriodicChain":
        return PeriodicChain(-self.representatives)

    def __sub__(self, other: "PeriodicChain") -> "PeriodicChain":
        return PeriodicChain(self.representatives - other.representatives)

    def scaled(self, factor: object) -> "PeriodicChain":
        return PeriodicChain(self.representatives.scaled(factor))

    def boundary(self) -> "PeriodicChain":
        """代表の境界を基本セルへ寄せ直したもの"""
        return PeriodicChain.from_chain(self.representatives.boundary())

    def lift_over(self, lo: Sequence[object], hi: Sequence[object]) -> PolyChain:
        """箱 [lo, hi] に外接箱が交わる平行移動をすべて並べた持ち上げ

        Args:
            lo: 箱の下端
            hi: 箱の上端

        Returns:
            PolyChain: Q̃ の有限部分 (箱の上では Q̃ と一致)
        """
        lower, upper = as_point(lo), as_point(hi)
        pieces: list[tuple[Sequence[Point], Fraction]] = []
        for cell, coeff in self.items():
            cell_lo = [min(v[k] for v in cell) for k in range(self.n)]
            cell_hi = [max(v[k] for v in cell) for k in range(self.n)]
            ranges = [
                range(ceil(lower[k] - cell_hi[k]), floor(upper[k] - cell_lo[k]) + 1)
                for k in range(self.n)
            ]
            for shift in product(*ranges):
                moved = [tuple(x + s for x, s in zip(v, shift)) for v in cell]
                pieces.append((moved, coeff))
        lifted = chain_from_cells(self.n, self.grade, pieces, check=False)
        logger.debug(f"lift_over: {len(self)} representatives -> {len(lifted)} cells")
        return lifted


def periodic_equal(left: PeriodicChain, right: PeriodicChain) -> bool:
    """周期カレントとして等しいか

    形式的に等しければ即座に真。そうでなければ差の持ち上げを閉単位立方体に制限し、
    カレントとして 0 かを調べる (単位立方体の平行移動は全空間を覆うので同値)。
    """
    difference = left - right
    if difference.is_empty():
        return True
    n = difference.n
    lifted = difference.lift_over([0] * n, [1] * n)
    return is_zero(restrict(lifted, unit_cube_region(n)))


def periodic_boundary_equal(filling: PeriodicChain, cycle: PeriodicChain) -> bool:
    """∂Q = S が周期カレントとして成り立つか"""
    return periodic_equal(filling.boundary(), cycle)

