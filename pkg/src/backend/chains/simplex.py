"""向き付き単体とセルの正規形

セルは頂点 (有理座標のタプル) の辞書式昇順タプルで表す。並べ替えの置換の偶奇は
係数の符号に繰り込むので、同じ単体は常に同じキーになる。
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from backend.grassmann import DVector, wedge_of_columns
from backend.grassmann.dvector import multi_indices
from backend.grassmann.linalg import as_fraction

from .exceptions import DegenerateSimplexError

Point = tuple[Fraction, ...]
Cell = tuple[Point, ...]


def as_point(values: Iterable[object]) -> Point:
    return tuple(as_fraction(v) for v in values)


def permutation_sign(order: Sequence[int]) -> int:
    """置換の符号 (転倒数の偶奇)"""
    sign = 1
    seen = list(order)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign


def canonical_cell(vertices: Sequence[Point]) -> tuple[Cell, int] | None:
    """頂点を昇順に並べたセルと置換の符号を返す (重複頂点があれば None)"""
    order = sorted(range(len(vertices)), key=lambda k: vertices[k])
    cell = tuple(vertices[k] for k in order)
    for a, b in zip(cell, cell[1:]):
        if a == b:
            return None
    return cell, permutation_sign(order)


def edge_vectors(cell: Sequence[Point]) -> list[Point]:
    base = cell[0]
    return [tuple(x - y for x, y in zip(vertex, base)) for vertex in cell[1:]]


def cell_wedge(cell: Sequence[Point]) -> DVector:
    """辺ベクトル v1−v0, …, vd−v0 の外積"""
    return wedge_of_columns(edge_vectors(cell), n=len(cell[0]))


def cell_volume(cell: Sequence[Point]) -> float:
    """d 次元体積 |wedge|/d!"""
    return cell_wedge(cell).norm() / factorial(len(cell) - 1)


def is_degenerate(cell: Sequence[Point]) -> bool:
    return cell_wedge(cell).is_zero()


def affine_span_key(cell: Sequence[Point]) -> tuple[tuple[int, ...], tuple[Fraction, ...]]:
    """セルのアフィン包を識別するキー

    W を向きを無視した原始整数 d ベクトルとすると、平面上の点 x について x∧W は一定で、
    平行な別の平面では異なる。(W のキー, x∧W の座標) を返す。
    """
    wedge = cell_wedge(cell)
    key = wedge.unoriented_key()
    n, d = wedge.n, wedge.d
    lookup = {index: value for index, value in zip(multi_indices(n, d), key)}
    point = cell[0]
    coords = []
    for target in multi_indices(n, d + 1) if d < n else ():
        total = Fraction(0)
        for position, k in enumerate(target):
            rest = target[:position] + target[position + 1 :]
            weight = lookup[rest]
            if weight:
                total += (-1) ** position * point[k] * weight
        coords.append(total)
    return key, tuple(coords)


@dataclass(frozen=True)
class OrientedSimplex:
    """向き付き d 単体 (頂点の順序が向きを決める)

    Attributes:
        vertices: d+1 個の有理点

    Raises:
        DegenerateSimplexError: 頂点がアフィン独立でない場合

    Examples:
        >>> OrientedSimplex.of([(0, 0), (1, 0)]).volume
        1.0
    """

    vertices: tuple[Point, ...]

    def __post_init__(self) -> None:
        if not self.vertices:
            raise DegenerateSimplexError("a simplex needs at least one vertex")
        size = len(self.vertices[0])
        if any(len(v) != size for v in self.vertices):
            raise DegenerateSimplexError("vertices of different dimensions")
        if len(self.vertices) > size + 1 or is_degenerate(self.vertices):
            raise DegenerateSimplexError(f"vertices {self.vertices} are affinely dependent")

    @classmethod
    def of(cls, vertices: Iterable[Iterable[object]]) -> "OrientedSimplex":
        return cls(tuple(as_point(v) for v in vertices))

    @property
    def n(self) -> int:
        return len(self.vertices[0])

    @property
    def d(self) -> int:
        return len(self.vertices) - 1

    @property
    def wedge(self) -> DVector:
        return cell_wedge(self.vertices)

    @property
    def volume(self) -> float:
        return cell_volume(self.vertices)

    def canonical(self) -> tuple[Cell, int]:
        result = canonical_cell(self.vertices)
        assert result is not None
        return result
