"""周期的な平行平面族 T_P = {x : M(x − v) ∈ Z^{n−d}}

責務:
- PlaneFamily: 平面・オフセット・係数の組
- 1周期ぶんの代表 (格子平行体 Par(v; U) の Kuhn 分割)
- subtorus_chain: 凸多面体に交わる族の平面をすべて切り出す
- オフセット v_i = i·(1/p, 1/p², …, 1/p^n) の生成
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import ceil, floor
from typing import Sequence

from backend.chains import PolyChain, Polytope, chain_from_cells, clip_parametrized
from backend.chains.polytope import HalfSpace
from backend.chains.simplex import Point, as_point, permutation_sign
from backend.grassmann import RationalPlane
from backend.grassmann.linalg import as_fraction, solve

Column = tuple[Fraction, ...]


@dataclass(frozen=True)
class PlaneFamily:
    """係数つきの周期的平面族

    Attributes:
        plane: 向き付き有理平面 P
        offset: 族の基準点 v_P
        scale: 係数 s (S = Σ s_i T_{P_i} の重み)

    Examples:
        >>> from backend.grassmann import coordinate_plane
        >>> family = PlaneFamily.of(coordinate_plane(2, 1), ("1/3", "1/5"))
        >>> family.contains(("7/2", "1/5"))
        True
    """

    plane: RationalPlane
    offset: Point
    scale: Fraction = field(default=Fraction(1))

    @classmethod
    def of(
        cls, plane: RationalPlane, offset: Sequence[object], scale: object = 1
    ) -> "PlaneFamily":
        return cls(plane, as_point(offset), as_fraction(scale))

    @property
    def n(self) -> int:
        return self.plane.n

    @property
    def d(self) -> int:
        return self.plane.d

    def columns(self) -> list[Column]:
        return [tuple(Fraction(x) for x in col) for col in self.plane.basis]

    def contains(self, point: Sequence[object]) -> bool:
        """点が族のいずれかの平面に乗るか"""
        shifted = [Fraction(x) - v for x, v in zip(as_point(point), self.offset)]
        return all(value.denominator == 1 for value in self.plane.kernel_image(shifted))

    def representative(self) -> PolyChain:
        """1周期ぶんの代表 s·Par(v; U)"""
        return parallelepiped_chain(self.offset, self.columns(), self.scale)


def kuhn_walk(
    origin: Sequence[Fraction], columns: Sequence[Sequence[Fraction]], order: Sequence[int]
) -> list[Point]:
    """origin から order の順に列を足していく頂点列"""
    vertex = list(origin)
    vertices = [tuple(vertex)]
    for axis in order:
        vertex = [x + c for x, c in zip(vertex, columns[axis])]
        vertices.append(tuple(vertex))
    return vertices


def parallelepiped_cells(
    origin: Sequence[Fraction], columns: Sequence[Sequence[Fraction]]
) -> list[tuple[list[Point], int]]:
    """origin + U·[0,1]^k の Kuhn 分割 (頂点列, sgn(σ))

    各単体は列の順序 u_1, …, u_k に関して正の向きになる。
    """
    return [
        (kuhn_walk(origin, columns, order), permutation_sign(order))
        for order in permutations(range(len(columns)))
    ]


def parallelepiped_chain(
    origin: Sequence[object], columns: Sequence[Sequence[object]], coeff: object = 1
) -> PolyChain:
    """格子平行体 Par(origin; U) を係数 coeff のチェインにする

    Examples:
        >>> len(parallelepiped_chain((0, 0), [(1, 1)]))
        1
    """
    base = as_point(origin)
    cols = [as_point(col) for col in columns]
    value = as_fraction(coeff)
    pieces = [(vertices, value * sign) for vertices, sign in parallelepiped_cells(base, cols)]
    return chain_from_cells(len(base), len(cols), pieces, check=True)


def subtorus_chain(
    plane: RationalPlane,
    offset: Sequence[object],
    region: Polytope | tuple[Sequence[object], Sequence[object]],
) -> PolyChain:
    """族 {x : M(x − v) ∈ Z^{n−d}} のうち region に交わる平面を切り出す

    Args:
        plane: 向き付き有理平面 P
        offset: オフセット v
        region: 有界な凸多面体、または軸平行な箱 (lo, hi)

    Returns:
        PolyChain: P と同じ向き、係数 1 の d チェイン

    Examples:
        >>> from backend.grassmann import coordinate_plane
        >>> T = subtorus_chain(coordinate_plane(2, 1), (0, 0), ((0, 0), (1, 1)))
        >>> len(T), T.mass()
        (2, 2.0)
    """
    polytope = region if isinstance(region, Polytope) else Polytope.box(*region)
    base = as_point(offset)
    n, d = plane.n, plane.d
    columns = [tuple(Fraction(x) for x in col) for col in plane.basis]
    vertices = polytope.vertices()
    if not vertices:
        return PolyChain.zero(n, d)

    kernel = [tuple(Fraction(x) for x in row) for row in plane.kernel]
    levels = [plane.kernel_image(v) for v in vertices]
    start = plane.kernel_image(base)
    ranges = []
    for row in range(len(kernel)):
        low = min(level[row] for level in levels) - start[row]
        high = max(level[row] for level in levels) - start[row]
        ranges.append(range(ceil(low), floor(high) + 1))

    pieces: list[tuple[list[Point], Fraction]] = []
    for index in product(*ranges):
        shift = solve(kernel, [Fraction(m) for m in index]) if kernel else ()
        assert shift is not None
        point = tuple(v + s for v, s in zip(base, shift)) if kernel else base
        constraints = _plane_constraints(polytope.halfspaces, point, columns)
        for simplex, sign in clip_parametrized(point, columns, constraints):
            pieces.append((simplex, Fraction(sign)))
    return chain_from_cells(n, d, pieces, check=False)


def _plane_constraints(
    halfspaces: Sequence[HalfSpace], point: Point, columns: Sequence[Column]
) -> list[tuple[tuple[Fraction, ...], Fraction]]:
    """a·(p + B t) ≤ b をパラメータ t の制約 (a·B) t ≤ b − a·p に直す"""
    constraints = []
    for h in halfspaces:
        row = tuple(sum((a * c for a, c in zip(h.normal, col)), Fraction(0)) for col in columns)
        constraints.append((row, -h.value(point)))
    return constraints


def generic_offsets(count: int, n: int, prime: int) -> list[Point]:
    """v_i = i·(1/p, 1/p², …, 1/p^n) (i = 1, …, count)

    Examples:
        >>> generic_offsets(1, 2, 5)
        [(Fraction(1, 5), Fraction(1, 25))]
    """
    unit = [Fraction(1, prime**k) for k in range(1, n + 1)]
    return [tuple(i * u for u in unit) for i in range(1, count + 1)]


def unit_cube_region(n: int) -> Polytope:
    return Polytope.box([0] * n, [1] * n)
