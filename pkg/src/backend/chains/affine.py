"""アフィン押し出しと基本チェインの生成

- pushforward_affine / translate / scale (ρ_N は scale(T, 1/N))
- cube_chain: 軸平行な箱の Kuhn 三角形分割 (正の向き)
- simplex_chain: 単体1つのチェイン
- prism: ホモトピー作用素 P(T, w)、∂P = τ_w T − T − P(∂T)
"""

from fractions import Fraction
from itertools import permutations
from typing import Sequence

from backend.grassmann.linalg import as_fraction, as_matrix, determinant

from .chain import PolyChain, chain_from_cells
from .exceptions import SingularMapError
from .simplex import Point, as_point, permutation_sign


def pushforward_affine(
    chain: PolyChain, matrix: Sequence[Sequence[object]], shift: Sequence[object] | None = None
) -> PolyChain:
    """x ↦ A x + b による押し出し (頂点を写し、係数はそのまま)

    Raises:
        SingularMapError: A が正方正則でない場合

    Examples:
        >>> T = PolyChain.from_simplices(2, 1, [([(0, 0), (0, 1)], 1)])
        >>> pushforward_affine(T, [[1, 1], [0, 1]]).vertices()
        [(Fraction(0, 1), Fraction(0, 1)), (Fraction(1, 1), Fraction(1, 1))]
    """
    linear = as_matrix(matrix)
    n = chain.n
    if len(linear) != n or any(len(row) != n for row in linear):
        raise SingularMapError(f"affine map must be {n}x{n}")
    if determinant(linear) == 0:
        raise SingularMapError(f"linear part {matrix} is singular")
    offset = as_point(shift) if shift is not None else tuple(Fraction(0) for _ in range(n))

    def apply(point: Point) -> Point:
        return tuple(
            sum((a * x for a, x in zip(row, point) if a), Fraction(0)) + b
            for row, b in zip(linear, offset)
        )

    return chain.map_vertices(apply)


def translate(chain: PolyChain, shift: Sequence[object]) -> PolyChain:
    vector = as_point(shift)
    return chain.map_vertices(lambda p: tuple(x + v for x, v in zip(p, vector)))


def scale(chain: PolyChain, factor: object) -> PolyChain:
    """x ↦ factor·x (factor > 0)"""
    value = as_fraction(factor)
    if value <= 0:
        raise SingularMapError(f"scale factor must be positive, got {value}")
    return chain.map_vertices(lambda p: tuple(x * value for x in p))


def shrink(chain: PolyChain, size: int) -> PolyChain:
    """ρ_N: x ↦ x/N"""
    return scale(chain, Fraction(1, size))


def kuhn_simplices(axes: Sequence[int]) -> list[tuple[tuple[int, ...], int]]:
    """[0,1]^k の Kuhn 単体 (座標を足す順序, 向きを正にする符号)"""
    return [(order, permutation_sign(order)) for order in permutations(axes)]


def cube_chain(lo: Sequence[object], hi: Sequence[object]) -> PolyChain:
    """軸平行な箱 [lo, hi] の Kuhn 三角形分割

    lo_k = hi_k の軸は潰れた方向として扱い、残りの軸で d 次元の箱を作る。
    向きはその座標の順序で正。

    Examples:
        >>> len(cube_chain((0, 0), (1, 1)))
        2
        >>> cube_chain((0, 0), (1, 0)).d
        1
    """
    lower, upper = as_point(lo), as_point(hi)
    n = len(lower)
    axes = [k for k in range(n) if upper[k] != lower[k]]
    if any(upper[k] < lower[k] for k in axes):
        raise ValueError(f"box [{lo}, {hi}] has negative extent")
    pieces = []
    for order, sign in kuhn_simplices(axes):
        vertex = list(lower)
        vertices = [tuple(vertex)]
        for k in order:
            vertex[k] = upper[k]
            vertices.append(tuple(vertex))
        pieces.append((vertices, Fraction(sign)))
    return chain_from_cells(n, len(axes), pieces, check=False)


def simplex_chain(vertices: Sequence[Sequence[object]], coeff: object = 1) -> PolyChain:
    points = [as_point(v) for v in vertices]
    return PolyChain.from_simplices(len(points[0]), len(points) - 1, [(points, coeff)])


def prism(chain: PolyChain, direction: Sequence[object]) -> PolyChain:
    """P(T, w) = Σ_i (−1)^i [v0..vi, vi+w..vd+w]

    w が単体の張る方向に含まれると退化セルになり落ちる (カレントとしては 0)。
    """
    w = as_point(direction)
    pieces = []
    for cell, coeff in chain.items():
        moved = [tuple(x + y for x, y in zip(v, w)) for v in cell]
        for i in range(len(cell)):
            vertices = list(cell[: i + 1]) + moved[i:]
            pieces.append((vertices, coeff if i % 2 == 0 else -coeff))
    return chain_from_cells(chain.n, chain.d + 1, pieces, check=True)
