"""余次元スライス T ∩ A (A は向き付きアフィン (n−d) 平面)

向きの規約: セルの辺ベクトル E のあとに A の基底 D を並べた [E | D] が R^n の正の基底なら
交点の係数は +1。
"""

from fractions import Fraction
from typing import Sequence

from backend.grassmann.linalg import determinant, nullspace, solve

from .chain import PolyChain
from .exceptions import TransversalityError
from .polytope import enumerate_vertices, simplex_constraints
from .simplex import Point, as_point


def slice_fiber(
    chain: PolyChain, base: Sequence[object], directions: Sequence[Sequence[object]]
) -> PolyChain:
    """d チェインと向き付きアフィン (n−d) 平面 base + span(directions) の交わり

    Args:
        chain: 次数 d のチェイン
        base: 平面上の1点
        directions: 平面の向き付き基底 (n−d 本)

    Returns:
        PolyChain: 符号つきの点の 0 チェイン

    Raises:
        TransversalityError: 平面がセルの (d−1) 骨格に触れる、またはセルと平行に交わる場合

    Examples:
        >>> T = PolyChain.from_simplices(2, 1, [([(0, 0), (1, 0)], 1)])
        >>> slice_fiber(T, ("1/2", 0), [(0, 1)]).cells
        {((Fraction(1, 2), Fraction(0, 1)),): Fraction(1, 1)}
    """
    point = as_point(base)
    frame = [as_point(v) for v in directions]
    n, d = chain.n, chain.d
    if len(frame) != n - d:
        raise ValueError(f"a {d}-chain in R^{n} is sliced by an affine {n - d}-plane")

    hits: dict[tuple[Point], Fraction] = {}
    for cell, coeff in chain.items():
        origin = cell[0]
        edges = [tuple(x - y for x, y in zip(v, origin)) for v in cell[1:]]
        columns = edges + [tuple(-c for c in v) for v in frame]
        matrix = [[col[i] for col in columns] for i in range(n)]
        rhs = [p - o for p, o in zip(point, origin)]
        orientation = determinant([[col[i] for col in edges + frame] for i in range(n)])
        if orientation == 0:
            if _meets_cell(origin, edges, point, frame):
                raise TransversalityError(f"slice plane is parallel to and meets cell {cell}")
            continue
        solution = solve(matrix, rhs)
        assert solution is not None
        weights = solution[:d]
        barycentric = [Fraction(1) - sum(weights, Fraction(0))] + list(weights)
        if any(b < 0 for b in barycentric):
            continue
        if any(b == 0 for b in barycentric):
            raise TransversalityError(f"slice plane meets the boundary of cell {cell}")
        location = tuple(
            o + sum((w * e[i] for w, e in zip(weights, edges)), Fraction(0))
            for i, o in enumerate(origin)
        )
        value = coeff if orientation > 0 else -coeff
        hits[(location,)] = hits.get((location,), Fraction(0)) + value
    return PolyChain(n, 0, hits)


def _meets_cell(
    origin: Point, edges: list[Point], point: Point, frame: list[Point]
) -> bool:
    """平行な場合に平面がセルと交わるか (単体上の実行可能性を頂点列挙で判定)"""
    d = len(edges)
    normals = nullspace([list(v) for v in frame], ncols=len(point))
    constraints = simplex_constraints(d)
    for normal in normals:
        row = tuple(sum((c * e for c, e in zip(normal, edge)), Fraction(0)) for edge in edges)
        bound = sum((c * (p - o) for c, p, o in zip(normal, point, origin)), Fraction(0))
        constraints.append((row, bound))
        constraints.append((tuple(-r for r in row), -bound))
    vertices, _ = enumerate_vertices(constraints, d)
    return bool(vertices)


def slice_total(chain: PolyChain, base: Sequence[object], directions: Sequence[Sequence[object]]) -> Fraction:
    """スライスの係数の総和 (射影次数)"""
    return sum(slice_fiber(chain, base, directions).cells.values(), Fraction(0))

