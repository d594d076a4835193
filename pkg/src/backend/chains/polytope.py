"""有理半空間で表した凸多面体と厳密クリッピング

責務:
- HalfSpace / Polytope: normal·x ≤ offset の共通部分
- パラメータ空間 x = origin + E·t での頂点列挙 (制約 k 本の組ごとに連立方程式を解く)
- 引き寄せ三角形分割: 辞書式最小頂点から、それを含まない各ファセットの
  三角形分割へ錐を張る (再帰)。分割は多面体の幾何だけで決まるので、
  隣接するセルの共有面は同じ単体に分割される。
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from backend.grassmann.linalg import as_fraction, determinant, rank

from .simplex import Point, as_point

Constraint = tuple[tuple[Fraction, ...], Fraction]


@dataclass(frozen=True)
class HalfSpace:
    """閉半空間 {x : normal·x ≤ offset}

    Examples:
        >>> HalfSpace.of((1, 0), 1).value((2, 5))
        Fraction(1, 1)
    """

    normal: Point
    offset: Fraction

    @classmethod
    def of(cls, normal: Iterable[object], offset: object) -> "HalfSpace":
        return cls(as_point(normal), as_fraction(offset))

    def value(self, point: Sequence[Fraction]) -> Fraction:
        """normal·x − offset (内側で ≤ 0)"""
        total = -self.offset
        for a, x in zip(self.normal, point):
            if a:
                total += a * x
        return total

    def translated(self, shift: Sequence[Fraction]) -> "HalfSpace":
        moved = self.offset + sum((a * s for a, s in zip(self.normal, shift)), Fraction(0))
        return HalfSpace(self.normal, moved)


def box_halfspaces(lo: Sequence[object], hi: Sequence[object]) -> list[HalfSpace]:
    """軸平行な箱 [lo, hi] の 2n 個の半空間 (軸ごとに下側、上側の順)"""
    lower, upper = as_point(lo), as_point(hi)
    n = len(lower)
    halfspaces = []
    for k in range(n):
        unit = tuple(Fraction(int(i == k)) for i in range(n))
        halfspaces.append(HalfSpace(tuple(-u for u in unit), -lower[k]))
        halfspaces.append(HalfSpace(unit, upper[k]))
    return halfspaces


@dataclass(frozen=True)
class Polytope:
    """有界な凸多面体 (半空間の共通部分)

    Attributes:
        halfspaces: 閉半空間のタプル
    """

    halfspaces: tuple[HalfSpace, ...]

    @classmethod
    def box(cls, lo: Sequence[object], hi: Sequence[object]) -> "Polytope":
        return cls(tuple(box_halfspaces(lo, hi)))

    @classmethod
    def of(cls, halfspaces: Iterable[HalfSpace]) -> "Polytope":
        return cls(tuple(halfspaces))

    @property
    def n(self) -> int:
        return len(self.halfspaces[0].normal)

    def contains(self, point: Sequence[Fraction]) -> bool:
        return all(h.value(point) <= 0 for h in self.halfspaces)

    def translated(self, shift: Sequence[object]) -> "Polytope":
        vector = as_point(shift)
        return Polytope(tuple(h.translated(vector) for h in self.halfspaces))

    def vertices(self) -> list[Point]:
        """頂点を辞書式順で返す"""
        n = self.n
        identity = [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
        origin = tuple(Fraction(0) for _ in range(n))
        constraints = [(h.normal, h.offset) for h in self.halfspaces]
        points, _ = enumerate_vertices(constraints, n)
        return sorted(_to_ambient(origin, identity, t) for t in points)

    def facets(self) -> list[HalfSpace]:
        """境界が (n−1) 次元の面になる半空間 (重複は最初の1つ)"""
        vertices = self.vertices()
        seen: set[frozenset[Point]] = set()
        result = []
        for h in self.halfspaces:
            on_face = frozenset(v for v in vertices if h.value(v) == 0)
            if on_face in seen or _affine_dim(list(on_face)) != self.n - 1:
                continue
            seen.add(on_face)
            result.append(h)
        return result


def _solve_square(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> tuple[Fraction, ...] | None:
    """正則な正方系 A t = b の解 (特異なら None)"""
    size = len(rows)
    work = [list(row) + [b] for row, b in zip(rows, rhs)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if work[r][col] != 0), None)
        if pivot is None:
            return None
        work[col], work[pivot] = work[pivot], work[col]
        lead = work[col][col]
        if lead != 1:
            work[col] = [x / lead for x in work[col]]
        for r in range(size):
            if r != col and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return tuple(work[r][size] for r in range(size))


def _affine_dim(points: Sequence[Sequence[Fraction]]) -> int:
    if not points:
        return -1
    base = points[0]
    diffs = [[x - y for x, y in zip(p, base)] for p in points[1:]]
    if not diffs:
        return 0
    return rank(diffs)


def enumerate_vertices(
    constraints: Sequence[Constraint], k: int
) -> tuple[list[tuple[Fraction, ...]], list[frozenset[int]]]:
    """{t ∈ R^k : a·t ≤ b} の頂点と、各頂点で等号が成り立つ制約の添字集合

    零ベクトルの制約は b ≥ 0 なら常に成り立つので組み合わせから除く
    (b < 0 なら空集合)。
    """
    active = []
    for index, (row, bound) in enumerate(constraints):
        if all(a == 0 for a in row):
            if bound < 0:
                return [], []
            continue
        active.append(index)

    found: dict[tuple[Fraction, ...], frozenset[int]] = {}
    for subset in combinations(active, k):
        rows = [constraints[i][0] for i in subset]
        rhs = [constraints[i][1] for i in subset]
        point = _solve_square(rows, rhs)
        if point is None or point in found:
            continue
        tight = []
        feasible = True
        for index, (row, bound) in enumerate(constraints):
            value = sum((a * t for a, t in zip(row, point) if a), Fraction(0))
            if value > bound:
                feasible = False
                break
            if value == bound:
                tight.append(index)
        if feasible:
            found[point] = frozenset(tight)
    points = sorted(found)
    return points, [found[p] for p in points]


def _to_ambient(
    origin: Sequence[Fraction], columns: Sequence[Sequence[Fraction]], t: Sequence[Fraction]
) -> Point:
    result = list(origin)
    for coeff, column in zip(t, columns):
        if coeff:
            for i, c in enumerate(column):
                if c:
                    result[i] += coeff * c
    return tuple(result)


def _pulling_triangulation(
    ids: frozenset[int],
    dim: int,
    tight: Sequence[frozenset[int]],
    params: Sequence[tuple[Fraction, ...]],
    order_key: Sequence[Point],
) -> list[tuple[int, ...]]:
    if len(ids) == dim + 1:
        return [tuple(sorted(ids, key=lambda i: order_key[i]))]
    apex = min(ids, key=lambda i: order_key[i])
    labels = set().union(*(tight[i] for i in ids))
    faces: dict[frozenset[int], None] = {}
    for label in sorted(labels):
        face = frozenset(i for i in ids if label in tight[i])
        if apex in face or len(face) < dim or face in faces:
            continue
        if _affine_dim([params[i] for i in face]) == dim - 1:
            faces[face] = None
    simplices = []
    for face in sorted(faces, key=lambda f: sorted(order_key[i] for i in f)):
        for simplex in _pulling_triangulation(face, dim - 1, tight, params, order_key):
            simplices.append((apex,) + simplex)
    return simplices


def clip_parametrized(
    origin: Sequence[Fraction],
    columns: Sequence[Sequence[Fraction]],
    constraints: Sequence[Constraint],
) -> list[tuple[list[Point], int]]:
    """パラメータ多面体 {t : a·t ≤ b} の像 origin + E·t を単体に分割する

    Args:
        origin: 原点の像
        columns: E の列 (k 本)
        constraints: パラメータ空間の制約 (a, b)

    Returns:
        list[tuple[list[Point], int]]: (頂点列, 向きの符号)。符号 +1 は
        wedge(E) と同じ向きを表す。k 次元に満たない共通部分は空リスト。
    """
    k = len(columns)
    params, tight = enumerate_vertices(constraints, k)
    if len(params) < k + 1 or _affine_dim(params) < k:
        return []
    points = [_to_ambient(origin, columns, t) for t in params]
    simplices = _pulling_triangulation(
        frozenset(range(len(params))), k, tight, params, points
    )
    result = []
    for simplex in simplices:
        base = params[simplex[0]]
        edges = [[x - y for x, y in zip(params[i], base)] for i in simplex[1:]]
        det = determinant([list(col) for col in zip(*edges)]) if edges else Fraction(1)
        if det == 0:
            continue
        result.append(([points[i] for i in simplex], 1 if det > 0 else -1))
    return result


def simplex_constraints(k: int) -> list[Constraint]:
    """標準単体 {t ≥ 0, Σ t ≤ 1} の制約"""
    constraints: list[Constraint] = []
    for j in range(k):
        constraints.append(
            (tuple(Fraction(-1) if i == j else Fraction(0) for i in range(k)), Fraction(0))
        )
    constraints.append((tuple(Fraction(1) for _ in range(k)), Fraction(1)))
    return constraints
