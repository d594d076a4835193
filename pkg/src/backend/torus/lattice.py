"""格子平行体セル F = o + K([0,1]^n) (K はユニモジュラ整数行列)

F の平行移動 F_j = o + K(j + [0,1]^n), j ∈ Z^n は R^n を敷き詰める。
ファセットは ν_k·(x − o) ∈ {0, 1} (ν_k は K^{-1} の第 k 行) で、
(k, 0) を下側、(k, 1) を上側と呼ぶ。
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Sequence

from backend.chains import HalfSpace, Polytope
from backend.chains.simplex import Cell, Point, as_point
from backend.grassmann.linalg import determinant, solve

Facet = tuple[int, int]


@dataclass(frozen=True)
class LatticeCell:
    """ユニモジュラ格子平行体

    Attributes:
        matrix: K (行のタプル、整数)
        origin: o

    Examples:
        >>> cell = LatticeCell.sheared(2)
        >>> cell.normals()
        ((1, -1), (0, 1))
    """

    matrix: tuple[tuple[int, ...], ...]
    origin: Point

    def __post_init__(self) -> None:
        size = len(self.matrix)
        if any(len(row) != size for row in self.matrix) or len(self.origin) != size:
            raise ValueError(f"cell matrix must be {len(self.origin)}x{len(self.origin)}")
        det = determinant([[Fraction(x) for x in row] for row in self.matrix])
        if abs(det) != 1:
            raise ValueError(f"cell matrix {self.matrix} is not unimodular (det={det})")

    # --------------------------
    #  生成
    # --------------------------

    @classmethod
    def unit(cls, n: int, origin: Sequence[object] | None = None) -> "LatticeCell":
        """単位立方体 (の整数平行移動)"""
        identity = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return cls(identity, as_point(origin if origin is not None else [0] * n))

    @classmethod
    def sheared(cls, n: int, origin: Sequence[object] | None = None) -> "LatticeCell":
        """K(x) = (x_1 + x_n, x_2, …, x_n)"""
        rows = []
        for i in range(n):
            row = [int(i == j) for j in range(n)]
            if i == 0 and n > 1:
                row[n - 1] = 1
            rows.append(tuple(row))
        return cls(tuple(rows), as_point(origin if origin is not None else [0] * n))

    # --------------------------
    #  幾何
    # --------------------------

    @property
    def n(self) -> int:
        return len(self.origin)

    def normals(self) -> tuple[tuple[int, ...], ...]:
        """K^{-1} の行 ν_k (整数)"""
        return self._inverse_rows

    @cached_property
    def _inverse_rows(self) -> tuple[tuple[int, ...], ...]:
        n = self.n
        matrix = [[Fraction(x) for x in row] for row in self.matrix]
        columns = []
        for k in range(n):
            unit = [Fraction(int(i == k)) for i in range(n)]
            column = solve(matrix, unit)
            assert column is not None
            columns.append(column)
        return tuple(tuple(int(columns[j][i]) for j in range(n)) for i in range(n))

    def coordinates(self, point: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """y = K^{-1}(x − o)"""
        shifted = [x - o for x, o in zip(point, self.origin)]
        return tuple(
            sum((a * s for a, s in zip(normal, shifted) if a), Fraction(0))
            for normal in self.normals()
        )

    def translation(self, index: Sequence[int]) -> Point:
        """K·j (整数ベクトル)"""
        return tuple(
            Fraction(sum(a * j for a, j in zip(row, index))) for row in self.matrix
        )

    def region(
        self, lo: Sequence[int] | None = None, hi: Sequence[int] | None = None
    ) -> Polytope:
        """o + K·[lo, hi] (既定は F 自身、lo = 0, hi = 1)"""
        n = self.n
        lower = list(lo) if lo is not None else [0] * n
        upper = list(hi) if hi is not None else [1] * n
        halfspaces = []
        for k, normal in enumerate(self.normals()):
            level = sum((a * o for a, o in zip(normal, self.origin)), Fraction(0))
            vector = tuple(Fraction(a) for a in normal)
            halfspaces.append(HalfSpace(tuple(-a for a in vector), -(level + lower[k])))
            halfspaces.append(HalfSpace(vector, level + upper[k]))
        return Polytope(tuple(halfspaces))

    def bounding_box(
        self, lo: Sequence[int] | None = None, hi: Sequence[int] | None = None
    ) -> tuple[Point, Point]:
        n = self.n
        lower = list(lo) if lo is not None else [0] * n
        upper = list(hi) if hi is not None else [1] * n
        corners = []
        for corner in product(*[(a, b) for a, b in zip(lower, upper)]):
            shift = self.translation(corner)
            corners.append(tuple(o + s for o, s in zip(self.origin, shift)))
        return (
            tuple(min(c[k] for c in corners) for k in range(n)),
            tuple(max(c[k] for c in corners) for k in range(n)),
        )

    def facet_of(self, cell: Cell) -> list[Facet]:
        """セルの全頂点が乗っている F のファセット (k, 0|1) の一覧"""
        found = []
        coordinates = [self.coordinates(v) for v in cell]
        for k in range(self.n):
            values = {c[k] for c in coordinates}
            if len(values) == 1:
                value = values.pop()
                if value in (0, 1):
                    found.append((k, int(value)))
        return found

    def in_lattice_hyperplane(self, cell: Cell) -> int | None:
        """セルが超平面 {ν_k·(x − o) ∈ Z} に含まれるなら k を返す"""
        coordinates = [self.coordinates(v) for v in cell]
        for k in range(self.n):
            values = {c[k] for c in coordinates}
            if len(values) == 1 and values.pop().denominator == 1:
                return k
        return None
