"""多面体チェイン (PolyChain)

T = Σ a_i [Δ_i] を 正規セル → 非零の有理係数 の辞書で持つ。係数 0 のセルと
退化したセルは構築時に落とす。演算はすべて新しい PolyChain を返す。
"""

from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence

from backend.grassmann import DimensionMismatchError, FloatMeasure
from backend.grassmann.linalg import as_fraction

from .simplex import Cell, Point, as_point, canonical_cell, cell_volume, cell_wedge, is_degenerate


class PolyChain:
    """有理係数の単体的 d チェイン

    Attributes:
        n: 周囲空間の次元
        d: 次数
        cells: 正規セル → 係数

    Examples:
        >>> T = PolyChain.from_simplices(2, 1, [([(0, 0), (1, 0)], 1)])
        >>> len(T.boundary())
        2
    """

    __slots__ = ("n", "d", "_cells")

    def __init__(self, n: int, d: int, cells: Mapping[Cell, Fraction] | None = None) -> None:
        if not 0 <= d <= n:
            raise DimensionMismatchError(f"chain grade d={d} outside [0, n={n}]")
        self.n = n
        self.d = d
        self._cells: dict[Cell, Fraction] = {
            cell: Fraction(coeff) for cell, coeff in (cells or {}).items() if coeff != 0
        }

    # --------------------------
    #  生成
    # --------------------------

    @classmethod
    def from_simplices(
        cls,
        n: int,
        d: int,
        simplices: Iterable[tuple[Sequence[Sequence[object]], object]],
        check: bool = True,
    ) -> "PolyChain":
        """(頂点列, 係数) の組から作る

        Args:
            n: 周囲次元
            d: 次数
            simplices: 頂点 d+1 個と係数の組
            check: True なら退化セルを検査して落とす (既知の非退化セルでは省略できる)

        Returns:
            PolyChain: 正規化されたチェイン
        """
        cells: dict[Cell, Fraction] = {}
        for vertices, coeff in simplices:
            points = [v if _is_point(v) else as_point(v) for v in vertices]
            if len(points) != d + 1 or any(len(p) != n for p in points):
                raise DimensionMismatchError(
                    f"simplex {vertices} is not a {d}-simplex in R^{n}"
                )
            _accumulate(cells, points, as_fraction(coeff), check)  # type: ignore[arg-type]
        return cls(n, d, cells)

    @classmethod
    def point(cls, location: Sequence[object], coeff: object = 1) -> "PolyChain":
        p = as_point(location)
        return cls(len(p), 0, {(p,): as_fraction(coeff)})

    @classmethod
    def zero(cls, n: int, d: int) -> "PolyChain":
        return cls(n, d)

    # --------------------------
    #  参照
    # --------------------------

    @property
    def cells(self) -> dict[Cell, Fraction]:
        return dict(self._cells)

    def items(self) -> list[tuple[Cell, Fraction]]:
        """決定的な順序 (セルの辞書式順) で返す"""
        return sorted(self._cells.items())

    def __iter__(self) -> Iterator[tuple[Cell, Fraction]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._cells)

    def is_empty(self) -> bool:
        return not self._cells

    def coefficient(self, cell: Cell) -> Fraction:
        return self._cells.get(cell, Fraction(0))

    def vertices(self) -> list[Point]:
        return sorted({v for cell in self._cells for v in cell})

    def bounding_box(self) -> tuple[Point, Point]:
        points = self.vertices()
        if not points:
            raise ValueError("empty chain has no bounding box")
        lo = tuple(min(p[k] for p in points) for k in range(self.n))
        hi = tuple(max(p[k] for p in points) for k in range(self.n))
        return lo, hi

    def __eq__(self, other: object) -> bool:
        """形式的な等号 (同じ三角形分割・同じ係数)。カレントとしての等号は currents_equal"""
        if not isinstance(other, PolyChain):
            return NotImplemented
        return (self.n, self.d, self._cells) == (other.n, other.d, other._cells)

    def __hash__(self) -> int:
        return hash((self.n, self.d, frozenset(self._cells.items())))

    def __repr__(self) -> str:
        return f"PolyChain(n={self.n}, d={self.d}, cells={len(self._cells)})"

    # --------------------------
    #  線形演算
    # --------------------------

    def _check(self, other: "PolyChain") -> None:
        if (self.n, self.d) != (other.n, other.d):
            raise DimensionMismatchError(
                f"chains of shape ({self.n},{self.d}) and ({other.n},{other.d})"
            )

    def __add__(self, other: "PolyChain") -> "PolyChain":
        self._check(other)
        cells = dict(self._cells)
        for cell, coeff in other._cells.items():
            cells[cell] = cells.get(cell, Fraction(0)) + coeff
        return PolyChain(self.n, self.d, cells)

    def __neg__(self) -> "PolyChain":
        return PolyChain(self.n, self.d, {c: -a for c, a in self._cells.items()})

    def __sub__(self, other: "PolyChain") -> "PolyChain":
        return self + (-other)

    def scaled(self, factor: object) -> "PolyChain":
        value = as_fraction(factor)
        return PolyChain(self.n, self.d, {c: a * value for c, a in self._cells.items()})

    def map_vertices(self, mapping: "object") -> "PolyChain":
        """頂点ごとの写像で押し出す (非退化な写像のみ。向きは頂点の順序が運ぶ)"""
        cells: dict[Cell, Fraction] = {}
        for cell, coeff in self._cells.items():
            image = [mapping(v) for v in cell]  # type: ignore[operator]
            _accumulate(cells, image, coeff, check=False)
        return PolyChain(self.n, self.d, cells)

    # --------------------------
    #  幾何量
    # --------------------------

    def boundary(self) -> "PolyChain":
        """交代和による境界 ∂T (d ≥ 1)"""
        if self.d == 0:
            raise DimensionMismatchError("boundary of a 0-chain is undefined")
        cells: dict[Cell, Fraction] = {}
        for cell, coeff in self._cells.items():
            for i in range(len(cell)):
                face = cell[:i] + cell[i + 1 :]
                value = coeff if i % 2 == 0 else -coeff
                cells[face] = cells.get(face, Fraction(0)) + value
        return PolyChain(self.n, self.d - 1, cells)

    def mass(self) -> float:
        """Σ |a_i|·vol_d(Δ_i)"""
        if self.d == 0:
            return float(sum(abs(a) for a in self._cells.values()))
        return sum(float(abs(a)) * cell_volume(cell) for cell, a in self.items())

    def gaussian_image(self) -> FloatMeasure:
        """重みつきガウス像 γ_T (浮動小数点形)

        セルごとに符号を合わせた辺の外積の原始整数類をキーとし、質量 |a|·vol を加える。
        """
        measure = FloatMeasure(self.n, self.d)
        for cell, coeff in self.items():
            wedge = cell_wedge(cell)
            if coeff < 0:
                wedge = -wedge
            length = wedge.norm()
            if length == 0.0:
                continue
            volume = length / factorial(self.d)
            measure.add(wedge.primitive_key(), wedge.unit(), float(abs(coeff)) * volume)
        return measure


def _is_point(value: object) -> bool:
    return isinstance(value, tuple) and all(isinstance(x, Fraction) for x in value)


def _accumulate(
    cells: dict[Cell, Fraction], vertices: Sequence[Point], coeff: Fraction, check: bool
) -> None:
    canonical = canonical_cell(vertices)
    if canonical is None:
        return
    cell, sign = canonical
    if check and len(cell) > 1 and is_degenerate(cell):
        return
    cells[cell] = cells.get(cell, Fraction(0)) + sign * coeff


def chain_from_cells(
    n: int, d: int, cells: Iterable[tuple[Sequence[Point], Fraction]], check: bool = True
) -> PolyChain:
    """既に Point 化された頂点列から作る (内部用の高速経路)"""
    merged: dict[Cell, Fraction] = {}
    for vertices, coeff in cells:
        _accumulate(merged, vertices, coeff, check)
    return PolyChain(n, d, merged)


def boundary(chain: PolyChain) -> PolyChain:
    return chain.boundary()


def mass(chain: PolyChain) -> float:
    return chain.mass()


def gaussian_image(chain: PolyChain) -> FloatMeasure:
    return chain.gaussian_image()
