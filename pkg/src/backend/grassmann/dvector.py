"""外積代数 ∧^d R^n の元 (d ベクトル)

座標は昇順多重添字 (i1 < … < id) を combinations(range(n), d) の順に並べたタプルで持つ。
厳密版 (Fraction) と浮動小数点版 (float) があり、変換は to_float() で明示的に行う。
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, sqrt
from typing import Iterator, Sequence

import numpy as np

from .exceptions import DimensionMismatchError, ExactFloatMixError
from .linalg import as_fraction, determinant, integer_multiple

MultiIndex = tuple[int, ...]


@lru_cache(maxsize=None)
def multi_indices(n: int, d: int) -> tuple[MultiIndex, ...]:
    """(n, d) の昇順多重添字の一覧"""
    return tuple(combinations(range(n), d))


@lru_cache(maxsize=None)
def _index_lookup(n: int, d: int) -> dict[MultiIndex, int]:
    return {index: k for k, index in enumerate(multi_indices(n, d))}


@dataclass(frozen=True)
class DVector:
    """d ベクトル

    Attributes:
        n: 周囲空間の次元
        d: 次数
        coords: multi_indices(n, d) の順の座標 (C(n, d) 個)
        exact: True なら Fraction、False なら float

    Examples:
        >>> w = DVector.exact_from({(0,): 1, (1,): 1}, n=2, d=1)
        >>> w.norm()
        1.4142135623730951
    """

    n: int
    d: int
    coords: tuple
    exact: bool = True

    def __post_init__(self) -> None:
        if not 0 <= self.d <= self.n:
            raise DimensionMismatchError(f"grade d={self.d} outside [0, n={self.n}]")
        if len(self.coords) != comb(self.n, self.d):
            raise DimensionMismatchError(
                f"DVector({self.n},{self.d}) needs {comb(self.n, self.d)} coords, "
                f"got {len(self.coords)}"
            )
        expected = Fraction if self.exact else float
        for value in self.coords:
            if not isinstance(value, expected):
                raise ExactFloatMixError(
                    f"{'exact' if self.exact else 'float'} DVector got "
                    f"{type(value).__name__} coordinate"
                )

    # --------------------------
    #  生成
    # --------------------------

    @classmethod
    def zero(cls, n: int, d: int, exact: bool = True) -> "DVector":
        fill = Fraction(0) if exact else 0.0
        return cls(n, d, tuple(fill for _ in range(comb(n, d))), exact)

    @classmethod
    def exact_from(
        cls, entries: dict[MultiIndex, object], n: int, d: int
    ) -> "DVector":
        """多重添字 → 値 の辞書から厳密 d ベクトルを作る (未指定は 0)"""
        lookup = _index_lookup(n, d)
        coords = [Fraction(0)] * comb(n, d)
        for index, value in entries.items():
            key = tuple(index)
            if key not in lookup:
                raise DimensionMismatchError(f"multi-index {key} invalid for ({n},{d})")
            coords[lookup[key]] = as_fraction(value)
        return cls(n, d, tuple(coords), True)

    @classmethod
    def from_coords(cls, coords: Sequence[object], n: int, d: int) -> "DVector":
        return cls(n, d, tuple(as_fraction(c) for c in coords), True)

    @classmethod
    def float_from(cls, coords: Sequence[float], n: int, d: int) -> "DVector":
        return cls(n, d, tuple(float(c) for c in coords), False)

    @classmethod
    def coordinate(cls, index: MultiIndex, n: int, sign: int = 1) -> "DVector":
        """座標 d ベクトル ±e_I"""
        return cls.exact_from({tuple(index): sign}, n=n, d=len(index))

    # --------------------------
    #  演算
    # --------------------------

    def _check_compatible(self, other: "DVector") -> None:
        if (self.n, self.d) != (other.n, other.d):
            raise DimensionMismatchError(
                f"DVector({self.n},{self.d}) vs DVector({other.n},{other.d})"
            )
        if self.exact != other.exact:
            raise ExactFloatMixError("exact and float DVectors cannot be combined")

    def __add__(self, other: "DVector") -> "DVector":
        self._check_compatible(other)
        return DVector(
            self.n, self.d, tuple(a + b for a, b in zip(self.coords, other.coords)), self.exact
        )

    def __sub__(self, other: "DVector") -> "DVector":
        self._check_compatible(other)
        return DVector(
            self.n, self.d, tuple(a - b for a, b in zip(self.coords, other.coords)), self.exact
        )

    def __neg__(self) -> "DVector":
        return DVector(self.n, self.d, tuple(-a for a in self.coords), self.exact)

    def scaled(self, factor: object) -> "DVector":
        """スカラー倍 (厳密版には厳密なスカラーのみ)"""
        if self.exact:
            value = as_fraction(factor)
        else:
            value = float(factor)  # type: ignore[arg-type]
        return DVector(self.n, self.d, tuple(a * value for a in self.coords), self.exact)

    def dot(self, other: "DVector") -> object:
        self._check_compatible(other)
        return sum((a * b for a, b in zip(self.coords, other.coords)), self.coords[0] * 0)

    def norm(self) -> float:
        return sqrt(float(sum(a * a for a in self.coords)))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def __getitem__(self, index: MultiIndex) -> object:
        return self.coords[_index_lookup(self.n, self.d)[tuple(index)]]

    def items(self) -> Iterator[tuple[MultiIndex, object]]:
        return zip(multi_indices(self.n, self.d), self.coords)

    def as_dict(self) -> dict[MultiIndex, object]:
        """非零座標のみの辞書"""
        return {index: value for index, value in self.items() if value != 0}

    # --------------------------
    #  変換
    # --------------------------

    def to_float(self) -> "DVector":
        if not self.exact:
            return self
        return DVector(self.n, self.d, tuple(float(a) for a in self.coords), False)

    def unit(self) -> "DVector":
        """単位化した浮動小数点 d ベクトル"""
        length = self.norm()
        if length == 0.0:
            raise DimensionMismatchError("cannot normalize the zero d-vector")
        return DVector(
            self.n, self.d, tuple(float(a) / length for a in self.coords), False
        )

    def primitive_key(self) -> tuple[int, ...]:
        """正のスカラー倍で整数化し gcd で割った原始整数座標 (向きを保つ)"""
        if not self.exact:
            raise ExactFloatMixError("primitive_key needs an exact DVector")
        return integer_multiple(self.coords)

    def primitive(self) -> "DVector":
        return DVector.from_coords(self.primitive_key(), self.n, self.d)

    def unoriented_key(self) -> tuple[int, ...]:
        """最初の非零成分が正になるよう符号を揃えた原始整数座標"""
        key = self.primitive_key()
        for value in key:
            if value != 0:
                return key if value > 0 else tuple(-v for v in key)
        return key

    def ratio_to(self, other: "DVector") -> Fraction | None:
        """self = λ·other となる λ を返す (平行でなければ None)"""
        self._check_compatible(other)
        ratio: Fraction | None = None
        for a, b in zip(self.coords, other.coords):
            if b == 0:
                if a != 0:
                    return None
                continue
            current = Fraction(a) / Fraction(b)
            if ratio is None:
                ratio = current
            elif ratio != current:
                return None
        return ratio


def wedge_of_columns(columns: Sequence[Sequence[object]], n: int | None = None) -> DVector:
    """列ベクトル w1, …, wd の外積 w1∧…∧wd

    座標 I は行 I からなる d×d 小行列式に等しい。

    Args:
        columns: d 本の列ベクトル (各々長さ n)
        n: 列が 0 本のときの周囲次元

    Returns:
        DVector: 厳密 d ベクトル

    Raises:
        DimensionMismatchError: 列の長さが揃わない、または d > n

    Examples:
        >>> wedge_of_columns([(1, 0, 2), (0, 1, 3)]).as_dict()
        {(0, 1): Fraction(1, 1), (0, 2): Fraction(3, 1), (1, 2): Fraction(-2, 1)}
    """
    cols = [tuple(as_fraction(x) for x in col) for col in columns]
    if not cols:
        if n is None:
            raise DimensionMismatchError("ambient dimension needed for the empty wedge")
        return DVector(n, 0, (Fraction(1),), True)
    size = len(cols[0])
    if any(len(col) != size for col in cols):
        raise DimensionMismatchError("columns of different lengths")
    if n is not None and n != size:
        raise DimensionMismatchError(f"columns have length {size}, expected {n}")
    d = len(cols)
    if d > size:
        raise DimensionMismatchError(f"{d} columns in R^{size}")
    if d == 1:
        return DVector(size, 1, cols[0], True)
    coords = []
    for index in multi_indices(size, d):
        coords.append(determinant([[col[i] for col in cols] for i in index]))
    return DVector(size, d, tuple(coords), True)


def minors_map(x_matrix: Sequence[Sequence[object]], d: int | None = None) -> DVector:
    """∧M(X): [I_d; X] の列の外積

    座標 (1, …, d) は常に 1 で、その他の座標は X の各次数の小行列式 (符号つき)。

    Args:
        x_matrix: (n−d)×d 行列 X (行のシーケンス)。n−d = 0 のときは空
        d: X が空のときの次数

    Returns:
        DVector: 厳密 d ベクトル

    Examples:
        >>> minors_map([[Fraction(1, 2)]]).as_dict()
        {(0,): Fraction(1, 1), (1,): Fraction(1, 2)}
    """
    rows = [tuple(as_fraction(v) for v in row) for row in x_matrix]
    if rows:
        d = len(rows[0])
    elif d is None:
        raise DimensionMismatchError("grade d is required when X is empty")
    identity = [tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)]
    stacked = identity + rows
    columns = [tuple(row[j] for row in stacked) for j in range(d)]
    return wedge_of_columns(columns, n=len(stacked))


def float_wedge(columns: Sequence[Sequence[float]]) -> DVector:
    """浮動小数点の列ベクトルの外積 (numpy で小行列式を計算)"""

    array = np.asarray(columns, dtype=float).T
    n, d = array.shape
    coords = tuple(
        float(np.linalg.det(array[list(index), :])) if d > 0 else 1.0
        for index in multi_indices(n, d)
    )
    return DVector(n, d, coords, False)
