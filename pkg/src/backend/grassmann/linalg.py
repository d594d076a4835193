"""有理数・整数上の厳密線形代数

責務:
- Fraction と sympy の DomainMatrix (QQ / ZZ) の相互変換
- 行列式・階数・連立方程式・零空間 (QQ 上の DomainMatrix)
- 整数核 (Z 上の基底) と列型エルミート標準形 (ZZ 上の hermite_normal_form)

行列は行のタプル (row-major) で表す。
"""

from fractions import Fraction
from math import gcd, lcm
from typing import Any, Iterable, Sequence

from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form

from .exceptions import DimensionMismatchError, ExactFloatMixError

Vector = tuple[Fraction, ...]
Matrix = tuple[tuple[Fraction, ...], ...]
IntVector = tuple[int, ...]


def as_fraction(value: object) -> Fraction:
    """厳密な有理数に変換する

    Args:
        value: int, Fraction, または "p/q" 形式の文字列

    Returns:
        Fraction: 変換結果

    Raises:
        ExactFloatMixError: float が渡された場合 (暗黙の丸めを禁止)
        ValueError: 文字列が有理数として解釈できない場合
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a rational number")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise ExactFloatMixError(
            f"float {value!r} passed where an exact rational is required"
        )
    raise TypeError(f"Cannot convert {type(value).__name__} to Fraction")


def as_vector(values: Iterable[object]) -> Vector:
    return tuple(as_fraction(v) for v in values)


def as_matrix(rows: Iterable[Iterable[object]]) -> Matrix:
    """行のイテラブルから厳密行列を作る (各行の長さを検査)"""
    matrix = tuple(as_vector(row) for row in rows)
    if matrix and any(len(row) != len(matrix[0]) for row in matrix):
        raise DimensionMismatchError("Ragged matrix rows")
    return matrix


# --------------------------
#  DomainMatrix との変換
# --------------------------


def _qq_matrix(rows: Sequence[Sequence[object]], ncols: int) -> DomainMatrix:
    data = []
    for row in rows:
        if len(row) != ncols:
            raise DimensionMismatchError(f"row of length {len(row)}, expected {ncols}")
        values = (as_fraction(x) for x in row)
        data.append([QQ(v.numerator, v.denominator) for v in values])
    return DomainMatrix(data, (len(data), ncols), QQ)


def _zz_matrix(rows: Sequence[Sequence[int]], ncols: int) -> DomainMatrix:
    data = [[ZZ(int(x)) for x in row] for row in rows]
    if any(len(row) != ncols for row in data):
        raise DimensionMismatchError("Ragged integer matrix rows")
    return DomainMatrix(data, (len(data), ncols), ZZ)


def _from_qq(value: Any) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def _qq_rows(matrix: DomainMatrix) -> list[Vector]:
    return [tuple(_from_qq(x) for x in row) for row in matrix.to_list()]


def _zz_columns(matrix: DomainMatrix) -> list[IntVector]:
    rows = [[int(x) for x in row] for row in matrix.to_list()]
    ncols = matrix.shape[1]
    return [tuple(row[j] for row in rows) for j in range(ncols)]


# --------------------------
#  有理数上の線形代数
# --------------------------


def determinant(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """正方行列の行列式 (2 次以下は直接展開)"""
    size = len(matrix)
    if size == 0:
        return Fraction(1)
    if size == 1:
        return as_fraction(matrix[0][0])
    if size == 2:
        (a, b), (c, d) = matrix
        return as_fraction(a) * as_fraction(d) - as_fraction(b) * as_fraction(c)
    return _from_qq(_qq_matrix(matrix, size).det())


def rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    if not matrix:
        return 0
    return int(_qq_matrix(matrix, len(matrix[0])).rank())


def nullspace(matrix: Sequence[Sequence[Fraction]], ncols: int | None = None) -> list[Vector]:
    """有理数上の零空間の基底 (自由変数ごとに 1 本)"""
    if not matrix:
        size = ncols or 0
        return [tuple(Fraction(int(i == j)) for i in range(size)) for j in range(size)]
    size = len(matrix[0])
    domain_matrix = _qq_matrix(matrix, size)
    if domain_matrix.rank() == size:
        return []
    return _qq_rows(domain_matrix.nullspace(divide_last=False))


def solve(
    matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> Vector | None:
    """A x = b の解を1つ返す (解なしなら None)。A は一般の長方行列でよい。"""
    if not matrix:
        return ()
    cols = len(matrix[0])
    augmented = [list(row) + [b] for row, b in zip(matrix, rhs)]
    reduced, pivots = _qq_matrix(augmented, cols + 1).rref()
    if cols in pivots:
        return None
    rows = _qq_rows(reduced)
    solution = [Fraction(0)] * cols
    for row_index, p in enumerate(pivots):
        solution[p] = rows[row_index][cols]
    return tuple(solution)


def lcm_of_denominators(values: Iterable[Fraction]) -> int:
    return lcm(1, *(Fraction(v).denominator for v in values))


def integer_multiple(vector: Sequence[Fraction]) -> IntVector:
    """正のスカラー倍で整数化し、さらに gcd で割った原始整数ベクトル (零ベクトルはそのまま)"""
    scale = lcm_of_denominators(vector)
    ints = [int(Fraction(v) * scale) for v in vector]
    g = gcd(*ints)
    if g == 0:
        return tuple(ints)
    return tuple(v // g for v in ints)


# --------------------------
#  整数格子
# --------------------------


def integer_kernel(matrix: Sequence[Sequence[int]]) -> list[IntVector]:
    """整数行列の整数核の Z 基底

    格子 {(x, M·x) : x ∈ Z^n} のエルミート標準形を取ると、M 成分が 0 の列が
    核格子の基底になる。

    Args:
        matrix: m×n 整数行列 (行のシーケンス)

    Returns:
        list[IntVector]: 核格子の基底ベクトル (n - rank 本)
    """
    if not matrix:
        raise DimensionMismatchError("integer_kernel needs at least one row")
    ncols = len(matrix[0])
    identity = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    stacked = _zz_matrix(identity + [list(row) for row in matrix], ncols)
    columns = _zz_columns(hermite_normal_form(stacked))
    return [col[:ncols] for col in columns if not any(col[ncols:])]


def column_hermite(columns: Sequence[Sequence[int]]) -> list[IntVector]:
    """格子基底 (列) の列型エルミート標準形

    ピボット行は左の列ほど上にあり、ピボットは正、ピボットより左の同じ行の成分は
    [0, pivot) に入る。同じ格子を張る基底からは同じ結果が得られる。
    sympy の標準形 (下の行から処理し、ピボットを右に寄せる) を上下・左右に反転して得る。

    Args:
        columns: 整数列ベクトル

    Returns:
        list[IntVector]: 標準形の列 (格子の階数だけ)
    """
    if not columns:
        return []
    nrows = len(columns[0])
    flipped = [[int(col[nrows - 1 - i]) for col in columns] for i in range(nrows)]
    hermite = _zz_columns(hermite_normal_form(_zz_matrix(flipped, len(columns))))
    return [tuple(reversed(col)) for col in reversed(hermite)]
