"""有理傾きの向き付き平面 (RationalPlane)

平面 P は格子 P ∩ Z^n の向き付き基底、その外積 W_P (原始整数 d ベクトル)、
ker M = span(P) となる全射整数行列 M、単位 d ベクトル ω_P を持つ。
同一性は W_P で判定する (向きを区別する)。
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.domains import ZZ

from .dvector import DVector, multi_indices, wedge_of_columns
from .exceptions import DimensionMismatchError, NotSimpleError, RankDeficientError
from .linalg import (
    IntVector,
    as_fraction,
    column_hermite,
    integer_kernel,
    integer_multiple,
    nullspace,
    rank,
)


@dataclass(frozen=True, eq=False)
class RationalPlane:
    """有理傾きの向き付き d 平面

    Attributes:
        n: 周囲空間の次元
        d: 平面の次元
        basis: 格子 P ∩ Z^n の向き付き基底 (整数列ベクトル d 本)
        W: 基底の外積 (原始整数 d ベクトル、厳密)
        kernel: ker = span(P) となる全射整数行列 (n−d 行)
        omega: W/|W| (浮動小数点 d ベクトル)

    Examples:
        >>> plane = plane_from_basis([[1], [1]])
        >>> plane.key
        (1, 1)
    """

    n: int
    d: int
    basis: tuple[IntVector, ...]
    W: DVector
    kernel: tuple[IntVector, ...]
    omega: DVector

    @property
    def key(self) -> tuple[int, ...]:
        """向き付きの厳密キー (W の整数座標)"""
        return tuple(int(c) for c in self.W.coords)

    @property
    def unoriented_key(self) -> tuple[int, ...]:
        return self.W.unoriented_key()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalPlane):
            return NotImplemented
        return (self.n, self.d, self.key) == (other.n, other.d, other.key)

    def __hash__(self) -> int:
        return hash((self.n, self.d, self.key))

    def __repr__(self) -> str:
        return f"RationalPlane(n={self.n}, d={self.d}, W={self.key})"

    def reversed(self) -> "RationalPlane":
        """向きを反転した平面 (基底の最後の列を反転)"""
        columns = list(self.basis)
        columns[-1] = tuple(-x for x in columns[-1])
        return _plane_from_integer_columns(tuple(columns))

    def kernel_image(self, point: Sequence[object]) -> tuple[Fraction, ...]:
        """M·x (平面族の添字付けに使う)"""
        vector = [as_fraction(x) for x in point]
        return tuple(
            sum((Fraction(m) * x for m, x in zip(row, vector)), Fraction(0))
            for row in self.kernel
        )

    def contains_direction(self, vector: Sequence[object]) -> bool:
        return all(v == 0 for v in self.kernel_image(vector))


def _kernel_is_surjective(kernel: Sequence[IntVector], n: int) -> bool:
    """スミス標準形の不変因子がすべて 1 なら全射"""
    if not kernel:
        return True
    snf = smith_normal_form(Matrix([list(row) for row in kernel]), domain=ZZ)
    return all(abs(snf[i, i]) == 1 for i in range(len(kernel)))


@lru_cache(maxsize=4096)
def _plane_from_integer_columns(columns: tuple[IntVector, ...]) -> RationalPlane:
    n = len(columns[0])
    d = len(columns)
    source_wedge = wedge_of_columns(columns)
    if source_wedge.is_zero():
        raise RankDeficientError(f"basis {columns} does not span a {d}-plane")

    if d < n:
        kernel_rows = integer_kernel(list(columns))
        kernel = tuple(column_hermite(kernel_rows))
        lattice = integer_kernel(list(kernel))
        basis = column_hermite(lattice)
    else:
        kernel = ()
        basis = [tuple(int(i == j) for i in range(n)) for j in range(n)]

    wedge = wedge_of_columns(basis)
    ratio = wedge.ratio_to(source_wedge)
    if ratio is None:
        raise NotSimpleError(f"lattice basis of {columns} is not parallel to the input")
    if ratio < 0:
        basis[-1] = tuple(-x for x in basis[-1])
        wedge = -wedge
    if not _kernel_is_surjective(kernel, n):
        raise RankDeficientError(f"kernel matrix {kernel} is not surjective")
    return RationalPlane(
        n=n,
        d=d,
        basis=tuple(tuple(col) for col in basis),
        W=wedge,
        kernel=kernel,
        omega=wedge.unit(),
    )


def plane_from_columns(columns: Sequence[Sequence[object]]) -> RationalPlane:
    """列ベクトル (有理数) から RationalPlane を作る

    各列を正の有理数倍して整数化してから格子基底を求める (向きは変わらない)。

    Args:
        columns: d 本の列ベクトル

    Returns:
        RationalPlane: 入力と同じ向きの平面

    Raises:
        RankDeficientError: 列が d 次元を張らない場合
        DimensionMismatchError: 列の長さが揃わない場合
    """
    if not columns:
        raise DimensionMismatchError("at least one basis column is required")
    size = len(columns[0])
    if any(len(col) != size for col in columns):
        raise DimensionMismatchError("basis columns of different lengths")
    if len(columns) > size:
        raise RankDeficientError(f"{len(columns)} columns cannot be independent in R^{size}")
    exact = [tuple(as_fraction(x) for x in col) for col in columns]
    if rank(exact) < len(exact):
        raise RankDeficientError(f"basis {columns} is rank deficient")
    integral = tuple(integer_multiple(col) for col in exact)
    return _plane_from_integer_columns(integral)


def plane_from_basis(matrix: Sequence[Sequence[object]]) -> RationalPlane:
    """n×d 行列 B (行のシーケンス) の列が張る平面

    Examples:
        >>> plane_from_basis([[2], [2]]).key
        (1, 1)
        >>> plane_from_basis([[-1], [-1]]).key
        (-1, -1)
    """
    if not matrix:
        raise DimensionMismatchError("empty basis matrix")
    columns = [tuple(row[j] for row in matrix) for j in range(len(matrix[0]))]
    return plane_from_columns(columns)


def _wedge_with_vector_matrix(w: DVector) -> list[list[Fraction]]:
    """x ↦ x ∧ W を表す C(n, d+1)×n 行列"""
    n, d = w.n, w.d
    rows: list[list[Fraction]] = []
    for target in combinations(range(n), d + 1):
        row = [Fraction(0)] * n
        for position, k in enumerate(target):
            rest = target[:position] + target[position + 1 :]
            row[k] += (-1) ** position * Fraction(w[rest])  # type: ignore[arg-type]
        rows.append(row)
    return rows


def plane_from_dvector(w: DVector) -> RationalPlane:
    """単純な有理 d ベクトルが表す向き付き平面

    Args:
        w: 非零の厳密 d ベクトル

    Returns:
        RationalPlane: W_P が w の正の倍数となる平面

    Raises:
        NotSimpleError: w が分解可能でない場合
    """
    if not w.exact:
        raise NotSimpleError("plane_from_dvector needs an exact d-vector")
    if w.is_zero():
        raise RankDeficientError("zero d-vector has no plane")
    if w.d == w.n:
        columns = [tuple(int(i == j) for i in range(w.n)) for j in range(w.n)]
        plane = plane_from_columns(columns)
    else:
        basis = nullspace(_wedge_with_vector_matrix(w), ncols=w.n)
        if len(basis) != w.d:
            raise NotSimpleError(f"d-vector {w.as_dict()} is not simple")
        plane = plane_from_columns(basis)
    ratio = plane.W.ratio_to(w)
    if ratio is None:
        raise NotSimpleError(f"d-vector {w.as_dict()} is not simple")
    return plane if ratio > 0 else plane.reversed()


def coordinate_plane(n: int, d: int, sign: int = 1) -> RationalPlane:
    """座標平面 span(e_1, …, e_d) (sign=-1 で逆向き)"""
    columns = [tuple(int(i == j) for i in range(n)) for j in range(d)]
    plane = plane_from_columns(columns)
    return plane if sign > 0 else plane.reversed()


def is_positively_oriented(plane: RationalPlane, reference: RationalPlane) -> bool:
    """P が P0 に関して正の向きか

    直交射影 P → P0 の行列式は ⟨ω_P, ω_P0⟩ に等しいので、W_P·W_P0 > 0 で判定する。
    P0 が座標平面なら W_P の e_{1…d} 座標の符号と同じ。
    """
    if (plane.n, plane.d) != (reference.n, reference.d):
        raise DimensionMismatchError(
            f"planes of shape ({plane.n},{plane.d}) and ({reference.n},{reference.d})"
        )
    return plane.W.dot(reference.W) > 0  # type: ignore[operator]


def head_index(d: int) -> tuple[int, ...]:
    """座標平面 P0 に対応する多重添字 (0, …, d−1)"""
    return tuple(range(d))


__all__ = [
    "RationalPlane",
    "plane_from_basis",
    "plane_from_columns",
    "plane_from_dvector",
    "coordinate_plane",
    "is_positively_oriented",
    "head_index",
    "multi_indices",
]
