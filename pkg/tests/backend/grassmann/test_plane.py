"""backend.grassmann.plane のテスト"""

import random
from fractions import Fraction
from math import gcd

import pytest
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.domains import ZZ

from backend.grassmann import (
    DVector,
    NotSimpleError,
    RankDeficientError,
    coordinate_plane,
    is_positively_oriented,
    plane_from_basis,
    plane_from_columns,
    plane_from_dvector,
    wedge_of_columns,
)
from backend.grassmann.linalg import determinant


def _random_columns(rng: random.Random, n: int, d: int) -> list[tuple[int, ...]]:
    while True:
        columns = [tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(d)]
        if not wedge_of_columns(columns).is_zero():
            return columns


class TestRationalPlane:
    """RationalPlaneの生成のテスト"""

    def test_primitive_class_vector(self):
        """W_P が原始整数ベクトルになるか"""
        assert plane_from_columns([(2, 2)]).key == (1, 1)
        assert plane_from_columns([("1/3", "-1/3")]).key == (1, -1)

    def test_orientation_is_kept(self):
        """基底の向きが保たれるか"""
        assert plane_from_columns([(-2, 0)]).key == (-1, 0)
        assert coordinate_plane(2, 1, sign=-1).key == (-1, 0)

    def test_reversed(self):
        """reversed で W が反転するか"""
        plane = plane_from_columns([(1, 0, 2), (0, 1, 3)])
        assert plane.reversed().key == tuple(-k for k in plane.key)

    def test_equality_by_class_vector(self):
        """同じ平面は基底によらず等しいか"""
        a = plane_from_columns([(1, 0, 2), (0, 1, 3)])
        b = plane_from_columns([(1, 1, 5), (0, 1, 3)])
        assert a == b
        assert hash(a) == hash(b)

    def test_kernel_annihilates_plane(self):
        """核行列が平面の方向を消すか"""
        plane = plane_from_columns([(1, 1)])
        assert plane.kernel_image((3, 3)) == (0,)
        assert plane.contains_direction((1, 1))
        assert not plane.contains_direction((1, 0))

    def test_rank_deficient_basis_raises(self):
        """一次従属な基底でエラーになるか"""
        with pytest.raises(RankDeficientError):
            plane_from_columns([(1, 2, 3), (2, 4, 6)])

    def test_non_simple_dvector_raises(self):
        """分解できない 2 ベクトル e12 + e34 でエラーになるか"""
        w = DVector.from_coords([1, 0, 0, 0, 0, 1], 4, 2)
        with pytest.raises(NotSimpleError):
            plane_from_dvector(w)

    def test_plane_from_dvector_roundtrip(self):
        """単純 d ベクトルから同じ向きの平面に戻るか"""
        w = wedge_of_columns([(1, 0, 2), (0, 1, 3)])
        assert plane_from_dvector(w).key == (1, 3, -2)
        assert plane_from_dvector(-w).key == (-1, -3, 2)

    def test_positive_orientation(self):
        """P0 に関する正の向きの判定"""
        reference = coordinate_plane(2, 1)
        assert is_positively_oriented(plane_from_columns([(1, 1)]), reference)
        assert is_positively_oriented(plane_from_columns([(1, -1)]), reference)
        assert not is_positively_oriented(plane_from_columns([(-1, 1)]), reference)
        assert not is_positively_oriented(plane_from_columns([(0, 1)]), reference)


class TestRandomPlanes:
    """乱数で生成した平面の性質のテスト"""

    @pytest.mark.parametrize("n,d", [(2, 1), (3, 1), (3, 2), (4, 2)])
    def test_class_vector_and_kernel(self, n, d):
        """W_P が入力の外積の正の倍数で原始的、核行列が全射か"""
        rng = random.Random(20240 + 10 * n + d)
        for _ in range(20):
            columns = _random_columns(rng, n, d)
            plane = plane_from_columns(columns)
            assert plane.W.ratio_to(wedge_of_columns(columns)) > 0
            g = 0
            for value in plane.key:
                g = gcd(g, value)
            assert g == 1
            for column in plane.basis:
                assert plane.contains_direction(column)
            assert len(plane.kernel) == n - d
            snf = smith_normal_form(Matrix([list(row) for row in plane.kernel]), domain=ZZ)
            assert all(abs(snf[i, i]) == 1 for i in range(n - d))

    def test_lattice_basis_is_unimodular(self):
        """格子基底の外積が W_P そのものになるか"""
        rng = random.Random(7)
        for _ in range(20):
            plane = plane_from_columns(_random_columns(rng, 3, 2))
            assert wedge_of_columns(plane.basis) == plane.W


def _random_unimodular(rng: random.Random, d: int) -> list[list[int]]:
    """基本行列の積で作る行列式 1 の整数行列"""
    matrix = [[int(i == j) for j in range(d)] for i in range(d)]
    for _ in range(4):
        i, j = rng.sample(range(d), 2)
        k = rng.randint(-3, 3)
        for row in matrix:
            row[j] += k * row[i]
    return matrix


def _times(columns: list[tuple[int, ...]], matrix: list[list[int]]) -> list[tuple[int, ...]]:
    """列ベクトルの並び B と d×d 行列 U から B·U の列を作る"""
    n, d = len(columns[0]), len(columns)
    return [
        tuple(sum(columns[k][i] * matrix[k][j] for k in range(d)) for i in range(n))
        for j in range(d)
    ]


class TestChangeOfBasis:
    """基底の取り替えに対する振る舞いのテスト"""

    @pytest.mark.parametrize("n,d", [(3, 2), (4, 2), (4, 3)])
    def test_wedge_scales_by_determinant(self, n, d):
        """wedge(B·U) = det(U)·wedge(B) か"""
        rng = random.Random(31 * n + d)
        for _ in range(50):
            columns = _random_columns(rng, n, d)
            matrix = [[rng.randint(-3, 3) for _ in range(d)] for _ in range(d)]
            factor = determinant([[Fraction(x) for x in row] for row in matrix])
            assert wedge_of_columns(_times(columns, matrix)) == wedge_of_columns(columns).scaled(factor)

    @pytest.mark.parametrize("n,d", [(3, 2), (4, 2), (4, 3)])
    def test_plane_from_basis_ignores_unimodular_change(self, n, d):
        """行列式 1 の整数行列で基底を取り替えても同じ平面になるか"""
        rng = random.Random(97 * n + d)
        for _ in range(50):
            columns = _random_columns(rng, n, d)
            changed = _times(columns, _random_unimodular(rng, d))
            rows = [[col[i] for col in changed] for i in range(n)]
            original = [[col[i] for col in columns] for i in range(n)]
            assert plane_from_basis(rows).key == plane_from_basis(original).key

    def test_orientation_reversing_change(self):
        """行列式 −1 の取り替えで向きが反転するか"""
        columns = [(1, 0, 2), (0, 1, 3)]
        swapped = _times(columns, [[0, 1], [1, 0]])
        assert plane_from_columns(swapped).key == plane_from_columns(columns).reversed().key
