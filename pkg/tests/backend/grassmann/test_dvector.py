"""backend.grassmann.dvector のテスト"""

from fractions import Fraction

import pytest

from backend.grassmann import (
    DVector,
    ExactFloatMixError,
    DimensionMismatchError,
    minors_map,
    multi_indices,
    wedge_of_columns,
)
from backend.grassmann.linalg import as_fraction


class TestDVector:
    """DVectorの基本演算のテスト"""

    def test_multi_indices_order(self):
        """多重添字が辞書式順に並ぶか"""
        assert multi_indices(3, 2) == ((0, 1), (0, 2), (1, 2))

    def test_wedge_of_columns_minors(self):
        """外積の座標が 2×2 小行列式になるか"""
        w = wedge_of_columns([(1, 0, 2), (0, 1, 3)])
        assert w.as_dict() == {(0, 1): 1, (0, 2): 3, (1, 2): -2}

    def test_wedge_is_alternating(self):
        """列を入れ替えると符号が反転するか"""
        a = wedge_of_columns([(1, 2, 0), (0, 1, 5)])
        b = wedge_of_columns([(0, 1, 5), (1, 2, 0)])
        assert a == -b

    def test_minors_map_head_coordinate(self):
        """∧M(X) の (0,…,d−1) 座標が 1 になるか"""
        w = minors_map([[Fraction(1, 2), 3], [0, Fraction(-1, 3)]])
        assert w[(0, 1)] == 1
        assert w.n == 4 and w.d == 2

    def test_minors_map_one_by_one(self):
        """1×1 の X で (1, x) になるか"""
        assert minors_map([[Fraction(1, 2)]]).coords == (Fraction(1), Fraction(1, 2))

    def test_norm_and_unit(self):
        """ノルムと単位化"""
        w = DVector.from_coords([3, 4], 2, 1)
        assert w.norm() == pytest.approx(5.0)
        assert w.unit().coords == pytest.approx((0.6, 0.8))
        assert w.unit().exact is False

    def test_primitive_key_keeps_orientation(self):
        """原始整数化で向きが保たれるか"""
        w = DVector.from_coords(["-2/3", "4/3"], 2, 1)
        assert w.primitive_key() == (-1, 2)
        assert w.unoriented_key() == (1, -2)

    def test_ratio_to(self):
        """平行な d ベクトルの比"""
        a = DVector.from_coords([2, -4], 2, 1)
        b = DVector.from_coords([-1, 2], 2, 1)
        assert a.ratio_to(b) == -2
        assert a.ratio_to(DVector.from_coords([1, 1], 2, 1)) is None

    def test_zero_vector_cannot_be_normalized(self):
        """零ベクトルの単位化でエラーになるか"""
        with pytest.raises(DimensionMismatchError):
            DVector.zero(3, 1).unit()


class TestExactFloatSeparation:
    """厳密版と浮動小数点版の分離のテスト"""

    def test_float_rejected_by_as_fraction(self):
        """float を厳密な値に暗黙変換しないか"""
        with pytest.raises(ExactFloatMixError):
            as_fraction(0.5)

    def test_string_rational_accepted(self):
        """"p/q" 文字列が有理数になるか"""
        assert as_fraction("3/6") == Fraction(1, 2)

    def test_mixed_addition_raises(self):
        """厳密版と浮動小数点版を足すとエラーになるか"""
        exact = DVector.from_coords([1, 0], 2, 1)
        with pytest.raises(ExactFloatMixError):
            exact + exact.to_float()

    def test_wrong_coordinate_count_raises(self):
        """座標数が C(n,d) と違うとエラーになるか"""
        with pytest.raises(DimensionMismatchError):
            DVector(3, 2, (Fraction(1), Fraction(0)))
