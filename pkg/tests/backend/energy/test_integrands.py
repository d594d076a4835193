"""backend.energy.integrands のテスト"""

from math import cos, radians, sin

import numpy as np
import pytest

from backend.energy import Integrand, IntegrandError, MatrixIntegrand, NonGraphCellError
from backend.grassmann import coordinate_plane, plane_from_columns


class TestIntegrand:
    """Integrandのテスト"""

    def test_area_is_one(self):
        """面積被積分関数がどこでも 1 か"""
        psi = Integrand.area(3, 2)
        assert psi((0.0, 1.0, 0.0)) == 1.0

    def test_sin2theta_values(self, sin2theta):
        """0°で 1、45°で 0.6 になるか"""
        assert sin2theta((1.0, 0.0)) == pytest.approx(1.0)
        assert sin2theta((1.0, 1.0)) == pytest.approx(0.6)
        assert sin2theta(plane_from_columns([(1, -1)])) == pytest.approx(0.6)

    def test_sin2theta_amplitude_range(self):
        """振幅 1 でエラーになるか"""
        with pytest.raises(IntegrandError):
            Integrand.sin2theta(1.0)

    def test_argument_is_normalized(self, sin2theta):
        """長さの違う d ベクトルで同じ値になるか"""
        assert sin2theta((3.0, 3.0)) == pytest.approx(sin2theta((1.0, 1.0)))

    def test_zero_vector_raises(self, sin2theta):
        """0 ベクトルでエラーになるか"""
        with pytest.raises(IntegrandError):
            sin2theta((0.0, 0.0))

    def test_wrong_coordinate_count_raises(self, sin2theta):
        """座標の個数が合わない場合にエラーになるか"""
        with pytest.raises(IntegrandError):
            sin2theta((1.0, 0.0, 0.0))

    def test_norm_ellipse(self):
        """‖A ω‖ の値"""
        psi = Integrand.norm_ellipse([[1.0, 0.0], [0.0, 2.0]], 2, 1)
        assert psi((1.0, 0.0)) == pytest.approx(1.0)
        assert psi((0.0, 1.0)) == pytest.approx(2.0)

    def test_singular_norm_ellipse_raises(self):
        """特異な行列でエラーになるか"""
        with pytest.raises(IntegrandError):
            Integrand.norm_ellipse([[1.0, 1.0], [1.0, 1.0]], 2, 1)

    def test_expression_is_symmetrized(self):
        """even=True で式が ω と −ω の平均になるか"""
        even = Integrand.expression("1 + w0/2", 2, 1)
        odd = Integrand.expression("1 + w0/2", 2, 1, even=False)
        assert even((1.0, 0.0)) == pytest.approx(1.0)
        assert odd((1.0, 0.0)) == pytest.approx(1.5)

    def test_expression_unknown_symbol_raises(self):
        """未知の記号を使う式でエラーになるか"""
        with pytest.raises(IntegrandError):
            Integrand.expression("1 + z", 2, 1)

    def test_expression_syntax_error_raises(self):
        """構文エラーの式でエラーになるか"""
        with pytest.raises(IntegrandError):
            Integrand.expression("1 + (", 2, 1)

    def test_non_positive_value_raises(self):
        """負の値でエラーになるか"""
        psi = Integrand.expression("w0", 2, 1, even=False)
        with pytest.raises(IntegrandError):
            psi((-1.0, 0.0))

    def test_table_nearest_atom(self):
        """表形式が最近傍の原子の値を返すか"""
        psi = Integrand.table(
            [((1.0, 0.0), 1.0), ((0.0, 1.0), 1.5)], 2, 1, lipschitz=1.0, even=False
        )
        assert psi((1.0, 0.1)) == pytest.approx(1.0)
        assert psi((0.1, 1.0)) == pytest.approx(1.5)

    def test_table_lipschitz_violation_raises(self):
        """リプシッツ定数に反する表でエラーになるか"""
        with pytest.raises(IntegrandError):
            Integrand.table([((1.0, 0.0), 1.0), ((0.0, 1.0), 3.0)], 2, 1, lipschitz=1.0)

    def test_oscillation(self, sin2theta):
        """標本上の振動 max − min"""
        items = [(1.0, 0.0), (1.0, 1.0)]
        assert sin2theta.oscillation(items) == pytest.approx(0.4)


class TestMatrixIntegrand:
    """MatrixIntegrandと橋渡しのテスト"""

    def test_area_bridge_is_area(self):
        """面積の行列被積分関数の橋渡しが 1 になるか"""
        bridge = MatrixIntegrand.area(2, 1).bridge()
        for angle in (-60, -15, 0, 30, 75):
            theta = radians(angle)
            assert bridge((cos(theta), sin(theta))) == pytest.approx(1.0)

    def test_area_bridge_in_space(self):
        """n = 3, d = 1 でも橋渡しが 1 になるか"""
        bridge = MatrixIntegrand.area(3, 1).bridge()
        assert bridge((1.0, 2.0, -2.0)) == pytest.approx(1.0)

    @pytest.mark.parametrize("angle", [-80, -45, -10, 0, 20, 45, 70])
    def test_sin2theta_graph_bridge(self, sin2theta, angle):
        """グラフ形の橋渡しが 1 − a|sin 2θ| と一致するか"""
        bridge = MatrixIntegrand.sin2theta_graph(0.4).bridge()
        theta = radians(angle)
        omega = (cos(theta), sin(theta))
        assert bridge(omega) == pytest.approx(sin2theta(omega))

    def test_bridge_is_even(self):
        """向きを反転しても橋渡しの値が同じか"""
        bridge = MatrixIntegrand.sin2theta_graph(0.4).bridge()
        assert bridge((-1.0, -2.0)) == pytest.approx(bridge((1.0, 2.0)))

    def test_vertical_plane_raises(self):
        """P0 上のグラフでない平面でエラーになるか"""
        bridge = MatrixIntegrand.area(2, 1).bridge()
        with pytest.raises(NonGraphCellError):
            bridge((0.0, 1.0))

    def test_zero_slope_value(self):
        """ψ(0) の値"""
        assert MatrixIntegrand.sin2theta_graph(0.4)(0.0) == 1.0
        assert MatrixIntegrand.area(3, 2)(np.zeros((1, 2))) == pytest.approx(1.0)

    def test_expression_names(self):
        """式の変数名 (1×1 は x、それ以外は x_i_j)"""
        scalar = MatrixIntegrand.expression("1 + x**2", 2, 1)
        assert scalar(2.0) == pytest.approx(5.0)
        matrix = MatrixIntegrand.expression("1 + x_0_0**2 + x_1_0**2", 3, 1)
        assert matrix([[1.0], [2.0]]) == pytest.approx(6.0)

    def test_reference_plane_bridge(self):
        """P0 での橋渡しが ψ(0) になるか"""
        bridge = MatrixIntegrand.sin2theta_graph(0.4).bridge()
        assert bridge(coordinate_plane(2, 1)) == pytest.approx(1.0)
