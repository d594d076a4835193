"""backend.energy.approx / counterexample のテスト"""

from fractions import Fraction
from math import cos, sin, sqrt

import numpy as np
import pytest

from backend.energy import (
    ConeInfeasible,
    GapTooSmall,
    MatrixIntegrand,
    angle_candidates,
    cone_planes,
    counterexample_multigraph,
    rational_approx,
    snap_plane,
    strict_gap_witness,
    witness_gap,
)
from backend.energy.counterexample import normalized_measure
from backend.grassmann import (
    FloatMeasure,
    coordinate_plane,
    is_positively_oriented,
    wasserstein_distance,
)

P0 = coordinate_plane(2, 1)


@pytest.fixture
def symmetric_pair():
    """±0.3 rad の2原子 (質量 1) の浮動小数点測度"""
    return FloatMeasure.from_vectors(
        2, 1, [((cos(0.3), sin(0.3)), 1.0), ((cos(0.3), -sin(0.3)), 1.0)]
    )


@pytest.fixture
def graph_witness():
    """|sin 2θ| 型のグラフ形被積分関数と ±45°の証人"""
    psi = MatrixIntegrand.sin2theta_graph(0.4)
    witness = strict_gap_witness(psi.bridge(), P0, angle_candidates(45))
    assert witness is not None
    return psi, witness


class TestSnapPlane:
    """平面の有理化のテスト"""

    def test_snaps_to_denominator(self):
        """分母 4 の格子に寄せた平面になるか"""
        plane = snap_plane(np.array([cos(0.3), sin(0.3)]), 2, 1, 4)
        assert plane is not None
        assert plane.key == (4, 1)

    def test_cone_planes(self):
        """n=2, d=1 の錐の平面が傾き −1, 0, 1 の3つか"""
        keys = sorted(plane.key for plane in cone_planes(2, 1))
        assert keys == [(1, -1), (1, 0), (1, 1)]


class TestRationalApprox:
    """有理近似のテスト"""

    def test_exact_measure_is_returned(self, diagonal_measure):
        """厳密形の測度はそのまま返るか"""
        assert rational_approx(diagonal_measure, 1e-3) is diagonal_measure

    def test_general_case(self, symmetric_pair):
        """一般の場合の近似が eps 以内で質量を保つか"""
        approx = rational_approx(symmetric_pair, 1e-2)
        assert wasserstein_distance(approx, symmetric_pair) < 1e-2
        assert approx.total_mass() == pytest.approx(2.0, rel=1e-6)

    def test_positive_case(self, symmetric_pair):
        """正の場合の近似がすべて正の向きで、重心が W_P0 の正の倍数か"""
        approx = rational_approx(symmetric_pair, 1e-2, positive_cone=P0)
        assert wasserstein_distance(approx, symmetric_pair) < 1e-2
        for plane, _ in approx.atoms:
            assert is_positively_oriented(plane, P0)
        ratio = approx.barycenter().ratio_to(P0.W)
        assert ratio is not None and ratio > 0

    def test_sampler_source(self, symmetric_pair):
        """サンプラーを渡しても近似できるか"""
        approx = rational_approx(lambda samples: symmetric_pair, 1e-2)
        assert wasserstein_distance(approx, symmetric_pair) < 1e-2

    def test_negative_atom_in_positive_case_raises(self):
        """正の場合に負の向きの原子があるとエラーになるか"""
        source = FloatMeasure.from_vectors(2, 1, [((-1.0, 0.5), 1.0), ((3.0, -0.5), 1.0)])
        with pytest.raises(ValueError):
            rational_approx(source, 1e-2, positive_cone=P0)

    def test_unreachable_tolerance_raises(self, symmetric_pair):
        """到達できない許容誤差で ConeInfeasible になるか"""
        with pytest.raises(ConeInfeasible):
            rational_approx(symmetric_pair, 1e-12)

    def test_non_positive_eps_raises(self, symmetric_pair):
        """eps ≤ 0 でエラーになるか"""
        with pytest.raises(ValueError):
            rational_approx(symmetric_pair, 0.0)

    def test_irrational_direction(self):
        """傾き √2 の無理数方向の原子が eps 以内で近似されるか"""
        source = FloatMeasure.from_vectors(2, 1, [((1.0, sqrt(2)), 1.0)])
        approx = rational_approx(source, 1e-2)
        assert wasserstein_distance(approx, source) < 1e-2
        assert approx.total_mass() == pytest.approx(1.0, rel=1e-6)

    def test_irrational_pair_in_positive_case(self):
        """傾き ±√2 の2原子が正の向きのまま近似されるか"""
        source = FloatMeasure.from_vectors(
            2, 1, [((1.0, sqrt(2)), 1.0), ((1.0, -sqrt(2)), 1.0)]
        )
        approx = rational_approx(source, 1e-2, positive_cone=P0)
        assert wasserstein_distance(approx, source) < 1e-2
        for plane, _ in approx.atoms:
            assert is_positively_oriented(plane, P0)


class TestCounterexample:
    """反例生成のテスト"""

    def test_witness_gap(self, graph_witness):
        """証人のギャップが 1 − 1.2/√2 か"""
        psi, witness = graph_witness
        assert witness_gap(psi, witness) == pytest.approx(1.0 - 1.2 / 2**0.5)

    def test_normalized_measure(self, diagonal_measure):
        """重心が 2·W_P0 の測度が W_P0 に縮められるか"""
        doubled = diagonal_measure.scaled(2)
        assert normalized_measure(doubled).barycenter() == P0.W

    def test_no_gap_raises(self):
        """ギャップのない証人でエラーになるか"""
        psi = MatrixIntegrand.area(2, 1)
        witness = FloatMeasure.from_vectors(2, 1, [((1.0, 0.0), 1.0)])
        with pytest.raises(ValueError):
            counterexample_multigraph(psi, witness, sizes=[(2, 4)])

    def test_over_budget_raises(self, graph_witness, monkeypatch):
        """セル予算を超えるサイズで GapTooSmall になるか"""
        from config.settings import get_settings

        psi, witness = graph_witness
        monkeypatch.setattr(get_settings(), "CELL_BUDGET", 10)
        with pytest.raises(GapTooSmall):
            counterexample_multigraph(psi, witness, sizes=[(4, 16)])

    def test_small_margin_continues_schedule(self, graph_witness, monkeypatch):
        """余裕が正でもギャップの半分未満なら次のサイズに進むか"""
        import backend.energy.counterexample as counterexample

        psi, witness = graph_witness
        margins = iter([1e-4, 0.1])
        monkeypatch.setattr(
            counterexample,
            "energy_multigraph",
            lambda integrand, function: function.sheet_count * (psi(0.0) - next(margins)),
        )
        result = counterexample_multigraph(psi, witness, sizes=[(2, 4), (3, 9)])
        assert result.size == (3, 9)
        assert result.margin == pytest.approx(0.1)
        assert [row["N"] for row in result.history] == [4, 9]
        assert all("spread" in row for row in result.history)

    def test_small_margin_only_raises(self, graph_witness, monkeypatch):
        """ギャップの半分に届かないまま終わると GapTooSmall になるか"""
        import backend.energy.counterexample as counterexample

        psi, witness = graph_witness
        monkeypatch.setattr(
            counterexample,
            "energy_multigraph",
            lambda integrand, function: function.sheet_count * (psi(0.0) - 1e-4),
        )
        with pytest.raises(GapTooSmall):
            counterexample_multigraph(psi, witness, sizes=[(2, 4)])

    @pytest.mark.slow
    def test_certified_counterexample(self, graph_witness):
        """既定のスケジュールと予算で余裕 ≥ ギャップ/2 かつ ≥ 0.05 の Q 価関数が得られるか"""
        psi, witness = graph_witness
        result = counterexample_multigraph(psi, witness)
        assert result.margin >= result.gap / 2
        assert result.margin >= 0.05
        assert result.energy < result.reference
        assert result.reference == pytest.approx(result.multiplicity * psi(0.0))
        assert result.function.domain == (Fraction(0), Fraction(1))
        assert result.history[-1]["margin"] == pytest.approx(result.margin)
        assert "spread" in result.history[-1]
        for row in result.history[:-1]:
            assert row["margin"] < result.gap / 2
