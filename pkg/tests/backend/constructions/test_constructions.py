"""backend.constructions のテスト"""

from fractions import Fraction

import pytest

from backend.chains import PolyChain, box_sampler, cube_chain, currents_equal, slice_total
from backend.constructions import (
    BoundaryMismatchError,
    NegativeCellError,
    NonIntegralAfterScaling,
    NonMatchingClassError,
    OrientationError,
    QValuedPL,
    build_cycle,
    build_filling,
    build_multigraph,
    extract_qvalued,
    is_positive_chain,
    non_positive_cells,
    plateau_graph,
    tile_shrink,
    unit_disc,
)
from backend.constructions.qvalued import scaling_factor
from backend.energy import Integrand, energy_chain
from backend.grassmann import GrassmannMeasure, coordinate_plane


@pytest.fixture
def identity_measure():
    """δ_P0"""
    return GrassmannMeasure(2, 1, ((coordinate_plane(2, 1), Fraction(1)),))


@pytest.fixture
def tent_chain():
    """(0,0) → (1/2,1/2) → (1,0) の折れ線"""
    return PolyChain.from_simplices(
        2, 1, [([(0, 0), ("1/2", "1/2")], 1), ([("1/2", "1/2"), (1, 0)], 1)]
    )


class TestBuildCycle:
    """サイクル構成のテスト"""

    def test_empty_measure_gives_empty_chain(self):
        """空の測度で空のチェインになるか"""
        result = build_cycle(GrassmannMeasure(2, 1), 4)
        assert result.chain.is_empty()
        assert result.tv_error == 0.0

    def test_cycle_is_closed_and_in_unit_cube(self, three_line_cycle_measure):
        """∂A_N = 0 で、台が単位正方形に入るか"""
        result = build_cycle(three_line_cycle_measure, 4)
        assert result.boundary_ok
        assert result.chain.boundary().is_empty()
        lo, hi = result.chain.bounding_box()
        assert min(lo) >= 0
        assert max(hi) <= 1

    def test_tv_error_decreases_within_bound(self, three_line_cycle_measure):
        """TV 誤差が N とともに減り、c/N 以下か"""
        errors = []
        for size in (4, 8):
            result = build_cycle(three_line_cycle_measure, size)
            assert result.tv_error <= result.c_constant / size + 1e-9
            errors.append(result.tv_error)
        assert errors[1] < errors[0]

    def test_mass_matches_measure(self, three_line_cycle_measure):
        """質量が測度の全質量に近いか"""
        result = build_cycle(three_line_cycle_measure, 8)
        assert result.mass == pytest.approx(
            three_line_cycle_measure.total_mass(), abs=result.tv_error + 1e-9
        )

    def test_hausdorff_to_unit_square_decreases(self, three_line_cycle_measure):
        """N = 4, 8, 16 で単位正方形とのハウスドルフ距離が減るか"""
        square = box_sampler([0.0, 0.0], [1.0, 1.0])
        distances = [
            build_cycle(three_line_cycle_measure, size).hausdorff_to(square, 1.0 / 128.0)
            for size in (4, 8, 16)
        ]
        assert distances[0] > distances[1] > distances[2]

    def test_invalid_size_raises(self, three_line_cycle_measure):
        """N = 0 でエラーになるか"""
        with pytest.raises(ValueError):
            build_cycle(three_line_cycle_measure, 0)

    def test_summary_has_parameters(self, three_line_cycle_measure):
        """要約に N と素数が入るか"""
        summary = build_cycle(three_line_cycle_measure, 4).summary()
        assert summary["N"] == 4
        assert summary["prime"] >= 101
        assert summary["boundary_ok"] is True


class TestBuildFilling:
    """充填構成のテスト"""

    def test_identity_returns_unit_disc(self, identity_measure):
        """δ_P0 で単位線分そのものが返るか"""
        result = build_filling(identity_measure, 4, 2)
        assert result.chain == unit_disc(2, 1)
        assert result.tv_error == 0.0

    def test_boundary_is_unit_disc_boundary(self, diagonal_measure):
        """∂A = ∂[0,1] が厳密に成り立つか"""
        result = build_filling(diagonal_measure, 9, 3)
        assert result.boundary_ok
        assert currents_equal(result.chain.boundary(), unit_disc(2, 1).boundary())

    def test_tv_error_decreases(self, diagonal_measure):
        """(M, N) = (3, 9) → (4, 16) で TV 誤差が減るか"""
        coarse = build_filling(diagonal_measure, 9, 3)
        fine = build_filling(diagonal_measure, 16, 4)
        assert fine.tv_error < coarse.tv_error

    def test_wrong_class_raises(self, three_line_cycle_measure):
        """重心が W_P0 でない測度でエラーになるか"""
        with pytest.raises(NonMatchingClassError):
            build_filling(three_line_cycle_measure, 4, 2)

    @pytest.mark.parametrize("size,height", [(4, 0), (4, 1), (2, 3)])
    def test_invalid_grid_raises(self, diagonal_measure, size, height):
        """2 ≤ M ≤ N でない格子でエラーになるか"""
        with pytest.raises(ValueError):
            build_filling(diagonal_measure, size, height)


class TestBuildMultigraph:
    """多価グラフ構成のテスト"""

    @pytest.fixture
    def multigraph(self, diagonal_measure):
        return build_multigraph(diagonal_measure, 4, 2)

    def test_chain_is_positive(self, multigraph):
        """すべてのセルが正の向きか"""
        assert multigraph.positive
        assert is_positive_chain(multigraph.chain)

    def test_boundary_is_unit_segment_boundary(self, multigraph):
        """∂B = ∂[0,1] か"""
        assert multigraph.boundary_ok

    def test_projection_degree_is_one(self, multigraph):
        """鉛直な直線で切った射影次数が 1 か"""
        assert slice_total(multigraph.chain, (Fraction(500, 1009), 0), [(0, 1)]) == 1

    def test_extraction_round_trip(self, multigraph):
        """取り出した Q 価関数のグラフが元のチェインに一致するか"""
        multiplicity, function = extract_qvalued(multigraph.chain)
        assert multiplicity >= 1
        assert function.domain == (0, 1)
        assert currents_equal(function.graph_chain(), multigraph.chain)

    def test_negative_atom_raises(self):
        """正の向きでない原子でエラーになるか"""
        measure = GrassmannMeasure.from_bases(2, 1, [([(-1, 1)], 1), ([(2, -1)], 1)])
        with pytest.raises(OrientationError):
            build_multigraph(measure, 4, 2)

    def test_identity_returns_unit_segment(self, identity_measure):
        """δ_P0 で単位線分が返るか"""
        result = build_multigraph(identity_measure, 4, 2)
        assert result.positive
        assert result.chain == unit_disc(2, 1)

    @pytest.mark.parametrize("size,height", [(4, 1), (2, 3)])
    def test_invalid_grid_raises(self, diagonal_measure, size, height):
        """2 ≤ M ≤ N でない格子でエラーになるか"""
        with pytest.raises(ValueError):
            build_multigraph(diagonal_measure, size, height)


class TestPlateauGraph:
    """台地グラフのテスト"""

    def test_plateau_boundary(self):
        """台地グラフの境界が ±outer の点だけか"""
        graph = plateau_graph((Fraction(1, 2),), Fraction(2), Fraction(3))
        boundary = graph.boundary().cells
        assert boundary == {
            ((Fraction(3), Fraction(0)),): Fraction(1),
            ((Fraction(-3), Fraction(0)),): Fraction(-1),
        }
        assert is_positive_chain(graph)

    def test_vertical_cell_is_not_positive(self):
        """鉛直なセルが正の向きでないと判定されるか"""
        T = PolyChain.from_simplices(2, 1, [([(0, 0), (0, 1)], 1)])
        assert non_positive_cells(T) == [cell for cell, _ in T.items()]


class TestExtractQValued:
    """Q 価関数の取り出しのテスト"""

    def test_two_sheets(self):
        """2 枚のシートの Q 価関数"""
        T = PolyChain.from_simplices(
            2, 1, [([(0, 0), (1, 1)], "1/2"), ([(0, 0), (1, -1)], "1/2")]
        )
        multiplicity, function = extract_qvalued(T)
        assert multiplicity == 2
        assert function.evaluate("1/2") == [(Fraction(-1, 2),), (Fraction(1, 2),)]
        assert function.lipschitz == pytest.approx(1.0)
        assert function.is_continuous()

    def test_explicit_multiplicity(self):
        """Q を指定すると係数 1 の線分が Q 枚の重なったシートになるか"""
        T = PolyChain.from_simplices(2, 1, [([(0, 0), (1, 0)], 1)])
        multiplicity, function = extract_qvalued(T, q=3)
        assert multiplicity == 3
        assert function.evaluate(0) == [(Fraction(0),)] * 3

    def test_half_coefficient_is_not_a_graph(self):
        """係数 1/2 だけの線分は Q 価グラフにならないか"""
        T = PolyChain.from_simplices(2, 1, [([(0, 0), (1, 0)], "1/2")])
        with pytest.raises(BoundaryMismatchError):
            extract_qvalued(T, q=4)

    def test_reversed_segment_raises(self):
        """負の向きの線分でエラーになるか"""
        T = PolyChain.from_simplices(2, 1, [([(1, 0), (0, 0)], 1)])
        with pytest.raises(NegativeCellError):
            extract_qvalued(T)

    def test_uneven_sheet_count_raises(self):
        """区間ごとのシート数が違う場合にエラーになるか"""
        T = PolyChain.from_simplices(
            2, 1, [([(0, 0), (1, 0)], 1), ([(1, 0), (2, 0)], "1/2")]
        )
        with pytest.raises(BoundaryMismatchError):
            extract_qvalued(T)

    def test_evaluate_outside_domain_raises(self):
        """定義域の外でエラーになるか"""
        u = QValuedPL((Fraction(0), Fraction(1)), ((((Fraction(0),), (Fraction(0),)),),), 1)
        with pytest.raises(ValueError):
            u.evaluate(2)

    def test_scaling_factor(self):
        """係数の分母の最小公倍数と、整数にならない Q の検出"""
        assert scaling_factor([Fraction(1, 2), Fraction(1, 3)]) == 6
        with pytest.raises(NonIntegralAfterScaling):
            scaling_factor([Fraction(1, 3)], q=4)
        with pytest.raises(ValueError):
            scaling_factor([Fraction(1, 2)], q=0)


class TestTileShrink:
    """タイリング作用素のテスト"""

    def test_zero_steps_is_identity(self, tent_chain):
        """i = 0 なら元のチェインか"""
        assert tile_shrink(tent_chain, 0) is tent_chain

    @pytest.mark.parametrize("steps", [1, 2, 3])
    def test_boundary_and_gaussian_image_are_kept(self, tent_chain, steps):
        """境界とガウス像が変わらないか"""
        tiled = tile_shrink(tent_chain, steps)
        assert currents_equal(tiled.boundary(), unit_disc(2, 1).boundary())
        before, after = tent_chain.gaussian_image(), tiled.gaussian_image()
        assert set(after.atoms) == set(before.atoms)
        for key in before.atoms:
            assert after.mass_of(key) == pytest.approx(before.mass_of(key))

    def test_support_shrinks(self, tent_chain):
        """台の高さが 2^{−i} 倍になるか"""
        _, hi = tile_shrink(tent_chain, 2).bounding_box()
        assert hi[1] == Fraction(1, 8)

    def test_wrong_boundary_raises(self):
        """∂B ≠ ∂[D] のチェインでエラーになるか"""
        with pytest.raises(BoundaryMismatchError):
            tile_shrink(cube_chain((0, 0), (2, 0)), 1)

    def test_negative_steps_raise(self, tent_chain):
        """i < 0 でエラーになるか"""
        with pytest.raises(ValueError):
            tile_shrink(tent_chain, -1)

    @pytest.mark.parametrize("integrand_name", ["area", "sin2theta"])
    def test_energy_of_tiled_filling_is_nonincreasing(self, diagonal_measure, integrand_name):
        """充填構成の出力で i = 0..3 のエネルギーが増えないか"""
        integrand = Integrand.area(2, 1) if integrand_name == "area" else Integrand.sin2theta(0.4)
        filling = build_filling(diagonal_measure, 9, 3).chain
        energies = [energy_chain(integrand, tile_shrink(filling, steps)) for steps in range(4)]
        for earlier, later in zip(energies, energies[1:]):
            assert later <= earlier + 1e-9

    def test_tiled_filling_keeps_boundary(self, diagonal_measure):
        """充填構成の出力を敷き詰めても境界が ∂[0,1] のままか"""
        filling = build_filling(diagonal_measure, 9, 3).chain
        tiled = tile_shrink(filling, 2)
        assert currents_equal(tiled.boundary(), unit_disc(2, 1).boundary())
