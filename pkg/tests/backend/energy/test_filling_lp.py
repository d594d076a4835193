"""backend.energy.filling_lp のテスト"""

import random
from math import sqrt

import numpy as np
import pytest
from scipy.optimize import linprog

from backend.energy import (
    Integrand,
    angle_candidates,
    filling_energy_lp,
    solve_filling_lp,
    strict_gap_witness,
)
from backend.energy.filling_lp import WITNESS_THRESHOLD
from backend.grassmann import coordinate_plane, plane_from_columns

P0 = coordinate_plane(2, 1)


class TestFillingLP:
    """充填エネルギー LP のテスト"""

    def test_angle_candidates(self):
        """45°刻みの候補"""
        assert [plane.key for plane in angle_candidates(45)] == [(1, -1), (1, 0), (1, 1)]

    def test_angle_candidates_include_reference(self):
        """刻みが 90 を割り切らなくても 0°が入るか"""
        keys = [plane.key for plane in angle_candidates(40)]
        assert (1, 0) in keys
        assert len(keys) == 5

    def test_non_positive_step_raises(self):
        """刻み 0 でエラーになるか"""
        with pytest.raises(ValueError):
            angle_candidates(0)

    def test_area_value_is_one(self):
        """面積被積分関数の値が 1 (多凸) か"""
        value, measure = filling_energy_lp(Integrand.area(2, 1), P0, angle_candidates(15))
        assert value == pytest.approx(1.0)
        assert measure.total_mass() >= 1.0 - 1e-9

    def test_sin2theta_value(self, sin2theta):
        """|sin 2θ| 型の値が 1.2/√2 になるか"""
        result = solve_filling_lp(sin2theta, P0, angle_candidates(45))
        assert result.value == pytest.approx(1.2 / sqrt(2))
        assert result.reference == pytest.approx(1.0)
        assert result.gap == pytest.approx(1.0 - 1.2 / sqrt(2))
        assert set(result.measure.atoms) == {(1, 1), (1, -1)}

    def test_optimal_measure_has_reference_barycenter(self, sin2theta):
        """μ* の重心が ω_P0 になるか"""
        _, measure = filling_energy_lp(sin2theta, P0, angle_candidates(15))
        barycenter = [float(c) for c in measure.barycenter().coords]
        assert barycenter == pytest.approx([1.0, 0.0])

    def test_empty_candidates_raise(self, sin2theta):
        """候補が空ならエラーになるか"""
        with pytest.raises(ValueError):
            solve_filling_lp(sin2theta, P0, [])

    def test_reference_outside_cone_raises(self, sin2theta):
        """P0 が候補の錐の外なら実行不能のエラーになるか"""
        with pytest.raises(ValueError):
            solve_filling_lp(sin2theta, P0, [plane_from_columns([(1, 1)])])

    def test_wrong_dimension_raises(self, sin2theta):
        """次元の違う候補でエラーになるか"""
        with pytest.raises(ValueError):
            solve_filling_lp(sin2theta, P0, [coordinate_plane(3, 1)])

    @pytest.mark.parametrize("amplitude", [0.0, 0.4, 0.9])
    def test_one_degree_grid_matches_scipy(self, amplitude):
        """1°刻みの候補で scipy.optimize.linprog と 1e-6 以内で一致するか"""
        psi = Integrand.sin2theta(amplitude)
        candidates = angle_candidates(1)
        cost = [psi(plane) for plane in candidates]
        matrix = [[float(plane.omega.coords[r]) for plane in candidates] for r in range(2)]
        reference = linprog(cost, A_eq=matrix, b_eq=[1.0, 0.0], bounds=(0, None), method="highs")
        result = solve_filling_lp(psi, P0, candidates)
        assert result.value == pytest.approx(reference.fun, abs=1e-6)

    def test_sin2theta_bound_on_coarse_grid(self, sin2theta):
        """0°, ±45°の候補で値が 0.84853 以下か"""
        value, _ = filling_energy_lp(sin2theta, P0, angle_candidates(45))
        assert value <= 0.84853 + 1e-6

    @pytest.mark.parametrize("amplitude", [0.4, 0.9])
    def test_value_does_not_increase_on_larger_candidate_sets(self, amplitude):
        """45° ⊂ 15° ⊂ 5° ⊂ 1°の入れ子の候補で値が増えないか"""
        psi = Integrand.sin2theta(amplitude)
        grids = [angle_candidates(step) for step in (45, 15, 5, 1)]
        for coarse, fine in zip(grids, grids[1:]):
            assert {p.key for p in coarse} <= {p.key for p in fine}
        values = [solve_filling_lp(psi, P0, grid).value for grid in grids]
        for earlier, later in zip(values, values[1:]):
            assert later <= earlier + 1e-9


def _random_positive_definite(rng: np.random.Generator) -> np.ndarray:
    root = rng.uniform(-1.0, 1.0, size=(2, 2))
    return root @ root.T + 0.5 * np.eye(2)


class TestNormIntegrands:
    """ノルム型 (凸で 1 次斉次) の被積分関数では値が Ψ(P0) になるか"""

    def test_value_equals_reference(self):
        """ランダムな楕円ノルムと候補の部分集合で LP の値 = Ψ(P0) か"""
        rng = np.random.default_rng(29)
        pool = angle_candidates(5)
        others = [plane for plane in pool if plane != P0]
        picker = random.Random(29)
        for _ in range(20):
            psi = Integrand.norm_ellipse(_random_positive_definite(rng), 2, 1)
            candidates = [P0] + picker.sample(others, picker.randint(2, len(others)))
            result = solve_filling_lp(psi, P0, candidates)
            assert result.value == pytest.approx(result.reference, abs=1e-9)

    def test_no_measure_beats_reference(self):
        """どの候補の組み合わせでも ∫Ψ dμ ≥ Ψ(P0) か"""
        rng = np.random.default_rng(31)
        psi = Integrand.norm_ellipse(_random_positive_definite(rng), 2, 1)
        candidates = angle_candidates(15)
        result = solve_filling_lp(psi, P0, candidates)
        assert result.measure.integrate(psi) >= psi(P0) - 1e-9


class TestStrictGapWitness:
    """多凸性ギャップの証人のテスト"""

    def test_sin2theta_has_witness(self, sin2theta):
        """|sin 2θ| 型で ±45°の証人が返るか"""
        witness = strict_gap_witness(sin2theta, P0, angle_candidates(45))
        assert witness is not None
        assert set(witness.atoms) == {(1, 1), (1, -1)}
        assert witness.integrate(sin2theta) < 1.0

    def test_area_has_no_witness(self):
        """面積被積分関数では証人がないか"""
        assert strict_gap_witness(Integrand.area(2, 1), P0, angle_candidates(45)) is None

    def test_area_has_no_witness_on_dense_grid(self):
        """1°刻みの候補でも面積被積分関数に証人がないか"""
        assert strict_gap_witness(Integrand.area(2, 1), P0, angle_candidates(1)) is None

    def test_threshold(self):
        """P0 の質量のしきい値が 1 − 1e-9 か"""
        assert WITNESS_THRESHOLD == pytest.approx(1.0 - 1e-9, abs=1e-15)

    def test_flat_direction_gives_witness(self):
        """値が Ψ(P0) に等しい別の μ があれば返るか"""
        psi = Integrand.sin2theta(1.0 - 1.0 / sqrt(2))
        witness = strict_gap_witness(psi, P0, angle_candidates(45))
        assert witness is not None
        assert witness.mass_of((1, 0)) < 1e-6
        assert witness.integrate(psi) == pytest.approx(1.0)
