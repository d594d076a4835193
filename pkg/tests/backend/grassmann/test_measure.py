"""backend.grassmann.measure / metrics のテスト"""

import random
from fractions import Fraction
from math import sqrt

import numpy as np
import pytest

from backend.grassmann import (
    DVector,
    FloatMeasure,
    GrassmannMeasure,
    MassMismatchError,
    chordal_distance,
    coordinate_plane,
    plane_from_columns,
    tv_distance,
    wasserstein_distance,
)


class TestGrassmannMeasure:
    """GrassmannMeasureのテスト"""

    def test_three_line_cycle_barycenter_is_zero(self, three_line_cycle_measure):
        """3原子測度の重心が 0 になるか"""
        assert three_line_cycle_measure.barycenter().is_zero()

    def test_basis_scale_is_converted(self):
        """基底 (−2,0)、スケール 1 が W=(−1,0)、スケール 2 になるか"""
        measure = GrassmannMeasure.from_bases(2, 1, [([(-2, 0)], 1)])
        plane, scale = measure.atoms[0]
        assert plane.key == (-1, 0)
        assert scale == 2

    def test_same_plane_atoms_are_merged(self):
        """同じ平面の原子がまとめられるか"""
        measure = GrassmannMeasure.from_bases(2, 1, [([(1, 1)], 1), ([(2, 2)], "1/2")])
        assert len(measure) == 1
        assert measure.atoms[0][1] == 2

    def test_negative_scale_raises(self):
        """負のスケールでエラーになるか"""
        plane = coordinate_plane(2, 1)
        with pytest.raises(ValueError):
            GrassmannMeasure(2, 1, ((plane, Fraction(-1)),))

    def test_total_mass(self, three_line_cycle_measure):
        """全質量 Σ s|W|"""
        assert three_line_cycle_measure.total_mass() == pytest.approx(2 + 2 * sqrt(2))

    def test_diagonal_barycenter_is_reference(self, diagonal_measure):
        """対角線の測度の重心が W_P0 になるか"""
        assert diagonal_measure.barycenter() == coordinate_plane(2, 1).W

    def test_to_float_masses(self, diagonal_measure):
        """浮動小数点形の質量が s|W| になるか"""
        floating = diagonal_measure.to_float()
        assert floating.mass_of((1, 1)) == pytest.approx(sqrt(2) / 2)
        assert floating.total_mass() == pytest.approx(sqrt(2))


class TestFloatMeasure:
    """FloatMeasureのテスト"""

    def test_from_vectors_normalizes(self):
        """座標が単位化されるか"""
        measure = FloatMeasure.from_vectors(2, 1, [([3.0, 4.0], 2.0)])
        omega, mass = next(iter(measure.atoms.values()))
        assert omega.coords == pytest.approx((0.6, 0.8))
        assert mass == 2.0

    def test_normalized_and_pruned(self):
        """正規化と小さい原子の除去"""
        measure = FloatMeasure.from_vectors(2, 1, [([1.0, 0.0], 3.0), ([0.0, 1.0], 1e-15)])
        assert measure.normalized().total_mass() == pytest.approx(1.0)
        assert len(measure.pruned(1e-12).atoms) == 1

    def test_integrate(self):
        """∫ f dμ"""
        measure = FloatMeasure.from_vectors(2, 1, [([1.0, 0.0], 2.0), ([0.0, 1.0], 3.0)])
        assert measure.integrate(lambda omega: omega.coords[1]) == pytest.approx(3.0)


class TestDistances:
    """距離のテスト"""

    def test_tv_distance_self_is_zero(self, three_line_cycle_measure):
        """自分自身との全変動距離が 0 か"""
        assert tv_distance(three_line_cycle_measure, three_line_cycle_measure) == 0.0

    def test_tv_distance_disjoint(self):
        """台が交わらない測度の全変動距離"""
        a = GrassmannMeasure.dirac(coordinate_plane(2, 1))
        b = GrassmannMeasure.dirac(plane_from_columns([(1, 1)]))
        assert tv_distance(a, b) == pytest.approx(1 + sqrt(2))

    def test_chordal_distance_antipodal(self):
        """逆向きの平面の弦距離が 2 か"""
        assert chordal_distance(coordinate_plane(2, 1), coordinate_plane(2, 1, -1)) == pytest.approx(2.0)

    def test_wasserstein_antipodal(self):
        """逆向きの平面の間のワッサースタイン距離"""
        a = GrassmannMeasure.dirac(coordinate_plane(2, 1))
        b = GrassmannMeasure.dirac(coordinate_plane(2, 1, -1))
        assert wasserstein_distance(a, b) == pytest.approx(2.0)

    def test_wasserstein_mass_mismatch(self):
        """全質量が違うとエラーになるか"""
        a = GrassmannMeasure.dirac(coordinate_plane(2, 1))
        b = GrassmannMeasure.dirac(coordinate_plane(2, 1), 2)
        with pytest.raises(MassMismatchError):
            wasserstein_distance(a, b)

    def test_wasserstein_against_pot(self):
        """POT の ot.emd2 と一致するか"""
        ot = pytest.importorskip("ot")
        rng = random.Random(11)
        for _ in range(10):
            left = [([rng.uniform(-1, 1), rng.uniform(-1, 1)], rng.uniform(0.1, 1.0)) for _ in range(4)]
            right = [([rng.uniform(-1, 1), rng.uniform(-1, 1)], rng.uniform(0.1, 1.0)) for _ in range(3)]
            mu = FloatMeasure.from_vectors(2, 1, left)
            nu = FloatMeasure.from_vectors(2, 1, right).scaled(
                sum(m for _, m in left) / sum(m for _, m in right)
            )
            a = np.array([m for _, m in mu.atoms.values()])
            b = np.array([m for _, m in nu.atoms.values()])
            cost = np.array(
                [
                    [(wa - wb).norm() for wb, _ in nu.atoms.values()]
                    for wa, _ in mu.atoms.values()
                ]
            )
            expected = ot.emd2(a / a.sum(), b / b.sum(), cost)
            assert wasserstein_distance(mu, nu, tolerance=1e-6) == pytest.approx(expected, abs=1e-7)

    def test_float_dvector_distance(self):
        """浮動小数点 d ベクトル同士の弦距離"""
        a = DVector.float_from([1.0, 0.0], 2, 1)
        b = DVector.float_from([0.0, 1.0], 2, 1)
        assert chordal_distance(a, b) == pytest.approx(sqrt(2))


def random_measure(rng: random.Random, atoms: int) -> GrassmannMeasure:
    """整数基底と有理スケールの原子をもつ Gr(1, 2) 上の測度"""
    entries = []
    for _ in range(atoms):
        column = (0, 0)
        while column == (0, 0):
            column = (rng.randint(-3, 3), rng.randint(-3, 3))
        entries.append(([column], Fraction(rng.randint(1, 6), rng.randint(1, 4))))
    return GrassmannMeasure.from_bases(2, 1, entries)


def unit_mass(measure: GrassmannMeasure) -> GrassmannMeasure:
    """全質量をほぼ 1 にそろえる"""
    return measure.scaled(1 / Fraction(measure.total_mass()).limit_denominator(10**12))


class TestMetricProperties:
    """距離の公理と上界のテスト"""

    def test_tv_distance_is_symmetric_and_satisfies_triangle(self):
        """全変動距離の対称性と三角不等式"""
        rng = random.Random(17)
        for _ in range(100):
            a, b, c = (random_measure(rng, rng.randint(1, 4)) for _ in range(3))
            assert tv_distance(a, b) == pytest.approx(tv_distance(b, a))
            assert tv_distance(a, c) <= tv_distance(a, b) + tv_distance(b, c) + 1e-9

    def test_tv_distance_is_zero_only_for_equal_measures(self):
        """異なる測度の全変動距離が正か"""
        rng = random.Random(19)
        for _ in range(50):
            a, b = random_measure(rng, 2), random_measure(rng, 2)
            assert (tv_distance(a, b) == 0.0) == (a == b)

    def test_wasserstein_is_bounded_by_support_diameter(self):
        """W1 が台の間の弦距離の最大値 (≤ 2) を超えないか"""
        rng = random.Random(23)
        for _ in range(30):
            a = random_measure(rng, rng.randint(1, 3))
            b = random_measure(rng, rng.randint(1, 3))
            a, b = unit_mass(a), unit_mass(b)
            diameter = max(
                chordal_distance(p, q) for p in a.support() for q in b.support()
            )
            value = wasserstein_distance(a, b, tolerance=1e-6)
            assert value <= diameter + 1e-9
            assert value <= 2.0 + 1e-9

    def test_wasserstein_is_symmetric(self):
        """W1 の対称性"""
        a = GrassmannMeasure.from_bases(2, 1, [([(1, 1)], "1/2"), ([(1, -1)], "1/2")])
        b = GrassmannMeasure.from_bases(2, 1, [([(1, 0)], 1), ([(0, 1)], "2/5")])
        a, b = unit_mass(a), unit_mass(b)
        assert wasserstein_distance(a, b, tolerance=1e-6) == pytest.approx(
            wasserstein_distance(b, a, tolerance=1e-6), abs=1e-9
        )
