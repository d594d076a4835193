"""cli.convergence のテスト"""

import pytest

from backend.constructions import build_filling
from cli.convergence import VARIFOLD_TESTS, monotonicity_flags, varifold_residuals


class TestFillingConvergence:
    """(M, N) = (3, 9), (4, 16), (5, 25) の充填構成の収束"""

    SIZES = [(3, 9), (4, 16), (5, 25)]

    @pytest.fixture
    def rows(self, diagonal_measure):
        total_mass = diagonal_measure.total_mass()
        rows = []
        for height, size in self.SIZES:
            result = build_filling(diagonal_measure, size, height)
            rows.append(
                {
                    "N": size,
                    "tv_error": result.tv_error,
                    "hausdorff": 0.0,
                    **varifold_residuals(result.chain, total_mass, 3),
                }
            )
        return rows

    def test_tv_error_strictly_decreases(self, rows):
        """TV 誤差が狭義に減るか"""
        errors = [row["tv_error"] for row in rows]
        assert errors[0] > errors[1] > errors[2]

    @pytest.mark.parametrize("name", [name for name, _, _ in VARIFOLD_TESTS])
    def test_varifold_residual_improves(self, rows, name):
        """f ∈ {1, x1, x1²} の残差が最初から最後で 1.5 倍以上改善するか"""
        first, last = rows[0][f"varifold_{name}"], rows[-1][f"varifold_{name}"]
        assert first >= 1.5 * last

    def test_flags(self, rows):
        """単調性フラグと改善率"""
        flags = monotonicity_flags(rows, "fill")
        assert flags["tv_decreasing"] is True
        assert flags["varifold_improvement"] >= 1.5
        assert "within_bound" not in flags


class TestMonotonicityFlags:
    """monotonicity_flags のテスト"""

    def test_cycle_bound(self):
        """サイクルでは TV 誤差 ≤ c/N を判定するか"""
        rows = [
            {"N": 4, "tv_error": 0.2, "hausdorff": 0.1, "c_constant": 1.0,
             "varifold_one": 0.4, "varifold_x1": 0.2, "varifold_x1sq": 0.1},
            {"N": 8, "tv_error": 0.2, "hausdorff": 0.05, "c_constant": 1.0,
             "varifold_one": 0.1, "varifold_x1": 0.05, "varifold_x1sq": 0.02},
        ]
        flags = monotonicity_flags(rows, "cycle")
        assert flags["tv_decreasing"] is False
        assert flags["hausdorff_decreasing"] is True
        assert flags["within_bound"] is False
        assert flags["varifold_improvement"] == pytest.approx(4.0)
