"""backend.chains.export のテスト"""

import pytest

from backend.chains import PolyChain, cube_chain, simplex_chain, to_obj, to_svg


class TestToSvg:
    """SVG出力のテスト"""

    def test_segment_chain(self, tmp_path):
        """線分のチェインが SVG に書き出されるか"""
        T = cube_chain((0, 0), (1, 1)).boundary()
        path = to_svg(T, tmp_path / "loop.svg", title="boundary")
        assert path.exists()
        assert "<svg" in path.read_text(encoding="utf-8")

    def test_surface_chain(self, tmp_path):
        """2 チェイン (塗りつぶし) も書き出されるか"""
        path = to_svg(cube_chain((0, 0), (1, 1)), tmp_path / "square.svg")
        assert path.stat().st_size > 0

    def test_space_chain_raises(self, tmp_path):
        """n = 3 のチェインでエラーになるか"""
        with pytest.raises(ValueError):
            to_svg(cube_chain((0, 0, 0), (1, 1, 0)), tmp_path / "x.svg")


class TestToObj:
    """OBJ出力のテスト"""

    def test_triangle(self, tmp_path):
        """三角形1つが頂点3行と面1行 (正の向きの頂点順) になるか"""
        T = simplex_chain([(0, 0, 0), (1, 0, 0), (0, 1, 0)])
        lines = to_obj(T, tmp_path / "tri.obj").read_text(encoding="utf-8").splitlines()
        assert sum(line.startswith("v ") for line in lines) == 3
        assert [line for line in lines if line.startswith("f ")] == ["f 3 2 1"]

    def test_negative_cell_is_reversed(self, tmp_path):
        """負の係数の線分が逆順の l 行になるか"""
        T = PolyChain.from_simplices(3, 1, [([(0, 0, 0), (1, 0, 0)], -1)])
        lines = to_obj(T, tmp_path / "seg.obj").read_text(encoding="utf-8").splitlines()
        assert lines[-1] == "l 2 1"

    def test_plane_chain_raises(self, tmp_path):
        """n = 2 のチェインでエラーになるか"""
        with pytest.raises(ValueError):
            to_obj(cube_chain((0, 0), (1, 1)), tmp_path / "x.obj")
