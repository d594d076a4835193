"""config.presetsのテスト"""

import json

import pytest

from backend.energy import Integrand, MatrixIntegrand
from config.presets import PresetManager, load_json_model
from schemas.measure import MeasureSchema


class TestPresetManager:
    """PresetManagerのテスト"""

    def test_singleton(self):
        """同じインスタンスが返るか"""
        assert PresetManager() is PresetManager()

    def test_lists_bundled_presets(self):
        """同梱プリセットの一覧"""
        manager = PresetManager()
        assert "three_line_cycle" in manager.list_measures()
        assert manager.list_integrands() == ["area", "norm_ellipse", "sin2theta", "sin2theta_graph"]

    def test_load_measure(self):
        """three_line_cycle の重心が 0 か"""
        measure = PresetManager().load_measure("three_line_cycle").to_domain()
        assert measure.barycenter().is_zero()
        assert len(measure) == 3

    def test_load_integrand(self):
        """sin2theta と sin2theta_graph の型"""
        manager = PresetManager()
        assert isinstance(manager.load_integrand("sin2theta").to_domain(), Integrand)
        assert isinstance(
            manager.load_integrand("sin2theta_graph").to_domain(), MatrixIntegrand
        )

    def test_unknown_name_raises(self):
        """未定義の名前でValueErrorが発生するか"""
        with pytest.raises(ValueError, match="not defined"):
            PresetManager().load_measure("no_such_measure")

    def test_custom_root(self, tmp_preset_dir):
        """一時ディレクトリに追加したプリセットを reload で読めるか"""
        extra = {
            "name": "single",
            "n": 2,
            "d": 1,
            "atoms": [{"basis": [["0", "1"]], "scale": "2"}],
        }
        (tmp_preset_dir / "measures" / "single.json").write_text(json.dumps(extra))
        manager = PresetManager(tmp_preset_dir)
        assert "single" not in manager.list_measures()
        manager.reload()
        assert manager.load_measure("single").to_domain().total_mass() == 2

    def test_invalid_preset_raises(self, tmp_preset_dir):
        """不正なプリセットがあると読み込み時にValueErrorが発生するか"""
        (tmp_preset_dir / "measures" / "broken.json").write_text('{"n": 2, "d": 3}')
        PresetManager.reset()
        with pytest.raises(ValueError):
            PresetManager(tmp_preset_dir)


class TestLoadJsonModel:
    """load_json_modelのテスト"""

    def test_missing_file_raises(self, tmp_path):
        """ファイルがなければFileNotFoundErrorが発生するか"""
        with pytest.raises(FileNotFoundError):
            load_json_model(tmp_path / "missing.json", MeasureSchema)

    def test_malformed_json_raises(self, tmp_path):
        """壊れた JSON でValueErrorが発生するか"""
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(ValueError, match="Invalid JSON"):
            load_json_model(path, MeasureSchema)
