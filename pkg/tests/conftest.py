"""pytest設定とフィクスチャ"""

import os
import shutil
import sys
from pathlib import Path

import pytest

# srcディレクトリをパスに追加
project_root = Path(__file__).parent.parent
src_dir = project_root / "src"
sys.path.insert(0, str(src_dir))

# テスト実行前に.envファイルを準備(.env.exampleからコピー)
env_file = project_root / ".env"
env_example = project_root / ".env.example"
if not env_file.exists() and env_example.exists():
    shutil.copy(env_example, env_file)

# .env はカレントディレクトリから読まれるのでプロジェクトルートで実行する
os.chdir(project_root)

# 実際の環境変数がテストに影響しないよう上書きする
os.environ["OFFSET_PRIME"] = "101"
os.environ["MAX_OFFSET_RETRIES"] = "8"
os.environ["LOG_LEVEL"] = "INFO"
os.environ.pop("DEBUG_LOG", None)


@pytest.fixture
def project_root_path():
    """プロジェクトルートのパスを返す"""
    return project_root


@pytest.fixture
def settings():
    """キャッシュされた設定"""
    from config.settings import get_settings

    return get_settings()


@pytest.fixture
def three_line_cycle_measure():
    """重心 0 の3原子測度 W = (1,1), (1,−1), (−2,0)"""
    from backend.grassmann import GrassmannMeasure

    return GrassmannMeasure.from_bases(
        2, 1, [([(1, 1)], 1), ([(1, -1)], 1), ([(-2, 0)], 1)]
    )


@pytest.fixture
def diagonal_measure():
    """重心 e1 の測度 (対角線 2 本、スケール 1/2)"""
    from backend.grassmann import GrassmannMeasure

    return GrassmannMeasure.from_bases(2, 1, [([(1, 1)], "1/2"), ([(1, -1)], "1/2")])


@pytest.fixture
def sin2theta():
    """Ψ(θ) = 1 − 0.4|sin 2θ|"""
    from backend.energy import Integrand

    return Integrand.sin2theta(0.4)


@pytest.fixture
def tmp_preset_dir(tmp_path):
    """プリセットを一時ディレクトリにコピーし、PresetManager をそこに向ける"""
    from config.presets import PresetManager

    for name in ("measures", "integrands"):
        shutil.copytree(project_root / "config" / name, tmp_path / name)
    PresetManager.reset()
    PresetManager(tmp_path)
    yield tmp_path
    PresetManager.reset()


@pytest.fixture(autouse=True)
def reset_preset_singleton():
    """PresetManagerシングルトンをテストごとにリセット"""
    yield
    try:
        from config.presets import PresetManager

        PresetManager.reset()
    except ImportError:
        pass  # インポートできない場合はスキップ
