"""プリセット管理モジュール

責務:
- config/measures/*.json と config/integrands/*.json の読み込み
- pydantic スキーマによる検証
- シングルトンパターンによる一元管理
"""

import json
from pathlib import Path
from typing import ClassVar

from pydantic import BaseModel, ValidationError

from schemas.integrand import IntegrandSchema
from schemas.measure import MeasureSchema

DEFAULT_PRESET_ROOT = Path(__file__).parent.parent.parent / "config"


class PresetManager:
    """名前つきの測度・被積分関数プリセットの管理クラス (シングルトン)

    使用例:
        >>> manager = PresetManager()
        >>> measure = manager.load_measure("three_line_cycle").to_domain()
        >>> manager.list_integrands()
        ['area', 'norm_ellipse', 'sin2theta', 'sin2theta_graph']
    """

    _instance: ClassVar["PresetManager | None"] = None
    _root: Path
    _measures: dict[str, MeasureSchema]
    _integrands: dict[str, IntegrandSchema]

    def __new__(cls, root: Path | None = None) -> "PresetManager":
        """シングルトンインスタンスを返す

        Args:
            root: measures/ と integrands/ を含むディレクトリ (None ならプロジェクトの config/)

        Returns:
            PresetManager: シングルトンインスタンス
        """
        if cls._instance is None or (root is not None and cls._instance._root != Path(root)):
            instance = super().__new__(cls)
            instance._root = Path(root) if root is not None else DEFAULT_PRESET_ROOT
            instance._load_all()
            cls._instance = instance
        return cls._instance

    @classmethod
    def reset(cls) -> None:
        """シングルトンを破棄する (テスト用)"""
        cls._instance = None

    def _load_all(self) -> None:
        self._measures = self._load_dir("measures", MeasureSchema)  # type: ignore[assignment]
        self._integrands = self._load_dir("integrands", IntegrandSchema)  # type: ignore[assignment]

    def _load_dir(self, name: str, schema: type[BaseModel]) -> dict[str, BaseModel]:
        """ディレクトリ内の JSON を読み込む

        Raises:
            ValueError: JSON 形式やスキーマが不正な場合
        """
        directory = self._root / name
        if not directory.is_dir():
            return {}
        presets: dict[str, BaseModel] = {}
        for path in sorted(directory.glob("*.json")):
            presets[path.stem] = load_json_model(path, schema)
        return presets

    def reload(self) -> None:
        """JSON を読み直す"""
        self._load_all()

    def list_measures(self) -> list[str]:
        return sorted(self._measures)

    def list_integrands(self) -> list[str]:
        return sorted(self._integrands)

    def load_measure(self, name: str) -> MeasureSchema:
        """名前から測度プリセットを取得

        Raises:
            ValueError: 未定義の名前の場合
        """
        if name not in self._measures:
            raise ValueError(
                f"measure preset '{name}' is not defined in {self._root / 'measures'} "
                f"(available: {', '.join(self.list_measures())})"
            )
        return self._measures[name]

    def load_integrand(self, name: str) -> IntegrandSchema:
        """名前から被積分関数プリセットを取得

        Raises:
            ValueError: 未定義の名前の場合
        """
        if name not in self._integrands:
            raise ValueError(
                f"integrand preset '{name}' is not defined in {self._root / 'integrands'} "
                f"(available: {', '.join(self.list_integrands())})"
            )
        return self._integrands[name]

    @property
    def root(self) -> Path:
        return self._root


def load_json_model(path: Path, schema: type[BaseModel]) -> BaseModel:
    """JSON ファイルを読み込み、スキーマで検証する

    Raises:
        FileNotFoundError: ファイルがない場合
        ValueError: JSON 形式やスキーマが不正な場合
    """
    if not path.exists():
        raise FileNotFoundError(f"JSON file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
        return schema.model_validate(data)
    except json.JSONDecodeError as e:
        raise ValueError(f"Invalid JSON format in {path}: {e}")
    except ValidationError as e:
        raise ValueError(f"Invalid {schema.__name__} in {path}: {e}")
