import os
from enum import Enum
from functools import lru_cache
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from typing import Any


class LogLevel(str, Enum):
    """ログレベル

    Attributes:
        DEBUG: デバッグ情報
        INFO: 通常情報
        WARNING: 警告
        ERROR: エラー
    """

    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"


class Settings(BaseSettings):
    """アプリケーション設定 (Pydantic Settings)

    .envファイルから環境変数を読み込み、構成計算の数値パラメータを型安全に管理する。

    Attributes:
        TOLERANCE: 浮動小数点比較の許容誤差
        OFFSET_PRIME: 平面族オフセット v_i = i·(1/p, …, 1/p^n) の素数 p
        MAX_OFFSET_RETRIES: オフセット衝突時に次の素数へ進む最大回数
        QUAD_ORDER: バリフォールド積分の求積次数 (1-3)
        HAUSDORFF_RESOLUTION: ハウスドルフ距離のサンプリング間隔
        COVER_RADIUS: 多価グラフ構成の境界被覆半径 R
        EXTENSION_PITCH: リプシッツ拡張の評価格子間隔
        LIPSCHITZ_CAP: 被覆グラフ1本にまとめる区間同士の最大傾き
        CELL_BUDGET: 1回の構成で生成してよい最大セル数
        COUNTEREXAMPLE_SIZES: 反例探索の (M:N) スケジュール
        WASSERSTEIN_EPS: 有理近似のワッサースタイン許容誤差
        LOG_LEVEL: ログレベル (LogLevel Enum)
    """

    TOLERANCE: float = Field(default=1e-9, gt=0.0, le=1e-3)
    OFFSET_PRIME: int = Field(default=101, ge=5, le=100003)
    MAX_OFFSET_RETRIES: int = Field(default=8, ge=0, le=50)
    QUAD_ORDER: int = Field(default=3, ge=1, le=3)
    HAUSDORFF_RESOLUTION: float = Field(default=1.0 / 64.0, gt=0.0, le=0.5)
    COVER_RADIUS: int = Field(default=6, ge=1, le=20)
    EXTENSION_PITCH: float = Field(default=0.25, gt=0.0, le=1.0)
    LIPSCHITZ_CAP: float = Field(default=4.0, ge=1.0, le=100.0)
    CELL_BUDGET: int = Field(default=200_000, ge=100)
    COUNTEREXAMPLE_SIZES: str = "2:4,3:9,4:16,5:25,6:36,8:64"
    WASSERSTEIN_EPS: float = Field(default=0.05, gt=0.0, le=1.0)
    LOG_LEVEL: LogLevel = LogLevel.INFO

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    def __init__(self: Any, **kwargs: Any) -> None:
        # 環境変数プレセット: DEBUG_LOG が真なら LOG_LEVEL を DEBUG にする
        # ユーザーが明示的に LOG_LEVEL を設定している場合は上書きしない
        if "LOG_LEVEL" not in kwargs and os.getenv("LOG_LEVEL") is None:
            debug_env = os.getenv("DEBUG_LOG")
            if isinstance(debug_env, str) and debug_env.lower() in (
                "1",
                "true",
                "yes",
                "on",
            ):
                kwargs.setdefault("LOG_LEVEL", LogLevel.DEBUG)

        # .envファイルの存在チェック
        if not os.path.exists(".env") and not kwargs:
            raise FileNotFoundError(
                "\n❌ .env file not found.\n"
                "Please copy .env.example to .env and configure it:\n"
                "  cp .env.example .env  (Linux/Mac)\n"
                "  Copy-Item .env.example .env  (Windows)\n"
            )

        super().__init__(**kwargs)

    @field_validator("COUNTEREXAMPLE_SIZES")
    @classmethod
    def _check_sizes(cls, value: str) -> str:
        parse_size_schedule(value)
        return value

    def size_schedule(self) -> list[tuple[int, int]]:
        """反例探索スケジュールを (M, N) のリストで返す

        Returns:
            list[tuple[int, int]]: 昇順の (M, N) 組
        """
        return parse_size_schedule(self.COUNTEREXAMPLE_SIZES)


def parse_size_schedule(text: str) -> list[tuple[int, int]]:
    """"M:N,M:N,..." 形式の文字列を解析する

    Args:
        text: スケジュール文字列 (例: "3:9,4:16")

    Returns:
        list[tuple[int, int]]: (M, N) のリスト

    Raises:
        ValueError: 書式不正または N < M の場合

    Examples:
        >>> parse_size_schedule("3:9,4:16")
        [(3, 9), (4, 16)]
    """
    pairs: list[tuple[int, int]] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            m_text, n_text = chunk.split(":")
            m, n = int(m_text), int(n_text)
        except ValueError as e:
            raise ValueError(f"Invalid size entry '{chunk}' (expected M:N)") from e
        if m < 2 or n < m:
            raise ValueError(f"Invalid size entry '{chunk}': need 2 <= M <= N")
        pairs.append((m, n))
    if not pairs:
        raise ValueError("Size schedule is empty")
    return pairs


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """プロセス共通の設定インスタンスを返す

    Returns:
        Settings: キャッシュ済み設定
    """
    return Settings()
