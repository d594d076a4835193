"""RunConfig: CLI の実行パラメータ

すべてのパラメータはレポートの parameters にそのまま書き出す (再現用)。
"""

from math import isqrt
from typing import Any, Literal

from pydantic import BaseModel, Field, field_validator
from sympy import isprime

from config.settings import get_settings, parse_size_schedule

Command = Literal[
    "cycle",
    "fill",
    "multigraph",
    "extract",
    "energy",
    "lp",
    "approx",
    "counterexample",
    "converge",
    "export",
]


class RunConfig(BaseModel):
    """1回の CLI 実行の設定

    Attributes:
        command: サブコマンド
        measure: 測度 JSON のパスまたはプリセット名
        chain: チェイン JSON のパス
        psi: 被積分関数 JSON のパスまたはプリセット名
        candidates: LP の候補 ("angle:STEP"、"cone"、または測度のパス/プリセット名)
        out: 出力先
        size: N
        height: M
        sizes: (M, N) のリスト (converge / counterexample)
        steps: タイリングの段数 i
        q: extract で使う Q
        eps: 有理近似のワッサースタイン許容誤差
        positive: approx で正の錐の補正を使うか
        mode: converge の構成
        format: 出力形式
        offset_prime: オフセットの素数
        quad_order: 求積次数
        tolerance: 比較の許容誤差
    """

    command: Command = Field(..., description="サブコマンド")
    measure: str | None = Field(default=None, description="測度 (パスまたはプリセット名)")
    chain: str | None = Field(default=None, description="チェイン JSON のパス")
    psi: str | None = Field(default=None, description="被積分関数 (パスまたはプリセット名)")
    candidates: str | None = Field(default=None, description="LP の候補")
    out: str | None = Field(default=None, description="出力先")
    size: int | None = Field(default=None, ge=1, le=4096, description="N")
    height: int | None = Field(default=None, ge=1, le=4096, description="M")
    sizes: list[tuple[int, int]] = Field(default_factory=list, description="(M, N) のリスト")
    steps: int = Field(default=0, ge=0, le=8, description="タイリングの段数")
    q: int | None = Field(default=None, ge=1, description="Q")
    eps: float | None = Field(default=None, gt=0, le=1, description="ワッサースタイン許容誤差")
    positive: bool = Field(default=False, description="正の錐の補正")
    witness: bool = Field(default=False, description="厳密なギャップの証人を探すか")
    mode: Literal["cycle", "fill", "multigraph"] = Field(default="cycle", description="構成")
    format: Literal["json", "csv", "svg", "obj"] = Field(default="json", description="出力形式")
    offset_prime: int | None = Field(default=None, description="オフセットの素数")
    quad_order: int | None = Field(default=None, ge=1, le=3, description="求積次数")
    tolerance: float | None = Field(default=None, gt=0, le=1e-3, description="許容誤差")

    @field_validator("offset_prime")
    @classmethod
    def _check_prime(cls, value: int | None) -> int | None:
        if value is not None and (value < 5 or not isprime(value)):
            raise ValueError(f"offset prime must be a prime >= 5, got {value}")
        return value

    @field_validator("sizes", mode="before")
    @classmethod
    def _parse_sizes(cls, value: Any) -> Any:
        if isinstance(value, str):
            return parse_sizes(value)
        return value

    # --------------------------
    #  設定値の解決
    # --------------------------

    def resolved_quad_order(self) -> int:
        return self.quad_order if self.quad_order is not None else get_settings().QUAD_ORDER

    def resolved_tolerance(self) -> float:
        return self.tolerance if self.tolerance is not None else get_settings().TOLERANCE

    def grid(self) -> tuple[int, int]:
        """(M, N)。M を省略したら max(2, ⌊√N⌋)"""
        if self.size is None:
            raise ValueError(f"'{self.command}' needs --size N")
        height = self.height if self.height is not None else max(2, isqrt(self.size))
        if height < 2 or height > self.size:
            raise ValueError(f"need 2 <= M <= N, got M={height}, N={self.size}")
        return height, self.size

    def echo(self) -> dict[str, Any]:
        """レポートに書き出すパラメータ (None は省く)"""
        return self.model_dump(mode="json", exclude_none=True)


def parse_sizes(text: str) -> list[tuple[int, int]]:
    """"4,8,16" または "3:9,4:16" を (M, N) のリストにする

    M を省略した項目は M = max(2, ⌊√N⌋) とする。

    Raises:
        ValueError: 書式が不正な場合

    Examples:
        >>> parse_sizes("4,8,16")
        [(2, 4), (2, 8), (4, 16)]
        >>> parse_sizes("3:9,4:16")
        [(3, 9), (4, 16)]
    """
    pairs: list[tuple[int, int]] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ":" in chunk:
            pairs.extend(parse_size_schedule(chunk))
            continue
        try:
            size = int(chunk)
        except ValueError as e:
            raise ValueError(f"Invalid size entry '{chunk}' (expected N or M:N)") from e
        if size < 2:
            raise ValueError(f"Invalid size entry '{chunk}': need N >= 2")
        pairs.append((max(2, isqrt(size)), size))
    if not pairs:
        raise ValueError("Size list is empty")
    return pairs
