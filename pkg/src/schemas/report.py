import json
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from backend.energy import FillingLPResult


class RunReport(BaseModel):
    """CLI の実行レポート

    timing 以外は同じ RunConfig で決定的 (バイト単位で一致) になる。

    Attributes:
        command: サブコマンド
        parameters: RunConfig の全パラメータ (再現用)
        results: 数値結果
        rows: converge などの表形式の結果
        outputs: 書き出したファイル
        timing: 経過時間 (決定性の比較からは除外)
    """

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "command": "cycle",
                "parameters": {"measure": "three_line_cycle", "sizes": [[1, 4]], "offset_prime": 101},
                "results": {"tv_error": 0.0, "boundary_ok": True, "cells": 96},
                "rows": [],
                "outputs": [],
                "timing": {"wall_time": 0.12},
            }
        }
    )

    command: str = Field(..., description="サブコマンド")
    parameters: dict[str, Any] = Field(default_factory=dict, description="実行パラメータ")
    results: dict[str, Any] = Field(default_factory=dict, description="結果")
    rows: list[dict[str, Any]] = Field(default_factory=list, description="表形式の結果")
    outputs: list[str] = Field(default_factory=list, description="出力ファイル")
    timing: dict[str, float] = Field(default_factory=dict, description="経過時間")

    def deterministic(self) -> dict[str, Any]:
        """timing を除いた部分"""
        return self.model_dump(mode="json", exclude={"timing"})

    def to_json(self) -> str:
        """キーを整列した JSON (末尾改行つき)"""
        payload = json.loads(self.model_dump_json(indent=2))
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    @classmethod
    def example(cls) -> "RunReport":
        return cls(**cls.model_config["json_schema_extra"]["example"])  # type: ignore[index]


class LPAtomReport(BaseModel):
    key: str = Field(..., description="平面のキー")
    omega: list[float] = Field(..., description="単位 d ベクトル")
    mass: float = Field(..., ge=0, description="質量")


class LPReport(BaseModel):
    """充填エネルギー LP のレポート

    gap が正なら多凸性の破れが見つかっている。gap が 0 でも、候補集合が有限なので
    多凸であるとは結論できない (一方向の検出器)。
    """

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "value": 0.848528137,
                "reference": 1.0,
                "gap": 0.151471863,
                "status": "optimal",
                "candidates": ["(1, -1)", "(1, 0)", "(1, 1)"],
                "basis": [0, 2],
                "residual": 0.0,
                "slackness": 0.0,
                "measure": [],
                "witness": True,
            }
        }
    )

    value: float = Field(..., description="LP の最適値")
    reference: float = Field(..., description="Ψ(P0)")
    gap: float = Field(..., description="Ψ(P0) − 最適値")
    status: str = Field(..., description="LP の状態")
    candidates: list[str] = Field(default_factory=list, description="候補平面のキー")
    basis: list[int] = Field(default_factory=list, description="最適基底")
    residual: float = Field(default=0.0, ge=0, description="主残差")
    slackness: float = Field(default=0.0, ge=0, description="相補性の残差")
    measure: list[LPAtomReport] = Field(default_factory=list, description="μ*")
    witness: bool = Field(default=False, description="δ_P0 以外の証人があるか")

    @classmethod
    def from_domain(cls, result: FillingLPResult, witness: bool = False) -> "LPReport":
        atoms = [
            LPAtomReport(
                key=str(key), omega=[round(float(c), 12) for c in omega.coords], mass=round(mass, 12)
            )
            for key, (omega, mass) in sorted(result.measure.atoms.items(), key=lambda kv: repr(kv[0]))
        ]
        return cls(
            value=round(result.value, 12),
            reference=round(result.reference, 12),
            gap=round(result.gap, 12),
            status=result.solution.status,
            candidates=[str(plane.key) for plane in result.candidates],
            basis=list(result.solution.basis),
            residual=float(result.solution.residual),
            slackness=float(result.solution.slackness),
            measure=atoms,
            witness=witness,
        )

    @classmethod
    def example(cls) -> "LPReport":
        return cls(**cls.model_config["json_schema_extra"]["example"])  # type: ignore[index]
