"""構成結果 (ConstructionResult)"""

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from backend.chains import PolyChain, hausdorff_distance
from backend.grassmann import FloatMeasure


@dataclass
class ConstructionResult:
    """格子構成の出力と検査値

    Attributes:
        chain: 構成した多面体チェイン
        target: 目標測度 μ (浮動小数点形)
        tv_error: ‖γ_chain − μ‖_TV
        mass: チェインの質量
        boundary_ok: 境界条件 (サイクル、∂[D]) を厳密に満たすか
        c_constant: TV 誤差の定数 c = 2n·mass(Q̃ ∩ ∂[F]) (サイクル構成のみ)
        positive: すべてのセルが正の向きか (多価グラフ構成のみ)
        parameters: 使用したパラメータ (N, M, 素数など)
    """

    chain: PolyChain
    target: FloatMeasure
    tv_error: float
    mass: float
    boundary_ok: bool
    c_constant: float | None = None
    positive: bool | None = None
    parameters: dict[str, Any] = field(default_factory=dict)

    def hausdorff_to(self, reference: Any, resolution: float) -> float:
        """supp(chain) と参照集合 (サンプラーまたは点群) のハウスドルフ距離"""
        if isinstance(reference, list):
            reference = np.asarray(reference, dtype=float)
        return hausdorff_distance(self.chain, reference, resolution)

    def summary(self) -> dict[str, Any]:
        """レポート用の要約 (セル数・誤差・フラグ)"""
        return {
            "cells": len(self.chain),
            "tv_error": self.tv_error,
            "mass": self.mass,
            "boundary_ok": self.boundary_ok,
            "c_constant": self.c_constant,
            "positive": self.positive,
            **self.parameters,
        }
