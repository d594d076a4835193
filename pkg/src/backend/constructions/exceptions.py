"""constructions パッケージの例外"""


class ConstructionError(Exception):
    """格子構成・多価グラフ抽出まわりの例外の基底クラス"""


class NonMatchingClassError(ConstructionError):
    """重心 Σ s_i W_i が基準平面の W_P0 と一致しない"""


class OrientationError(ConstructionError):
    """原子が P0 に関して正の向きでない"""


class PositivityPostconditionError(ConstructionError):
    """構成したチェインに正の向きでないセルが残った"""


class NegativeCellError(ConstructionError):
    """多価グラフに変換するチェインに負の向き (または鉛直) のセルがある"""


class NonIntegralAfterScaling(ConstructionError):
    """係数に Q を掛けても整数にならない"""


class BoundaryMismatchError(ConstructionError):
    """境界が単位 d 立方体の境界 ∂[D] と一致しない"""
