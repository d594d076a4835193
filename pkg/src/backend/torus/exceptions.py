"""torus パッケージの例外"""


class TorusError(Exception):
    """トーラス上の平面族・充填まわりの例外の基底クラス"""


class NonZeroClassError(TorusError):
    """Σ s_i W_i が厳密に 0 でない (サイクルが境界にならない)"""


class DegenerateOffsetError(TorusError):
    """素数を取り替えても平面族のオフセットが一般の位置にならなかった"""


class FillingPostconditionError(TorusError):
    """構成した充填 Q が周期的に ∂Q = S を満たさない"""
