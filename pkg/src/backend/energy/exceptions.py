"""energy パッケージの例外"""


class EnergyError(Exception):
    """エネルギー評価・LP・近似まわりの例外の基底クラス"""


class IntegrandError(EnergyError):
    """被積分関数の定義が不正、または正でない値を返した"""


class NonGraphCellError(EnergyError):
    """セルが P0 上のグラフになっていない (射影が特異)"""


class ConeInfeasible(EnergyError):
    """正の場合の錐補正が許容誤差内で非負にならない"""


class GapTooSmall(EnergyError):
    """セル予算内でエネルギーギャップを保証できなかった"""
