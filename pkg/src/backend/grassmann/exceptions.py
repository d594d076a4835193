"""grassmann パッケージの例外"""


class GrassmannError(Exception):
    """グラスマン多様体・外積代数まわりの例外の基底クラス"""


class DimensionMismatchError(GrassmannError):
    """行列・多重ベクトルの次元 (n, d) が一致しない"""


class RankDeficientError(GrassmannError):
    """基底がランク落ちしていて d 次元平面を張らない"""


class ExactFloatMixError(GrassmannError):
    """厳密 (有理数) 表現と浮動小数点表現を暗黙に混ぜようとした"""


class MassMismatchError(GrassmannError):
    """比較する測度の全質量が許容誤差を超えて異なる"""


class NotSimpleError(GrassmannError):
    """d ベクトルが単純 (分解可能) でなく平面に対応しない"""
