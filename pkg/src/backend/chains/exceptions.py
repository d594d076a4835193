"""chains パッケージの例外"""


class ChainError(Exception):
    """多面体チェインまわりの例外の基底クラス"""


class DegenerateSimplexError(ChainError):
    """単体の頂点がアフィン独立でない"""


class TransversalityError(ChainError):
    """横断性が成り立たない (スライス平面や格子面がセルの骨格に触れる)"""


class EmptyChainError(ChainError):
    """空のチェインには定義されない操作が呼ばれた"""


class SingularMapError(ChainError):
    """アフィン写像の線形部分が正則でない"""
