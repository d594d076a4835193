"""バリフォールド対 ⟨V(T), f⟩ の単体求積

求積点は重心座標で固定する (再現性のため)。
- 次数 1: 重心
- 次数 2: 対称な d+1 点 (b = (d+2−√(d+2))/((d+1)(d+2)), a = 1 − d·b, 重み 1/(d+1))
- 次数 3: d=1 は 2 点ガウス、d=2 は 6 点の三角形公式、d≥3 は次数 2 の公式
"""

from functools import lru_cache
from math import sqrt
from typing import Callable

import numpy as np

from .chain import PolyChain
from .simplex import cell_volume, cell_wedge

TestFunction = Callable[[np.ndarray, tuple[int, ...]], float]

_TRIANGLE_SIX = (
    (0.223381589678011, (0.108103018168070, 0.445948490915965, 0.445948490915965)),
    (0.109951743655322, (0.816847572980459, 0.091576213509771, 0.091576213509771)),
)


def _rotations(point: tuple[float, ...]) -> list[tuple[float, ...]]:
    seen = []
    for shift in range(len(point)):
        rotated = point[shift:] + point[:shift]
        if rotated not in seen:
            seen.append(rotated)
    return seen


def _symmetric_degree_two(d: int) -> tuple[np.ndarray, np.ndarray]:
    b = (d + 2 - sqrt(d + 2)) / ((d + 1) * (d + 2))
    a = 1.0 - d * b
    nodes = np.full((d + 1, d + 1), b)
    np.fill_diagonal(nodes, a)
    return nodes, np.full(d + 1, 1.0 / (d + 1))


@lru_cache(maxsize=None)
def quadrature_rule(d: int, order: int) -> tuple[np.ndarray, np.ndarray]:
    """(重心座標の求積点 (m, d+1), 重み (m,)) を返す。重みの和は 1。

    Examples:
        >>> nodes, weights = quadrature_rule(2, 1)
        >>> nodes.tolist(), weights.tolist()
        ([[0.3333333333333333, 0.3333333333333333, 0.3333333333333333]], [1.0])
    """
    if order not in (1, 2, 3):
        raise ValueError(f"quadrature order must be 1, 2 or 3, got {order}")
    if d == 0:
        return np.ones((1, 1)), np.ones(1)
    if order == 1:
        return np.full((1, d + 1), 1.0 / (d + 1)), np.ones(1)
    if order == 3 and d == 2:
        nodes, weights = [], []
        for weight, point in _TRIANGLE_SIX:
            for rotated in _rotations(point):
                nodes.append(rotated)
                weights.append(weight)
        return np.array(nodes), np.array(weights)
    return _symmetric_degree_two(d)


def varifold_pair(chain: PolyChain, function: TestFunction, order: int = 3) -> float:
    """Σ_cells |a|·vol·Σ_nodes w·f(x_node, 向きなしキー)

    Args:
        chain: 多面体チェイン
        function: f(点 (numpy 配列), 向きなし平面キー)
        order: 求積次数 (1-3)

    Returns:
        float: 対の値 (次数 order までの多項式に厳密)

    Examples:
        >>> T = PolyChain.from_simplices(2, 1, [([(0, 0), (1, 0)], 1)])
        >>> round(varifold_pair(T, lambda x, key: x[0]), 12)
        0.5
    """
    nodes, weights = quadrature_rule(chain.d, order)
    total = 0.0
    for cell, coeff in chain.items():
        vertices = np.array([[float(x) for x in v] for v in cell])
        points = nodes @ vertices
        key = cell_wedge(cell).unoriented_key() if chain.d > 0 else ()
        volume = cell_volume(cell) if chain.d > 0 else 1.0
        inner = sum(w * function(p, key) for w, p in zip(weights, points))
        total += float(abs(coeff)) * volume * inner
    return total
