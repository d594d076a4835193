"""台のハウスドルフ距離

両方の集合を間隔 h で標本化し、scipy.spatial.cKDTree の最近傍距離で
有向距離を求める (誤差は ±2h 程度)。
"""

from itertools import product
from math import ceil
from typing import Callable, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .chain import PolyChain
from .exceptions import EmptyChainError

Sampler = Callable[[float], np.ndarray]


def _compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    if parts == 1:
        return [(total,)]
    result = []
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            result.append((first,) + rest)
    return result


def sample_chain(chain: PolyChain, resolution: float) -> np.ndarray:
    """各セルの重心座標格子 (辺の長さ / h 分割) の点"""
    if chain.is_empty():
        raise EmptyChainError("cannot sample the support of an empty chain")
    samples = []
    for cell, _ in chain.items():
        vertices = np.array([[float(x) for x in v] for v in cell])
        if len(cell) == 1:
            samples.append(vertices)
            continue
        diameter = max(
            float(np.linalg.norm(a - b)) for a in vertices for b in vertices
        )
        steps = max(1, ceil(diameter / resolution))
        weights = np.array(_compositions(steps, len(cell)), dtype=float) / steps
        samples.append(weights @ vertices)
    return np.unique(np.vstack(samples), axis=0)


def box_sampler(lo: Sequence[float], hi: Sequence[float]) -> Sampler:
    """軸平行な箱 [lo, hi] の格子点を返すサンプラー"""
    lower = np.asarray(lo, dtype=float)
    upper = np.asarray(hi, dtype=float)

    def sample(resolution: float) -> np.ndarray:
        axes = [
            np.linspace(a, b, max(2, ceil((b - a) / resolution) + 1)) if b > a else np.array([a])
            for a, b in zip(lower, upper)
        ]
        return np.array(list(product(*axes)))

    return sample


def cube_in_plane(n: int, d: int) -> Sampler:
    """P0 内の単位 d 立方体 [0,1]^d × {0} のサンプラー"""
    return box_sampler([0.0] * n, [1.0] * d + [0.0] * (n - d))


def hausdorff_distance(
    chain: PolyChain, reference: Sampler | np.ndarray, resolution: float
) -> float:
    """supp T と参照集合の対称ハウスドルフ距離

    Args:
        chain: 多面体チェイン
        reference: 点群 (m, n) または h を受け取るサンプラー
        resolution: 標本間隔 h (> 0)

    Returns:
        float: 距離

    Raises:
        EmptyChainError: チェインが空の場合

    Examples:
        >>> T = PolyChain.point(("1/2", "1/2"))
        >>> round(hausdorff_distance(T, box_sampler([0, 0], [1, 1]), 0.25), 4)
        0.7071
    """
    if resolution <= 0:
        raise ValueError(f"resolution must be positive, got {resolution}")
    ours = sample_chain(chain, resolution)
    theirs = reference(resolution) if callable(reference) else np.asarray(reference, float)
    forward, _ = cKDTree(theirs).query(ours)
    backward, _ = cKDTree(ours).query(theirs)
    return float(max(forward.max(), backward.max()))
