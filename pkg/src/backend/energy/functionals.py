"""エネルギー汎関数

- energy_chain: F_Ψ(T) = ∫ Ψ dγ_T
- energy_multigraph: F_ψ(u) = Σ 区間の長さ·Σ_シート ψ(傾き)
- energy_report: 原子ごとの寄与
"""

from fractions import Fraction
from math import factorial
from typing import Any

import numpy as np

from backend.chains import PolyChain
from backend.constructions import QValuedPL
from backend.logging import energy_logger as logger

from .exceptions import NonGraphCellError
from .integrands import Integrand, MatrixIntegrand


def energy_chain(integrand: Integrand, chain: PolyChain) -> float:
    """∫ Ψ dγ_T = Σ_原子 質量·Ψ(原子)

    Examples:
        >>> from backend.chains import cube_chain
        >>> energy_chain(Integrand.area(2, 1), cube_chain((0, 0), (3, 0)))
        3.0
    """
    return chain.gaussian_image().integrate(integrand)


def energy_report(integrand: Integrand, chain: PolyChain) -> list[dict[str, Any]]:
    """ガウス像の原子ごとの (キー, 質量, Ψ, 寄与) を寄与の降順で返す"""
    rows = []
    for key, (omega, mass) in chain.gaussian_image().atoms.items():
        value = integrand(omega)
        rows.append(
            {
                "key": list(key),
                "omega": [float(c) for c in omega.coords],
                "mass": mass,
                "psi": value,
                "contribution": mass * value,
            }
        )
    rows.sort(key=lambda row: (-row["contribution"], row["key"]))
    return rows


def _graph_cell(cell: tuple, d: int) -> tuple[np.ndarray, float]:
    """セルを P0 上のグラフとして読み、傾き X と射影の体積 (符号つき) を返す"""
    vertices = np.asarray([[float(x) for x in v] for v in cell])
    edges = (vertices[1:] - vertices[0]).T
    head, tail = edges[:d], edges[d:]
    det = float(np.linalg.det(head))
    if abs(det) < 1e-14:
        raise NonGraphCellError(f"cell {cell} projects to a degenerate simplex of P0")
    slope = tail @ np.linalg.inv(head)
    return slope, det / factorial(d)


def energy_multigraph(integrand: MatrixIntegrand, target: QValuedPL | PolyChain) -> float:
    """F_ψ(u)

    Q 価関数なら区間ごとに Σ_シート ψ(傾き)·長さ。チェインなら整数グラフカレント
    [Λ_u] とみなし Σ 係数·(射影の体積)·ψ(X) を返す。

    Raises:
        NonGraphCellError: 射影が特異なセル、または負の向きのセルがある場合
    """
    if isinstance(target, QValuedPL):
        total = 0.0
        for k, sheets in enumerate(target.sheets):
            width = target.breakpoints[k + 1] - target.breakpoints[k]
            for left, right in sheets:
                slope = [[float((b - a) / width)] for a, b in zip(left, right)]
                total += float(width) * integrand(slope)
        logger.debug(f"energy_multigraph: Q={target.multiplicity}, value={total:.9g}")
        return total

    total = 0.0
    for cell, coeff in target.items():
        slope, volume = _graph_cell(cell, integrand.d)
        weight = coeff * Fraction(1 if volume > 0 else -1)
        if weight <= 0:
            raise NonGraphCellError(f"cell {cell} is negatively oriented over P0")
        total += float(weight) * abs(volume) * integrand(slope)
    return total
