"""正の向きの 1 チェインから Q 価 PL 関数を取り出す

B = Q^{−1}[graph u] となる Q と u を求める。Q は係数の分母の最小公倍数。
定義域を頂点の x 座標で区間に切り、各区間ではシートを中点での値の順に並べる。
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from backend.chains import PolyChain, chain_from_cells, reduce
from backend.chains.simplex import Point
from backend.grassmann.linalg import as_fraction
from backend.logging import construction_logger as logger

from .exceptions import BoundaryMismatchError, NegativeCellError, NonIntegralAfterScaling

Value = tuple[Fraction, ...]
Sheet = tuple[Value, Value]


@dataclass(frozen=True)
class QValuedPL:
    """区間ごとに Q 枚のアフィンシートを持つ PL 関数 [a, b] → A_Q(R^{n−1})

    Attributes:
        breakpoints: 区間の端点 (昇順)
        sheets: 区間ごとのシート (左端の値, 右端の値) の列 (中点の値で昇順)
        multiplicity: Q

    Examples:
        >>> u = QValuedPL((Fraction(0), Fraction(1)), ((((Fraction(0),), (Fraction(0),)),),), 1)
        >>> u.evaluate("1/2")
        [(Fraction(0, 1),)]
    """

    breakpoints: tuple[Fraction, ...]
    sheets: tuple[tuple[Sheet, ...], ...]
    multiplicity: int

    @property
    def sheet_count(self) -> int:
        return self.multiplicity

    @property
    def domain(self) -> tuple[Fraction, Fraction]:
        return self.breakpoints[0], self.breakpoints[-1]

    @property
    def codimension(self) -> int:
        return len(self.sheets[0][0][0])

    @property
    def lipschitz(self) -> float:
        """シートの傾きの最大値 (ユークリッドノルム)"""
        best = 0.0
        for k, sheets in enumerate(self.sheets):
            width = float(self.breakpoints[k + 1] - self.breakpoints[k])
            for left, right in sheets:
                slope = np.asarray([float(b - a) for a, b in zip(left, right)]) / width
                best = max(best, float(np.linalg.norm(slope)))
        return best

    def _interval(self, x: Fraction) -> int:
        lo, hi = self.domain
        if not lo <= x <= hi:
            raise ValueError(f"x = {x} outside the domain [{lo}, {hi}]")
        for k in range(len(self.sheets)):
            if x <= self.breakpoints[k + 1]:
                return k
        return len(self.sheets) - 1

    def evaluate(self, x: object) -> list[Value]:
        """x での Q 個の値 (昇順)"""
        point = as_fraction(x)
        k = self._interval(point)
        a, b = self.breakpoints[k], self.breakpoints[k + 1]
        t = (point - a) / (b - a)
        values = [
            tuple(l + t * (r - l) for l, r in zip(left, right)) for left, right in self.sheets[k]
        ]
        return sorted(values)

    def is_continuous(self) -> bool:
        """隣り合う区間で、共有端点の値が多重集合として一致するか"""
        for k in range(len(self.sheets) - 1):
            right = sorted(sheet[1] for sheet in self.sheets[k])
            left = sorted(sheet[0] for sheet in self.sheets[k + 1])
            if right != left:
                return False
        return True

    def graph_chain(self) -> PolyChain:
        """Q^{−1}·Σ (シートのグラフ) を正規化したチェイン"""
        n = self.codimension + 1
        weight = Fraction(1, self.multiplicity)
        pieces = []
        for k, sheets in enumerate(self.sheets):
            a, b = self.breakpoints[k], self.breakpoints[k + 1]
            for left, right in sheets:
                pieces.append(([(a,) + left, (b,) + right], weight))
        return reduce(chain_from_cells(n, 1, pieces, check=True))


def _value_at(start: Point, end: Point, x: Fraction) -> Value:
    t = (x - start[0]) / (end[0] - start[0])
    return tuple(a + t * (b - a) for a, b in zip(start[1:], end[1:]))


def scaling_factor(coefficients: Sequence[Fraction], q: int | None = None) -> int:
    """係数を整数にする Q (指定があれば整数になるか検査する)"""
    if q is None:
        return lcm(*(c.denominator for c in coefficients)) if coefficients else 1
    if q < 1:
        raise ValueError(f"Q must be a positive integer, got {q}")
    bad = [c for c in coefficients if (c * q).denominator != 1]
    if bad:
        raise NonIntegralAfterScaling(f"coefficient {bad[0]} times Q={q} is not an integer")
    return q


def extract_qvalued(chain: PolyChain, q: int | None = None) -> tuple[int, QValuedPL]:
    """正の向きの 1 チェインを Q 価関数のグラフとして読む

    Args:
        chain: 正の向きの 1 チェイン (x 方向が定義域)
        q: 使う Q (省略時は係数の分母の最小公倍数)

    Returns:
        tuple[int, QValuedPL]: Q と関数

    Raises:
        NegativeCellError: 負の向きまたは鉛直なセルがある場合
        NonIntegralAfterScaling: Q 倍しても係数が整数にならない場合
        BoundaryMismatchError: どこかの区間でシートの総数が Q にならない場合
    """
    if chain.d != 1:
        raise ValueError(f"extraction needs a 1-chain, got grade {chain.d}")
    if chain.is_empty():
        raise BoundaryMismatchError("empty chain is not a graph over an interval")
    segments = []
    for cell, coeff in reduce(chain).items():
        start, end = cell
        if end[0] < start[0]:
            start, end, coeff = end, start, -coeff
        if end[0] == start[0] or coeff <= 0:
            raise NegativeCellError(f"cell {cell} with coefficient {coeff} is not positive")
        segments.append((start, end, coeff))

    multiplicity = scaling_factor([c for _, _, c in segments], q)
    breakpoints = sorted({x for s, e, _ in segments for x in (s[0], e[0])})

    intervals: list[tuple[Sheet, ...]] = []
    for a, b in zip(breakpoints, breakpoints[1:]):
        middle = (a + b) / 2
        found: list[tuple[Value, Sheet]] = []
        for start, end, coeff in segments:
            if start[0] <= a and b <= end[0]:
                sheet = (_value_at(start, end, a), _value_at(start, end, b))
                found.extend([(_value_at(start, end, middle), sheet)] * int(coeff * multiplicity))
        if len(found) != multiplicity:
            raise BoundaryMismatchError(
                f"{len(found)} sheets over [{a}, {b}], expected Q={multiplicity}"
            )
        intervals.append(tuple(sheet for _, sheet in sorted(found)))

    result = QValuedPL(tuple(breakpoints), tuple(intervals), multiplicity)
    logger.info(
        f"extract_qvalued: Q={multiplicity}, {len(intervals)} intervals, "
        f"lipschitz={result.lipschitz:.6g}"
    )
    return multiplicity, result

