"""カレントとしての厳密な等号判定と正規化

- is_zero: アフィン包ごとにセルをまとめ、各組の境界がカレントとして 0 かを再帰的に調べる
  (d 平面内のコンパクト台の d カレントは境界が 0 なら 0)。次数 0 は形式的な打ち消しで厳密。
- reduce: 次数 ≤ 1 では同一直線上の線分を係数一定の極大区間にまとめる。
  次数 ≥ 2 では形式的な併合と退化セルの除去のみ。
"""

from collections import defaultdict
from fractions import Fraction

from backend.logging import chains_logger as logger

from .chain import PolyChain, chain_from_cells
from .simplex import Cell, Point, affine_span_key, is_degenerate


def _group_by_span(chain: PolyChain) -> dict[tuple, dict[Cell, Fraction]]:
    groups: dict[tuple, dict[Cell, Fraction]] = defaultdict(dict)
    for cell, coeff in chain.items():
        if is_degenerate(cell):
            continue
        groups[affine_span_key(cell)][cell] = coeff
    return groups


def is_zero(chain: PolyChain) -> bool:
    """T = 0 がカレントとして成り立つか (三角形分割の違いを無視した厳密判定)

    Examples:
        >>> from backend.chains.affine import cube_chain
        >>> square = cube_chain((0, 0), (1, 1))
        >>> other = PolyChain.from_simplices(
        ...     2, 2, [([(0, 0), (1, 0), (0, 1)], 1), ([(1, 0), (1, 1), (0, 1)], 1)]
        ... )
        >>> is_zero(square - other)
        True
    """
    if chain.is_empty():
        return True
    if chain.d == 0:
        return False
    for group in _group_by_span(chain).values():
        part = PolyChain(chain.n, chain.d, group)
        if not is_zero(part.boundary()):
            return False
    return True


def currents_equal(left: PolyChain, right: PolyChain) -> bool:
    """A = B がカレントとして成り立つか"""
    return is_zero(left - right)


def _reduce_segments(chain: PolyChain) -> PolyChain:
    lines: dict[tuple, list[tuple[Cell, Fraction]]] = defaultdict(list)
    for cell, coeff in chain.items():
        if cell[0] == cell[1]:
            continue
        lines[affine_span_key(cell)].append((cell, coeff))

    pieces: list[tuple[list[Point], Fraction]] = []
    for (direction, _), group in sorted(lines.items()):
        u = tuple(Fraction(c) for c in direction)
        norm2 = sum(c * c for c in u)
        anchor = group[0][0][0]

        def param(point: Point) -> Fraction:
            return sum(((x - a) * c for x, a, c in zip(point, anchor, u)), Fraction(0)) / norm2

        events: dict[Fraction, Fraction] = defaultdict(Fraction)
        for (start, end), coeff in group:
            t0, t1 = param(start), param(end)
            if t0 > t1:
                t0, t1, coeff = t1, t0, -coeff
            events[t0] += coeff
            events[t1] -= coeff

        running = Fraction(0)
        current_start: Fraction | None = None
        current_value = Fraction(0)
        for t in sorted(events):
            running += events[t]
            if running == current_value:
                continue
            if current_value != 0 and current_start is not None:
                pieces.append((_segment(anchor, u, current_start, t), current_value))
            current_start, current_value = t, running
    merged = chain_from_cells(chain.n, 1, pieces, check=False)
    return merged


def _segment(anchor: Point, u: tuple[Fraction, ...], t0: Fraction, t1: Fraction) -> list[Point]:
    return [
        tuple(a + t0 * c for a, c in zip(anchor, u)),
        tuple(a + t1 * c for a, c in zip(anchor, u)),
    ]


def reduce(chain: PolyChain) -> PolyChain:
    """正規化 (カレントとしては不変)

    Examples:
        >>> T = PolyChain.from_simplices(2, 1, [([(0, 0), (1, 0)], 1), ([(1, 0), (2, 0)], 1)])
        >>> len(reduce(T))
        1
    """
    if chain.d == 0:
        return chain
    if chain.d == 1:
        result = _reduce_segments(chain)
        logger.debug(f"reduce: {len(chain)} segments -> {len(result)}")
        return result
    cells = {cell: coeff for cell, coeff in chain.items() if not is_degenerate(cell)}
    return PolyChain(chain.n, chain.d, cells)
