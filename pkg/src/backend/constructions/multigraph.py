"""多価グラフ構成 (d = 1): すべての接平面が P0 に関して正の向きのチェイン

剪断セル F = K([0,1]^n), K(x) = (x_1 + x_n, x_2, …, x_n) で E = ∪_{j∈J} F_j を作り、
A_0 = ∂(Q̃⌞E) に次の正の向きのグラフを足して負の向きのセルを打ち消す。

- 台地グラフ f_h: −P0 の平面 (高さ h) を I_{N+2M} 上で覆い、±(N+3M) で 0 に下りる
- 被覆グラフ g_c: ∂E 上の負の向きのセルの鎖を通る PL グラフ (inf 畳み込みによる拡張)

B_0 = A_0 + Σ f_h + Σ w_c g_c の境界は α(δ_{(N+3M)e_1} − δ_{−(N+3M)e_1}) なので、
α で割って平行移動・縮小すれば ∂B = ∂[0,1] となる。
"""

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor

from backend.chains import PolyChain, chain_from_cells, currents_equal, reduce, shrink, translate
from backend.chains.simplex import Cell, Point
from backend.grassmann import GrassmannMeasure, RationalPlane, is_positively_oriented, tv_distance
from backend.logging import construction_logger as logger
from backend.torus import LatticeCell, build_periodic_filling, region_cycle, split_tile
from config.settings import get_settings

from .common import check_matching_class, is_identity, unit_disc, with_offset_retries
from .exceptions import OrientationError, PositivityPostconditionError
from .filling import plane_heights
from .result import ConstructionResult

Value = tuple[Fraction, ...]
RowKey = tuple[object, ...]


@dataclass
class Piece:
    """x 座標が増える向きに並べた線分と、その負の係数の大きさ

    Attributes:
        start: 左端 (x, y)
        end: 右端 (x, y)
        deficit: 打ち消すのに必要な重み
    """

    start: Point
    end: Point
    deficit: Fraction

    @property
    def x_range(self) -> tuple[Fraction, Fraction]:
        return self.start[0], self.end[0]

    def slope(self) -> Fraction:
        width = self.end[0] - self.start[0]
        return max(abs(b - a) for a, b in zip(self.start[1:], self.end[1:])) / width

    def value_at(self, x: Fraction) -> Value:
        t = (x - self.start[0]) / (self.end[0] - self.start[0])
        return tuple(a + t * (b - a) for a, b in zip(self.start[1:], self.end[1:]))


@dataclass
class CoverChain:
    """射影が交わらない負のセルの列 (1本の被覆グラフになる)"""

    pieces: list[Piece] = field(default_factory=list)

    @property
    def weight(self) -> Fraction:
        return max(piece.deficit for piece in self.pieces)

    def accepts(self, piece: Piece, cap: Fraction) -> bool:
        last = self.pieces[-1]
        gap = piece.start[0] - last.end[0]
        if gap < 0:
            return False
        if gap == 0:
            return piece.start[1:] == last.end[1:]
        return _chord_slope(last.end, piece.start) <= cap


def _chord_slope(left: Point, right: Point) -> Fraction:
    width = right[0] - left[0]
    return max(abs(b - a) for a, b in zip(left[1:], right[1:])) / width


# --------------------------
#  台地グラフ
# --------------------------


def plateau_graph(level: Value, inner: Fraction, outer: Fraction) -> PolyChain:
    """(−outer, 0) → (−inner, h) → (inner, h) → (outer, 0) の折れ線 (正の向き)

    Examples:
        >>> f = plateau_graph((Fraction(1, 2),), Fraction(2), Fraction(3))
        >>> len(f), f.boundary().cells[((Fraction(3), Fraction(0)),)]
        (3, Fraction(1, 1))
    """
    zero = tuple(Fraction(0) for _ in level)
    points = [(-outer,) + zero, (-inner,) + level, (inner,) + level, (outer,) + zero]
    pieces = [([a, b], Fraction(1)) for a, b in zip(points, points[1:])]
    return chain_from_cells(len(points[0]), 1, pieces, check=False)


# --------------------------
#  被覆グラフ
# --------------------------


def _oriented(cell: Cell, coeff: Fraction) -> tuple[Point, Point, Fraction]:
    """x が増える向きに並べ替えた端点と、その向きでの係数"""
    start, end = cell
    if start[0] <= end[0]:
        return start, end, coeff
    return end, start, -coeff


def negative_pieces(chain: PolyChain, max_width: Fraction) -> list[Piece]:
    """x 方向に関して負の係数を持つセルを、射影の長さ ≤ max_width に刻んで返す

    鉛直なセル (x 方向の長さ 0) は含めない。陽性判定で検出する。
    """
    found = []
    for cell, coeff in chain.items():
        start, end, value = _oriented(cell, coeff)
        width = end[0] - start[0]
        if value >= 0 or width == 0:
            continue
        parts = max(1, ceil(width / max_width))
        for k in range(parts):
            a = tuple(s + (e - s) * Fraction(k, parts) for s, e in zip(start, end))
            b = tuple(s + (e - s) * Fraction(k + 1, parts) for s, e in zip(start, end))
            found.append(Piece(a, b, -value))
    return found


def row_key(piece: Piece, cell: LatticeCell, lo: list[int], hi: list[int], radius: int) -> RowKey:
    """セルが乗る E のファセットと、行の軸・ファセットの軸を除いた格子座標の R 幅ブロック"""
    n = cell.n
    ends = [cell.coordinates(piece.start), cell.coordinates(piece.end)]
    facet: tuple[int, int] | None = None
    for k in range(n):
        if ends[0][k] == ends[1][k] == lo[k]:
            facet = (k, 0)
            break
        if ends[0][k] == ends[1][k] == hi[k] + 1:
            facet = (k, 1)
            break
    if facet is None:
        return (None,)
    k = facet[0]
    row_axis = n - 1 if k == 0 else 0
    middle = [(a + b) / 2 for a, b in zip(*ends)]
    blocks = tuple(floor(middle[a] / radius) for a in range(n) if a not in (k, row_axis))
    return (facet, blocks)


def group_cover_chains(pieces: list[Piece], keys: list[RowKey], cap: Fraction) -> list[CoverChain]:
    """行ごとに射影が交わらない鎖へ貪欲に分ける"""
    rows: dict[RowKey, list[Piece]] = defaultdict(list)
    for piece, key in zip(pieces, keys):
        rows[key].append(piece)
    chains: list[CoverChain] = []
    for key in sorted(rows, key=repr):
        members = sorted(rows[key], key=lambda p: (p.start, p.end))
        open_chains: list[CoverChain] = []
        for piece in members:
            for candidate in open_chains:
                if candidate.accepts(piece, cap):
                    candidate.pieces.append(piece)
                    break
            else:
                open_chains.append(CoverChain([piece]))
        chains.extend(open_chains)
    return chains


def extension_graph(
    cover: CoverChain, outer: Fraction, pitch: Fraction, bound: Fraction
) -> PolyChain:
    """鎖を通り、±outer で 0 になる PL グラフ (係数 1)

    区間の上では線分そのもの、隙間では成分ごとの inf 畳み込み
    min(y_a + L(x − x_a), y_b + L(x_b − x)) を格子と折れ点で評価して線形補間し、
    [−bound, bound] に切り詰める。
    """
    pieces = cover.pieces
    dim = len(pieces[0].start) - 1
    zero = tuple(Fraction(0) for _ in range(dim))
    left_end: Point = (-outer,) + zero
    right_end: Point = (outer,) + zero

    anchors = [left_end] + [p for piece in pieces for p in (piece.start, piece.end)] + [right_end]
    lipschitz = max([piece.slope() for piece in pieces] + [
        _chord_slope(a, b) for a, b in zip(anchors[::2], anchors[1::2]) if b[0] > a[0]
    ])

    def value(x: Fraction) -> Value:
        for piece in pieces:
            if piece.start[0] <= x <= piece.end[0]:
                return piece.value_at(x)
        before = max((a for a in anchors if a[0] <= x), key=lambda a: a[0])
        after = min((a for a in anchors if a[0] >= x), key=lambda a: a[0])
        raw = tuple(
            min(ya + lipschitz * (x - before[0]), yb + lipschitz * (after[0] - x))
            for ya, yb in zip(before[1:], after[1:])
        )
        return tuple(min(max(y, -bound), bound) for y in raw)

    steps = int((2 * outer) / pitch)
    xs = {-outer + k * pitch for k in range(steps + 1)} | {outer}
    xs |= {a[0] for a in anchors}
    ordered = sorted(x for x in xs if -outer <= x <= outer)
    points = [(x,) + value(x) for x in ordered]
    segments = [([a, b], Fraction(1)) for a, b in zip(points, points[1:])]
    return chain_from_cells(dim + 1, 1, segments, check=False)


# --------------------------
#  陽性判定
# --------------------------


def non_positive_cells(chain: PolyChain) -> list[Cell]:
    """x 方向に正の向きでないセル (鉛直なセルを含む)"""
    bad = []
    for cell, coeff in chain.items():
        start, end, value = _oriented(cell, coeff)
        if end[0] == start[0] or value <= 0:
            bad.append(cell)
    return bad


def is_positive_chain(chain: PolyChain) -> bool:
    return not non_positive_cells(chain)


# --------------------------
#  構成
# --------------------------


def _assemble(
    measure: GrassmannMeasure, plane: RationalPlane, size: int, height: int, prime: int
) -> tuple[PolyChain, dict]:
    settings = get_settings()
    n = measure.n
    atoms = list(measure.atoms) + [(plane.reversed(), Fraction(1))]
    removed = len(atoms) - 1
    cell = LatticeCell.sheared(n)

    built = build_periodic_filling(atoms, cell, prime, max_retries=0)
    split = split_tile(built.filling, built.families, cell)
    lo = [-size] + [-height] * (n - 1)
    hi = [size - 1] + [height - 1] * (n - 1)
    base = region_cycle(built.filling, built.families, cell, lo, hi, split=split)

    inner = Fraction(size + 2 * height)
    outer = Fraction(size + 3 * height)
    heights = plane_heights(built.families[removed].offset[1:], -height, height - 1)
    plateaus = PolyChain.zero(n, 1)
    for h in heights:
        plateaus = plateaus + plateau_graph(h, inner, outer)
    covered = reduce(base + plateaus)

    pitch = Fraction(settings.EXTENSION_PITCH).limit_denominator(1024)
    cap = Fraction(settings.LIPSCHITZ_CAP).limit_denominator(1024)
    pieces = negative_pieces(covered, Fraction(1, 2))
    keys = [row_key(piece, cell, lo, hi, settings.COVER_RADIUS) for piece in pieces]
    covers = group_cover_chains(pieces, keys, cap)
    graphs = PolyChain.zero(n, 1)
    weights = Fraction(0)
    for cover in covers:
        graph = extension_graph(cover, outer, pitch, Fraction(2 * height))
        graphs = graphs + graph.scaled(cover.weight)
        weights += cover.weight
    raw = reduce(covered + graphs)

    bad = non_positive_cells(raw)
    if bad:
        raise PositivityPostconditionError(
            f"{len(bad)} cells are not positively oriented (first {bad[0]}) with prime {prime}"
        )
    multiplicity = len(heights) + weights
    shift = (outer,) + (0,) * (n - 1)
    chain = shrink(translate(raw.scaled(1 / multiplicity), shift), int(2 * outer))
    logger.debug(
        f"multigraph assembly: {len(pieces)} negative pieces in {len(covers)} covers, "
        f"alpha={multiplicity}"
    )
    return chain, {
        "prime": built.prime,
        "plateaus": len(heights),
        "covers": len(covers),
        "alpha": str(multiplicity),
    }


def build_multigraph(
    measure: GrassmannMeasure,
    size: int,
    height: int,
    offset_prime: int | None = None,
) -> ConstructionResult:
    """正の向きの原子だけからなる測度から、正の向きの 1 チェイン B (∂B = ∂[0,1]) を作る

    Args:
        measure: 正の向きで Σ s_i W_i = W_P0 の原子測度 (d = 1)
        size: N
        height: M (2 ≤ M ≤ N)
        offset_prime: オフセットの素数

    Returns:
        ConstructionResult: positive フラグ付きの結果

    Raises:
        OrientationError: 正の向きでない原子がある場合
        NonMatchingClassError: 重心が W_P0 でない場合
        PositivityPostconditionError: どの素数でも正の向きにならない場合
    """
    if measure.d != 1:
        raise ValueError(f"multigraph construction needs d = 1, got d = {measure.d}")
    if height < 2 or size < height:
        raise ValueError(f"need 2 <= M <= N, got M={height}, N={size}")
    n = measure.n
    plane = check_matching_class(measure)
    for atom, _ in measure.atoms:
        if not is_positively_oriented(atom, plane):
            raise OrientationError(f"atom {atom!r} is not positively oriented")
    target = measure.to_float()
    disc = unit_disc(n, 1)
    parameters: dict = {"N": size, "M": height}
    if is_identity(measure):
        logger.info("build_multigraph: identity measure, returning the unit segment")
        return ConstructionResult(
            disc, target, 0.0, disc.mass(), True, positive=True, parameters=parameters
        )

    chain, details = with_offset_retries(
        lambda prime: _assemble(measure, plane, size, height, prime), "build_multigraph", offset_prime
    )
    tv_error = tv_distance(chain.gaussian_image(), target)
    boundary_ok = currents_equal(chain.boundary(), disc.boundary())
    logger.info(
        f"build_multigraph: N={size}, M={height}, prime={details['prime']}, "
        f"cells={len(chain)}, tv={tv_error:.6g}, boundary_ok={boundary_ok}"
    )
    return ConstructionResult(
        chain,
        target,
        tv_error,
        chain.mass(),
        boundary_ok,
        positive=is_positive_chain(chain),
        parameters={**parameters, **details},
    )
