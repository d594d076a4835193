"""零類サイクル S = Σ s_i T_{P_i} の充填 Q (∂Q = S、周期的)

まっすぐにするプリズムで Q を組み立てる。

1. 族 i の1周期は格子平行体 Par(v_i; U_i)。
2. 座標軸でない列 c を先頭に移し (符号 (−1)^j)、軸方向の階段 a = ±e_k と残り b に分ける。
   H = {0 ≤ t ≤ s ≤ 1} × [0,1]^{d−1} の (p, a, b, R) による像は周期的に
   ∂H ≡ Par(p; a, R) + Par(p + a; b, R) − Par(p; a + b, R) を満たすので、
   −coef·H を Q に加えて項を2つに分ける。
3. すべての列が ±e_k になった項は座標平行体 ±Par(p; e_I) で、平行移動プリズムで
   基点 c0 へ運ぶ。基点に集まった係数は Σ s_i (W_i)_I なので厳密に打ち消し合う。

基点 c0 = (1/2, 1/3, 1/5, …) は相異なる素数の逆数で、格子超平面に乗らない。
"""

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import floor
from typing import Sequence

from sympy import nextprime, prime

from backend.chains import PolyChain, chain_from_cells, prism
from backend.chains.simplex import Point, as_point, permutation_sign
from backend.grassmann import DVector, RationalPlane, wedge_of_columns
from backend.logging import torus_logger as logger
from config.settings import get_settings

from .exceptions import DegenerateOffsetError, FillingPostconditionError, NonZeroClassError
from .family import PlaneFamily, generic_offsets, kuhn_walk, parallelepiped_chain
from .lattice import LatticeCell
from .periodic import PeriodicChain, periodic_boundary_equal

Column = tuple[Fraction, ...]
Term = tuple[Fraction, Point, tuple[Column, ...]]


def default_base_point(n: int) -> Point:
    """c0 = (1/2, 1/3, 1/5, …)"""
    return tuple(Fraction(1, int(prime(k + 1))) for k in range(n))


def family_class(families: Sequence[PlaneFamily], n: int, d: int) -> DVector:
    """Σ s_i W_i (厳密)"""
    total = DVector.zero(n, d)
    for family in families:
        total = total + family.plane.W.scaled(family.scale)
    return total


def cycle_of(families: Sequence[PlaneFamily], n: int, d: int) -> PeriodicChain:
    """S = Σ s_i Par(v_i; U_i) の周期チェイン"""
    total = PolyChain.zero(n, d)
    for family in families:
        total = total + family.representative()
    return PeriodicChain(total)


# --------------------------
#  まっすぐにする
# --------------------------


def _axis_of(column: Column) -> int | None:
    """±e_k なら k、そうでなければ None"""
    nonzero = [k for k, c in enumerate(column) if c != 0]
    if len(nonzero) == 1 and abs(column[nonzero[0]]) == 1:
        return nonzero[0]
    return None


def _first_step(column: Column) -> Column:
    k = next(k for k, c in enumerate(column) if c != 0)
    sign = 1 if column[k] > 0 else -1
    return tuple(Fraction(sign if i == k else 0) for i in range(len(column)))


def _homotopy_cells(
    origin: Point, step: Column, remainder: Column, rest: Sequence[Column]
) -> list[tuple[list[Point], int]]:
    """{t ≤ s} × 立方体 の Kuhn 単体 (s, t は先頭2列)"""
    columns = [step, remainder, *rest]
    cells = []
    for order in permutations(range(len(columns))):
        if order.index(0) > order.index(1):
            continue
        cells.append((kuhn_walk(origin, columns, order), permutation_sign(order)))
    return cells


def _coordinate_term(
    coeff: Fraction, origin: Point, columns: Sequence[Column]
) -> tuple[Fraction, Point, tuple[int, ...]] | None:
    """±e_k の列を e_I (昇順) にそろえ、基点を基本セルへ寄せる"""
    axes = []
    sign = 1
    for column in columns:
        k = _axis_of(column)
        assert k is not None
        if column[k] < 0:
            sign = -sign
        axes.append(k)
    if len(set(axes)) < len(axes):
        return None
    sign *= permutation_sign(axes)
    reduced = tuple(x - floor(x) for x in origin)
    return coeff * sign, reduced, tuple(sorted(axes))


def straighten(
    terms: Sequence[Term], n: int
) -> tuple[list[tuple[list[Point], Fraction]], dict[tuple[Point, tuple[int, ...]], Fraction]]:
    """項を座標平行体まで分解する

    Returns:
        tuple: (ホモトピー単体 (頂点列, 係数) の列, (基点, I) → 係数)
    """
    homotopy: list[tuple[list[Point], Fraction]] = []
    coordinate: dict[tuple[Point, tuple[int, ...]], Fraction] = defaultdict(Fraction)
    stack = list(terms)
    while stack:
        coeff, origin, columns = stack.pop()
        if coeff == 0 or wedge_of_columns(columns, n=n).is_zero():
            continue
        slot = next((j for j, c in enumerate(columns) if _axis_of(c) is None), None)
        if slot is None:
            term = _coordinate_term(coeff, origin, columns)
            if term is not None:
                value, base, index = term
                coordinate[(base, index)] += value
            continue
        if slot % 2:
            coeff = -coeff
        column = columns[slot]
        rest = columns[:slot] + columns[slot + 1 :]
        step = _first_step(column)
        remainder = tuple(c - s for c, s in zip(column, step))
        for vertices, sign in _homotopy_cells(origin, step, remainder, rest):
            homotopy.append((vertices, -coeff * sign))
        stack.append((coeff, origin, (step,) + rest))
        moved = tuple(x + s for x, s in zip(origin, step))
        stack.append((coeff, moved, (remainder,) + rest))
    return homotopy, coordinate


# --------------------------
#  充填
# --------------------------


def fill_cycle(
    families: Sequence[PlaneFamily],
    n: int | None = None,
    d: int | None = None,
    base_point: Sequence[object] | None = None,
    verify: bool = True,
) -> PeriodicChain:
    """Σ s_i W_i = 0 の族の和 S に対し ∂Q = S となる周期 (d+1) チェイン Q

    Args:
        families: 係数・オフセットつきの平面族
        n: 周囲次元 (families が空のときに必要)
        d: 平面次元 (families が空のときに必要)
        base_point: 座標部分トーラスを集める基点 (既定は c0)
        verify: True なら周期的な ∂Q = S を厳密に確かめる

    Returns:
        PeriodicChain: 次数 d+1 の充填

    Raises:
        NonZeroClassError: Σ s_i W_i ≠ 0 の場合
        FillingPostconditionError: 検証に失敗した場合
    """
    if families:
        n, d = families[0].n, families[0].d
    if n is None or d is None:
        raise ValueError("n and d are required when no families are given")
    if d >= n:
        raise ValueError(f"a filling needs d < n, got d={d}, n={n}")
    if not families:
        return PeriodicChain.zero(n, d + 1)

    total = family_class(families, n, d)
    if not total.is_zero():
        raise NonZeroClassError(f"Σ s_i W_i = {total.as_dict()} is not zero")

    base = as_point(base_point) if base_point is not None else default_base_point(n)
    terms: list[Term] = [
        (family.scale, family.offset, tuple(family.columns())) for family in families
    ]
    homotopy, coordinate = straighten(terms, n)

    filling = chain_from_cells(n, d + 1, homotopy, check=True)
    totals: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
    for (origin, index), coeff in sorted(coordinate.items()):
        if coeff == 0:
            continue
        totals[index] += coeff
        axes = [tuple(Fraction(int(i == k)) for i in range(n)) for k in index]
        cube = parallelepiped_chain(origin, axes)
        shift = tuple(c - o for c, o in zip(base, origin))
        filling = filling - prism(cube, shift).scaled(coeff)

    leftover = {index: value for index, value in totals.items() if value != 0}
    if leftover:
        raise FillingPostconditionError(
            f"coordinate parts did not cancel at the base point: {leftover}"
        )

    result = PeriodicChain(filling)
    logger.info(
        f"fill_cycle: {len(families)} families, {len(homotopy)} homotopy cells, "
        f"{len(coordinate)} coordinate terms -> {len(result)} cells"
    )
    if verify and not periodic_boundary_equal(result, cycle_of(families, n, d)):
        raise FillingPostconditionError("periodic boundary of the filling differs from S")
    return result


# --------------------------
#  オフセットの選択
# --------------------------


def offset_defect(families: Sequence[PlaneFamily], cell: LatticeCell) -> str | None:
    """オフセットが一般の位置にないときの理由 (問題なければ None)

    - 向きを無視して同じ平面の族が、格子平行移動で重なる
    - 族の平面がセルの格子超平面 {ν·(x − o) ∈ Z} に含まれる
    """
    for i, first in enumerate(families):
        for j in range(i + 1, len(families)):
            second = families[j]
            if first.plane.unoriented_key != second.plane.unoriented_key:
                continue
            gap = [a - b for a, b in zip(first.offset, second.offset)]
            if all(x.denominator == 1 for x in first.plane.kernel_image(gap)):
                return f"families {i} and {j} share a plane"
    for i, family in enumerate(families):
        for k, normal in enumerate(cell.normals()):
            if any(
                sum(a * b for a, b in zip(normal, column)) != 0
                for column in family.plane.basis
            ):
                continue
            level = sum(
                (a * (v - o) for a, v, o in zip(normal, family.offset, cell.origin)),
                Fraction(0),
            )
            if level.denominator == 1:
                return f"family {i} lies in a lattice hyperplane of axis {k}"
    return None


def filling_defect(filling: PeriodicChain, cell: LatticeCell) -> str | None:
    """Q のセルが格子超平面に含まれるときの理由 (問題なければ None)"""
    if filling.grade >= filling.n:
        return None
    for simplex, _ in filling.items():
        k = cell.in_lattice_hyperplane(simplex)
        if k is not None:
            return f"filling cell {simplex} lies in a lattice hyperplane of axis {k}"
    return None


@dataclass(frozen=True)
class PeriodicFilling:
    """充填とその入力

    Attributes:
        filling: Q
        families: オフセットを決めた族
        prime: 採用したオフセットの素数
    """

    filling: PeriodicChain
    families: tuple[PlaneFamily, ...]
    prime: int


def build_periodic_filling(
    atoms: Sequence[tuple[RationalPlane, object]],
    cell: LatticeCell | None = None,
    offset_prime: int | None = None,
    max_retries: int | None = None,
) -> PeriodicFilling:
    """オフセットを決めて充填を作る (衝突したら次の素数で作り直す)

    Args:
        atoms: (平面, 係数) の並び (同じ平面が複数あってもよい)
        cell: 横断性を要求する格子セル (既定は単位立方体)
        offset_prime: 最初の素数 (既定は設定の OFFSET_PRIME)
        max_retries: 次の素数を試す回数 (既定は設定の MAX_OFFSET_RETRIES)

    Returns:
        PeriodicFilling: 充填・族・素数

    Raises:
        NonZeroClassError: Σ s_i W_i ≠ 0 の場合
        DegenerateOffsetError: どの素数でも一般の位置にならない場合
    """
    if not atoms:
        raise ValueError("at least one atom is required")
    n, d = atoms[0][0].n, atoms[0][0].d
    if offset_prime is None or max_retries is None:
        settings = get_settings()
        offset_prime = offset_prime or settings.OFFSET_PRIME
        max_retries = settings.MAX_OFFSET_RETRIES if max_retries is None else max_retries
    region = cell or LatticeCell.unit(n)

    provisional = [PlaneFamily.of(plane, [0] * n, scale) for plane, scale in atoms]
    total = family_class(provisional, n, d)
    if not total.is_zero():
        raise NonZeroClassError(f"Σ s_i W_i = {total.as_dict()} is not zero")

    current = int(offset_prime)
    for attempt in range(max_retries + 1):
        offsets = generic_offsets(len(atoms), n, current)
        families = tuple(
            PlaneFamily.of(plane, offset, scale)
            for (plane, scale), offset in zip(atoms, offsets)
        )
        problem = offset_defect(families, region)
        if problem is None:
            filling = fill_cycle(families)
            problem = filling_defect(filling, region)
            if problem is None:
                logger.info(f"offsets fixed with prime {current} after {attempt} retries")
                return PeriodicFilling(filling, families, current)
        logger.warning(f"offset prime {current} rejected: {problem}")
        if attempt < max_retries:
            current = int(nextprime(current))
    raise DegenerateOffsetError(
        f"no generic offsets after {max_retries} retries (last prime {current})"
    )
