"""密な二段階単体法 (Bland の規則)

標準形 min c·x s.t. A x = b, x ≥ 0 を解く。係数は float でも Fraction でもよく、
exact=True のときは丸めなしで計算する (有理近似の錐実行可能性判定で使う)。

責務:
- 第1段階: 人工変数で実行可能基底を求める
- 第2段階: 元の目的関数を最小化する
- 双対変数・残差・相補性残差の計算
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Sequence

from backend.logging import lp_logger as logger

Number = float | Fraction
LPStatus = Literal["optimal", "infeasible", "unbounded"]

_FLOAT_PIVOT_TOL = 1e-12
_FLOAT_FEASIBILITY_TOL = 1e-9


@dataclass(frozen=True)
class LPProblem:
    """線形計画問題 min cost·x s.t. matrix·x = rhs, x ≥ 0

    Attributes:
        cost: 目的関数の係数
        matrix: 等式制約の行列 (行のシーケンス)
        rhs: 右辺
        exact: True なら Fraction で厳密に解く
        labels: 列の名前 (レポート用、省略可)

    Examples:
        >>> lp_solve(LPProblem(cost=[1.0], matrix=[[1.0]], rhs=[1.0])).value
        1.0
    """

    cost: Sequence[Number]
    matrix: Sequence[Sequence[Number]]
    rhs: Sequence[Number]
    exact: bool = False
    labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if len(self.matrix) != len(self.rhs):
            raise ValueError(
                f"LP has {len(self.matrix)} constraint rows but {len(self.rhs)} rhs values"
            )
        for row in self.matrix:
            if len(row) != len(self.cost):
                raise ValueError(
                    f"LP row of length {len(row)} does not match {len(self.cost)} columns"
                )

    @property
    def size(self) -> tuple[int, int]:
        return len(self.rhs), len(self.cost)


@dataclass(frozen=True)
class LPSolution:
    """lp_solve の結果

    Attributes:
        status: "optimal" / "infeasible" / "unbounded"
        x: 最適解 (optimal 以外では None)
        value: 最適値 (optimal 以外では None)
        basis: 最適基底の列番号 (人工変数は含まない)
        duals: 等式制約の双対変数
        residual: ‖A x − b‖∞
        slackness: 相補性と双対実行可能性の残差
    """

    status: LPStatus
    x: tuple[Number, ...] | None = None
    value: Number | None = None
    basis: tuple[int, ...] = ()
    duals: tuple[Number, ...] = field(default_factory=tuple)
    residual: float = 0.0
    slackness: float = 0.0


def _convert(value: object, exact: bool) -> Number:
    if exact:
        if isinstance(value, float):
            raise ValueError(f"float {value!r} in an exact LP")
        return Fraction(value)  # type: ignore[arg-type]
    return float(value)  # type: ignore[arg-type]


class _Tableau:
    """単体表 (行 = 基底、最終列 = 右辺)"""

    def __init__(
        self, rows: list[list[Number]], basis: list[int], exact: bool
    ) -> None:
        self.rows = rows
        self.basis = basis
        self.exact = exact
        self.tol: Number = Fraction(0) if exact else _FLOAT_PIVOT_TOL

    def reduced_cost(self, cost: Sequence[Number], column: int) -> Number:
        total = cost[column]
        for row, basic in zip(self.rows, self.basis):
            if row[column]:
                total -= cost[basic] * row[column]
        return total

    def objective(self, cost: Sequence[Number]) -> Number:
        return sum(
            (cost[basic] * row[-1] for row, basic in zip(self.rows, self.basis)),
            Fraction(0) if self.exact else 0.0,
        )

    def pivot(self, r: int, column: int) -> None:
        lead = self.rows[r][column]
        pivot_row = [value / lead for value in self.rows[r]]
        if not self.exact:
            pivot_row = [0.0 if abs(v) < 1e-15 else v for v in pivot_row]
        self.rows[r] = pivot_row
        for i, row in enumerate(self.rows):
            if i == r or not row[column]:
                continue
            factor = row[column]
            updated = [a - factor * b for a, b in zip(row, pivot_row)]
            if not self.exact:
                updated = [0.0 if abs(v) < 1e-15 else v for v in updated]
            self.rows[i] = updated
        self.basis[r] = column

    def run(self, cost: Sequence[Number], allowed: range) -> LPStatus:
        """Bland の規則で最適化する (入る列・出る行とも最小添字)"""
        iterations = 0
        while True:
            entering = None
            for column in allowed:
                if self.reduced_cost(cost, column) < -self.tol:
                    entering = column
                    break
            if entering is None:
                logger.debug(f"simplex: optimal after {iterations} pivots")
                return "optimal"

            leaving = None
            best: Number | None = None
            for i, row in enumerate(self.rows):
                if row[entering] <= self.tol:
                    continue
                ratio = row[-1] / row[entering]
                if (
                    best is None
                    or ratio < best - self.tol
                    or (
                        abs(ratio - best) <= self.tol
                        and self.basis[i] < self.basis[leaving]  # type: ignore[index]
                    )
                ):
                    best, leaving = ratio, i
            if leaving is None:
                return "unbounded"
            self.pivot(leaving, entering)
            iterations += 1


def lp_solve(problem: LPProblem) -> LPSolution:
    """二段階単体法で LP を解く

    Args:
        problem: 標準形の LP

    Returns:
        LPSolution: 状態・解・双対・残差。失敗は status で返し、例外にはしない。

    Examples:
        >>> lp_solve(LPProblem(cost=[1.0], matrix=[[1.0]], rhs=[-1.0])).status
        'infeasible'
    """
    exact = problem.exact
    zero: Number = Fraction(0) if exact else 0.0
    one: Number = Fraction(1) if exact else 1.0
    cost = [_convert(c, exact) for c in problem.cost]
    matrix = [[_convert(a, exact) for a in row] for row in problem.matrix]
    rhs = [_convert(b, exact) for b in problem.rhs]
    m, n = problem.size

    if m == 0:
        if any(c < 0 for c in cost):
            return LPSolution(status="unbounded")
        return LPSolution(status="optimal", x=tuple(zero for _ in cost), value=zero)

    # 右辺を非負にそろえ、人工変数の単位行列を付ける
    signs = [-1 if b < 0 else 1 for b in rhs]
    rows: list[list[Number]] = []
    for i in range(m):
        artificial = [one if k == i else zero for k in range(m)]
        rows.append([signs[i] * a for a in matrix[i]] + artificial + [signs[i] * rhs[i]])
    tableau = _Tableau(rows, [n + i for i in range(m)], exact)

    phase_one = [zero] * n + [one] * m
    tableau.run(phase_one, range(n))
    infeasibility = tableau.objective(phase_one)
    if infeasibility > (zero if exact else _FLOAT_FEASIBILITY_TOL):
        logger.debug(f"simplex: phase one ended at {float(infeasibility):.3g}")
        return LPSolution(status="infeasible")

    # 基底に残った人工変数を追い出す (追い出せない行は冗長)
    for i in range(m):
        if tableau.basis[i] < n:
            continue
        for column in range(n):
            if abs(tableau.rows[i][column]) > tableau.tol:
                tableau.pivot(i, column)
                break

    phase_two = cost + [zero] * m
    status = tableau.run(phase_two, range(n))
    if status != "optimal":
        return LPSolution(status=status)

    x = [zero] * n
    for row, basic in zip(tableau.rows, tableau.basis):
        if basic < n:
            x[basic] = row[-1]
    value = sum((c * v for c, v in zip(cost, x)), zero)

    # B^{-1} は人工変数の列に残っている
    duals = []
    for i in range(m):
        y = sum(
            (phase_two[basic] * row[n + i] for row, basic in zip(tableau.rows, tableau.basis)),
            zero,
        )
        duals.append(signs[i] * y)

    residual = max(
        abs(sum((a * v for a, v in zip(row, x)), zero) - b) for row, b in zip(matrix, rhs)
    )
    slackness = zero
    for j in range(n):
        reduced = cost[j] - sum((matrix[i][j] * duals[i] for i in range(m)), zero)
        slackness = max(slackness, abs(x[j] * reduced), -reduced)

    return LPSolution(
        status="optimal",
        x=tuple(x),
        value=value,
        basis=tuple(sorted(b for b in tableau.basis if b < n)),
        duals=tuple(duals),
        residual=float(residual),
        slackness=float(slackness),
    )
