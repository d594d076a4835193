"""異方的被積分関数

- Integrand: 向き付き d 平面 (単位 d ベクトル ω) 上の正値関数 Ψ
- MatrixIntegrand: (n−d)×d 行列 X 上の関数 ψ と、その橋渡し Ψ(ω) = |ω_0|·ψ(X(ω))

種類は builtin (area / sin2theta / norm_ellipse)、expression (sympy の式)、
table (最近傍の原子、リプシッツ定数を宣言) の3つ。
"""

from math import comb, isfinite, sqrt
from typing import Callable, Sequence

import numpy as np
import sympy

from backend.grassmann import DVector, RationalPlane, head_index, multi_indices

from .exceptions import IntegrandError, NonGraphCellError

Evaluator = Callable[[np.ndarray], float]
PlaneLike = RationalPlane | DVector | Sequence[float]

_GRAPH_TOL = 1e-12


def unit_coords(item: PlaneLike) -> np.ndarray:
    """平面・d ベクトル・座標列を単位 d ベクトルの座標 (numpy) にする"""
    if isinstance(item, RationalPlane):
        coords = item.omega.coords
    elif isinstance(item, DVector):
        coords = item.unit().coords
    else:
        coords = tuple(float(c) for c in item)
    array = np.asarray(coords, dtype=float)
    length = float(np.linalg.norm(array))
    if length == 0.0:
        raise IntegrandError("integrand evaluated at the zero d-vector")
    return array / length


class Integrand:
    """Ψ: Gr~(d, n) → (0, ∞)

    Attributes:
        n: 周囲空間の次元
        d: 平面の次元
        name: 表示名
        even: True なら Ψ(ω) = (f(ω) + f(−ω))/2 で偶関数にする
        lipschitz: 宣言されたリプシッツ定数 (表形式のみ)

    Examples:
        >>> psi = Integrand.sin2theta(0.4)
        >>> round(psi((1.0, 1.0)), 6)
        0.6
    """

    def __init__(
        self,
        n: int,
        d: int,
        evaluator: Evaluator,
        name: str = "custom",
        even: bool = True,
        lipschitz: float | None = None,
    ) -> None:
        self.n = n
        self.d = d
        self.name = name
        self.even = even
        self.lipschitz = lipschitz
        self._evaluator = evaluator

    def __repr__(self) -> str:
        return f"Integrand({self.name}, n={self.n}, d={self.d}, even={self.even})"

    def __call__(self, item: PlaneLike) -> float:
        omega = unit_coords(item)
        if omega.shape != (comb(self.n, self.d),):
            raise IntegrandError(
                f"{self.name}: d-vector with {omega.shape[0]} coordinates for Gr({self.d},{self.n})"
            )
        value = float(self._evaluator(omega))
        if self.even:
            value = 0.5 * (value + float(self._evaluator(-omega)))
        if not isfinite(value) or value <= 0.0:
            raise IntegrandError(f"{self.name} is not positive at {omega.tolist()}: {value}")
        return value

    def check_positive(self, samples: Sequence[PlaneLike]) -> None:
        """標本点で正値であることを確かめる (違反は IntegrandError)"""
        for sample in samples:
            self(sample)

    def oscillation(self, items: Sequence[PlaneLike]) -> float:
        values = [self(item) for item in items]
        return max(values) - min(values) if values else 0.0

    # --------------------------
    #  組み込み
    # --------------------------

    @classmethod
    def area(cls, n: int, d: int) -> "Integrand":
        """Ψ ≡ 1"""
        return cls(n, d, lambda omega: 1.0, name="area")

    @classmethod
    def sin2theta(cls, amplitude: float = 0.4) -> "Integrand":
        """d=1, n=2 で Ψ(θ) = 1 − a·|sin 2θ| (ω = (cos θ, sin θ))"""
        if not 0.0 <= amplitude < 1.0:
            raise IntegrandError(f"amplitude must lie in [0, 1), got {amplitude}")
        return cls(
            2, 1, lambda omega: 1.0 - amplitude * abs(2.0 * omega[0] * omega[1]),
            name=f"sin2theta({amplitude})",
        )

    @classmethod
    def norm_ellipse(cls, matrix: Sequence[Sequence[float]], n: int, d: int) -> "Integrand":
        """Ψ(ω) = ‖A ω‖ (A は C(n,d)×C(n,d) の正則行列)"""
        a = np.asarray(matrix, dtype=float)
        size = comb(n, d)
        if a.shape != (size, size):
            raise IntegrandError(f"norm_ellipse matrix must be {size}x{size}, got {a.shape}")
        if abs(float(np.linalg.det(a))) < 1e-12:
            raise IntegrandError("norm_ellipse matrix is singular")
        return cls(n, d, lambda omega: float(np.linalg.norm(a @ omega)), name="norm_ellipse")

    @classmethod
    def expression(cls, text: str, n: int, d: int, even: bool = True) -> "Integrand":
        """ω の座標 w0, w1, … (multi_indices の順) の sympy 式"""
        names = [f"w{k}" for k in range(comb(n, d))]
        function = _lambdify(text, names)
        return cls(n, d, lambda omega: function(*omega), name=f"expr({text})", even=even)

    @classmethod
    def table(
        cls,
        entries: Sequence[tuple[Sequence[float], float]],
        n: int,
        d: int,
        lipschitz: float,
        even: bool = True,
    ) -> "Integrand":
        """最近傍の原子の値を返す表形式の被積分関数

        Raises:
            IntegrandError: 原子の値が宣言されたリプシッツ定数に反する場合
        """
        if not entries:
            raise IntegrandError("table integrand needs at least one atom")
        points = np.asarray([unit_coords(coords) for coords, _ in entries])
        values = np.asarray([float(value) for _, value in entries])
        for i in range(len(values)):
            for j in range(i + 1, len(values)):
                distance = float(np.linalg.norm(points[i] - points[j]))
                if even:
                    distance = min(distance, float(np.linalg.norm(points[i] + points[j])))
                if abs(values[i] - values[j]) > lipschitz * distance + 1e-12:
                    raise IntegrandError(
                        f"table atoms {i} and {j} violate the Lipschitz bound {lipschitz}"
                    )

        def nearest(omega: np.ndarray) -> float:
            distances = np.linalg.norm(points - omega, axis=1)
            return float(values[int(np.argmin(distances))])

        return cls(n, d, nearest, name="table", even=even, lipschitz=lipschitz)


def _lambdify(text: str, names: Sequence[str]) -> Callable[..., float]:
    symbols = tuple(sympy.Symbol(name) for name in names)
    try:
        expr = sympy.sympify(text, locals={str(s): s for s in symbols})
    except (sympy.SympifyError, SyntaxError, TypeError) as e:
        raise IntegrandError(f"cannot parse integrand expression '{text}': {e}") from e
    unknown = {str(s) for s in expr.free_symbols} - set(names)
    if unknown:
        raise IntegrandError(
            f"expression '{text}' uses unknown symbols {sorted(unknown)}; allowed: {list(names)}"
        )
    return sympy.lambdify(symbols, expr, modules="numpy")


# --------------------------
#  行列被積分関数
# --------------------------


def graph_matrix(omega: np.ndarray, n: int, d: int) -> tuple[np.ndarray, float]:
    """単位 d ベクトル ω から X(ω) と ω_0 = ω_{(1…d)} を求める

    ω ∝ ∧M(X) で、座標 (1…d から j を除き d+i を加えた添字) は (−1)^{d−1−j}·X_ij·ω_0。

    Raises:
        NonGraphCellError: |ω_0| が 0 (平面が P0 上のグラフでない) の場合
    """
    lookup = {index: k for k, index in enumerate(multi_indices(n, d))}
    head = float(omega[lookup[head_index(d)]])
    if abs(head) < _GRAPH_TOL:
        raise NonGraphCellError(f"plane {omega.tolist()} is not a graph over P0")
    x = np.zeros((n - d, d))
    for i in range(n - d):
        for j in range(d):
            index = tuple(sorted(set(range(d)) - {j} | {d + i}))
            x[i, j] = (-1) ** (d - 1 - j) * float(omega[lookup[index]]) / head
    return x, head


class MatrixIntegrand:
    """ψ: R^{(n−d)×d} → (0, ∞) (Q 価関数のエネルギー Σ ψ(∇u_i) の被積分関数)

    Examples:
        >>> psi = MatrixIntegrand.sin2theta_graph(0.4)
        >>> psi(0.0)
        1.0
    """

    def __init__(self, n: int, d: int, function: Evaluator, name: str = "custom") -> None:
        self.n = n
        self.d = d
        self.name = name
        self._function = function

    def __repr__(self) -> str:
        return f"MatrixIntegrand({self.name}, n={self.n}, d={self.d})"

    def __call__(self, x: object) -> float:
        matrix = np.asarray(x, dtype=float).reshape(self.n - self.d, self.d)
        value = float(self._function(matrix))
        if not isfinite(value) or value <= 0.0:
            raise IntegrandError(f"{self.name} is not positive at {matrix.tolist()}: {value}")
        return value

    def bridge(self) -> Integrand:
        """Ψ(ω) = |ω_0|·ψ(X(ω)) (向きを反転しても同じ値の偶関数)"""
        n, d = self.n, self.d

        def evaluate(omega: np.ndarray) -> float:
            x, head = graph_matrix(omega, n, d)
            return abs(head) * self(x)

        return Integrand(n, d, evaluate, name=f"bridge({self.name})", even=False)

    @classmethod
    def area(cls, n: int, d: int) -> "MatrixIntegrand":
        """ψ(X) = |∧M(X)| = √det(I + XᵀX)"""
        return cls(
            n, d, lambda x: sqrt(float(np.linalg.det(np.eye(d) + x.T @ x))), name="area"
        )

    @classmethod
    def sin2theta_graph(cls, amplitude: float = 0.4) -> "MatrixIntegrand":
        """ψ(x) = √(1+x²)·(1 − a·|2x/(1+x²)|) (|sin 2θ| 型の被積分関数のグラフ形)"""

        def evaluate(x: np.ndarray) -> float:
            t = float(x[0, 0])
            return sqrt(1.0 + t * t) * (1.0 - amplitude * abs(2.0 * t / (1.0 + t * t)))

        return cls(2, 1, evaluate, name=f"sin2theta_graph({amplitude})")

    @classmethod
    def expression(cls, text: str, n: int, d: int) -> "MatrixIntegrand":
        """X の成分の sympy 式 (1×1 なら x、それ以外は x_i_j)"""
        if (n - d) * d == 1:
            names = ["x"]
        else:
            names = [f"x_{i}_{j}" for i in range(n - d) for j in range(d)]
        function = _lambdify(text, names)
        return cls(n, d, lambda x: function(*x.reshape(-1)), name=f"expr({text})")
