from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from backend.energy import Integrand, MatrixIntegrand

BUILTINS = ("area", "sin2theta", "norm_ellipse")
GRAPH_BUILTINS = ("area", "sin2theta")


class TableAtomSchema(BaseModel):
    """表形式の被積分関数の1点"""

    omega: list[float] = Field(..., description="d ベクトルの座標 (単位化される)")
    value: float = Field(..., gt=0, description="Ψ の値")


class IntegrandSchema(BaseModel):
    """被積分関数の JSON

    kind によって必要なフィールドが異なる。

    - builtin: name (area / sin2theta / norm_ellipse)、必要なら amplitude・matrix
    - expression: expr (Grassmann 形では w0, w1, …、グラフ形では x または x_i_j)
    - table: atoms と lipschitz

    graph が True なら行列被積分関数 ψ (多価グラフ用) として読む。

    Examples:
        >>> IntegrandSchema.example().to_domain().name
        'sin2theta(0.4)'
    """

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "name": "sin2theta",
                "kind": "builtin",
                "builtin": "sin2theta",
                "n": 2,
                "d": 1,
                "amplitude": 0.4,
            }
        }
    )

    name: str = Field(default="", description="プリセット名")
    description: str = Field(default="", description="説明")
    kind: Literal["builtin", "expression", "table"] = Field(..., description="種類")
    n: int = Field(..., ge=1, le=8, description="周囲空間の次元")
    d: int = Field(..., ge=1, description="平面の次元")
    graph: bool = Field(default=False, description="行列被積分関数として読むか")
    even: bool = Field(default=True, description="Ψ(−ω) = Ψ(ω) に対称化するか")
    builtin: str | None = Field(default=None, description="組み込みの名前")
    amplitude: float | None = Field(default=None, ge=0, lt=1, description="sin2theta の振幅")
    matrix: list[list[float]] | None = Field(default=None, description="norm_ellipse の行列")
    expr: str | None = Field(default=None, description="sympy の式")
    atoms: list[TableAtomSchema] | None = Field(default=None, description="表の点")
    lipschitz: float | None = Field(default=None, gt=0, description="表のリプシッツ定数")

    @model_validator(mode="after")
    def _check_kind(self) -> "IntegrandSchema":
        if self.d > self.n:
            raise ValueError(f"d={self.d} exceeds n={self.n}")
        if self.kind == "builtin":
            allowed = GRAPH_BUILTINS if self.graph else BUILTINS
            if self.builtin not in allowed:
                raise ValueError(f"builtin must be one of {allowed}, got {self.builtin!r}")
            if self.builtin == "norm_ellipse" and self.matrix is None:
                raise ValueError("norm_ellipse needs a matrix")
            if self.builtin == "sin2theta" and (self.n, self.d) != (2, 1):
                raise ValueError("sin2theta is defined for n=2, d=1")
        elif self.kind == "expression":
            if not self.expr:
                raise ValueError("expression integrand needs 'expr'")
        else:
            if self.graph:
                raise ValueError("table integrands are Grassmann integrands; set graph=false")
            if not self.atoms or self.lipschitz is None:
                raise ValueError("table integrand needs 'atoms' and 'lipschitz'")
        return self

    def to_domain(self) -> Integrand | MatrixIntegrand:
        """Integrand (graph=False) または MatrixIntegrand (graph=True)"""
        amplitude = 0.4 if self.amplitude is None else self.amplitude
        if self.graph:
            if self.kind == "expression":
                assert self.expr is not None
                return MatrixIntegrand.expression(self.expr, self.n, self.d)
            if self.builtin == "area":
                return MatrixIntegrand.area(self.n, self.d)
            return MatrixIntegrand.sin2theta_graph(amplitude)

        if self.kind == "expression":
            assert self.expr is not None
            return Integrand.expression(self.expr, self.n, self.d, even=self.even)
        if self.kind == "table":
            assert self.atoms is not None and self.lipschitz is not None
            entries = [(atom.omega, atom.value) for atom in self.atoms]
            return Integrand.table(entries, self.n, self.d, self.lipschitz, even=self.even)
        if self.builtin == "area":
            return Integrand.area(self.n, self.d)
        if self.builtin == "sin2theta":
            return Integrand.sin2theta(amplitude)
        assert self.matrix is not None
        return Integrand.norm_ellipse(self.matrix, self.n, self.d)

    def to_integrand(self) -> Integrand:
        """Grassmann 上の Ψ (グラフ形なら橋渡し Ψ = |ω0|·ψ(X))"""
        value = self.to_domain()
        return value.bridge() if isinstance(value, MatrixIntegrand) else value

    def to_matrix_integrand(self) -> MatrixIntegrand:
        """多価グラフ用の ψ

        Raises:
            ValueError: graph=False の場合
        """
        value = self.to_domain()
        if not isinstance(value, MatrixIntegrand):
            raise ValueError(f"integrand '{self.name}' is not a matrix integrand (graph=false)")
        return value

    @classmethod
    def example(cls) -> "IntegrandSchema":
        return cls(**cls.model_config["json_schema_extra"]["example"])  # type: ignore[index]
