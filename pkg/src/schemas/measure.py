from fractions import Fraction
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from backend.grassmann import FloatMeasure, GrassmannMeasure

from .rational import parse_rational


class AtomSchema(BaseModel):
    """測度の原子

    厳密形 (basis と scale) か浮動小数点形 (omega と mass) のどちらか一方を持つ。

    Attributes:
        basis: 平面の基底列 ("p/q" 文字列の列のリスト)
        scale: スケール s ("p/q")。原子の質量は s·|wedge(basis)|
        omega: d ベクトルの座標 (multi_indices の順、単位化される)
        mass: 質量
    """

    basis: list[list[str]] | None = Field(default=None, description="基底列ベクトル")
    scale: str | None = Field(default=None, description="スケール (p/q)")
    omega: list[float] | None = Field(default=None, description="d ベクトルの座標")
    mass: float | None = Field(default=None, gt=0, description="質量")

    @field_validator("basis", mode="before")
    @classmethod
    def _check_basis(cls, value: Any) -> Any:
        if value is None:
            return value
        return [[parse_rational(x) for x in column] for column in value]

    @field_validator("scale", mode="before")
    @classmethod
    def _check_scale(cls, value: Any) -> Any:
        return None if value is None else parse_rational(value)

    @model_validator(mode="after")
    def _one_form(self) -> "AtomSchema":
        exact = self.basis is not None and self.scale is not None
        floating = self.omega is not None and self.mass is not None
        if exact == floating:
            raise ValueError("an atom needs either (basis, scale) or (omega, mass)")
        return self

    @property
    def exact(self) -> bool:
        return self.basis is not None


class MeasureSchema(BaseModel):
    """原子測度の JSON

    Examples:
        >>> MeasureSchema.example().to_domain().barycenter().is_zero()
        True
    """

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "name": "three_line_cycle",
                "n": 2,
                "d": 1,
                "atoms": [
                    {"basis": [["1", "1"]], "scale": "1"},
                    {"basis": [["1", "-1"]], "scale": "1"},
                    {"basis": [["-2", "0"]], "scale": "1"},
                ],
            }
        }
    )

    name: str = Field(default="", description="プリセット名")
    description: str = Field(default="", description="説明")
    n: int = Field(..., ge=1, le=8, description="周囲空間の次元")
    d: int = Field(..., ge=1, description="平面の次元")
    atoms: list[AtomSchema] = Field(default_factory=list, description="原子")

    @model_validator(mode="after")
    def _check_shape(self) -> "MeasureSchema":
        if self.d > self.n:
            raise ValueError(f"d={self.d} exceeds n={self.n}")
        for atom in self.atoms:
            if atom.basis is not None:
                if len(atom.basis) != self.d or any(len(c) != self.n for c in atom.basis):
                    raise ValueError(f"basis {atom.basis} is not {self.d} columns in R^{self.n}")
        return self

    @property
    def is_exact(self) -> bool:
        return all(atom.exact for atom in self.atoms)

    def to_domain(self) -> GrassmannMeasure:
        """厳密形の測度 (浮動小数点形の原子があれば ValueError)"""
        if not self.is_exact:
            raise ValueError(f"measure '{self.name}' has float atoms; use to_float()")
        entries = [(atom.basis, Fraction(atom.scale)) for atom in self.atoms]
        return GrassmannMeasure.from_bases(self.n, self.d, entries)

    def to_float(self) -> FloatMeasure:
        result = FloatMeasure(self.n, self.d)
        for atom in self.atoms:
            if atom.exact:
                single = GrassmannMeasure.from_bases(
                    self.n, self.d, [(atom.basis, Fraction(atom.scale))]
                ).to_float()
                for key, (omega, mass) in single.atoms.items():
                    result.add(key, omega, mass)
            else:
                partial = FloatMeasure.from_vectors(self.n, self.d, [(atom.omega, atom.mass)])
                for key, (omega, mass) in partial.atoms.items():
                    result.add(key, omega, mass)
        return result

    @classmethod
    def from_domain(cls, measure: GrassmannMeasure, name: str = "") -> "MeasureSchema":
        atoms = [
            AtomSchema(
                basis=[[str(x) for x in column] for column in plane.basis], scale=str(scale)
            )
            for plane, scale in measure.atoms
        ]
        return cls(name=name, n=measure.n, d=measure.d, atoms=atoms)

    @classmethod
    def from_float(cls, measure: FloatMeasure, name: str = "") -> "MeasureSchema":
        atoms = [
            AtomSchema(omega=[float(c) for c in omega.coords], mass=mass)
            for omega, mass in measure.atoms.values()
        ]
        return cls(name=name, n=measure.n, d=measure.d, atoms=atoms)

    @classmethod
    def example(cls) -> "MeasureSchema":
        """3原子 (1,1), (1,−1), (−2,0) の重心 0 の測度"""
        return cls(**cls.model_config["json_schema_extra"]["example"])  # type: ignore[index]
