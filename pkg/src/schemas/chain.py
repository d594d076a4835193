from fractions import Fraction
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from backend.chains import PolyChain
from backend.torus import PeriodicChain

from .rational import parse_rational


class CellSchema(BaseModel):
    """単体1つ (頂点 d+1 個と係数)"""

    vertices: list[list[str]] = Field(..., description="頂点座標 (p/q)")
    coeff: str = Field(..., description="係数 (p/q)")

    @field_validator("vertices", mode="before")
    @classmethod
    def _check_vertices(cls, value: Any) -> Any:
        return [[parse_rational(x) for x in vertex] for vertex in value]

    @field_validator("coeff", mode="before")
    @classmethod
    def _check_coeff(cls, value: Any) -> str:
        return parse_rational(value)


class ChainSchema(BaseModel):
    """多面体チェインの JSON (periodic なら R^n/Z^n 上の代表)

    Examples:
        >>> len(ChainSchema.example().to_domain())
        1
    """

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "n": 2,
                "d": 1,
                "periodic": False,
                "cells": [{"vertices": [["0", "0"], ["1", "0"]], "coeff": "1"}],
            }
        }
    )

    n: int = Field(..., ge=1, description="周囲空間の次元")
    d: int = Field(..., ge=0, description="次数")
    periodic: bool = Field(default=False, description="周期的チェインか")
    cells: list[CellSchema] = Field(default_factory=list, description="セル")

    @model_validator(mode="after")
    def _check_cells(self) -> "ChainSchema":
        if self.d > self.n:
            raise ValueError(f"d={self.d} exceeds n={self.n}")
        for cell in self.cells:
            if len(cell.vertices) != self.d + 1 or any(len(v) != self.n for v in cell.vertices):
                raise ValueError(f"cell {cell.vertices} is not a {self.d}-simplex in R^{self.n}")
        return self

    def to_domain(self) -> PolyChain:
        entries = [(cell.vertices, Fraction(cell.coeff)) for cell in self.cells]
        return PolyChain.from_simplices(self.n, self.d, entries)

    def to_periodic(self) -> PeriodicChain:
        return PeriodicChain.from_chain(self.to_domain())

    @classmethod
    def from_domain(cls, chain: PolyChain | PeriodicChain) -> "ChainSchema":
        periodic = isinstance(chain, PeriodicChain)
        source = chain.representatives if isinstance(chain, PeriodicChain) else chain
        cells = [
            CellSchema(vertices=[[str(x) for x in v] for v in cell], coeff=str(coeff))
            for cell, coeff in source.items()
        ]
        return cls(n=source.n, d=source.d, periodic=periodic, cells=cells)

    @classmethod
    def example(cls) -> "ChainSchema":
        return cls(**cls.model_config["json_schema_extra"]["example"])  # type: ignore[index]
