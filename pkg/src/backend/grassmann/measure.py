"""向き付きグラスマン多様体上の有限原子測度

- GrassmannMeasure: 厳密形。原子 (RationalPlane, 正の有理スケール s) の並びで、
  原子の質量は s·|W_P|、重心 Σ s·W_P は丸めなしの有理 d ベクトル。
- FloatMeasure: 浮動小数点形。キー (原始整数 W、または無理方向なら単位ベクトル) ごとに
  単位 d ベクトル ω と質量を持つ。ガウス像・LP 解・近似の入力に使う。
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .dvector import DVector, wedge_of_columns
from .exceptions import DimensionMismatchError, ExactFloatMixError
from .linalg import as_fraction
from .plane import RationalPlane, plane_from_columns

FloatKey = tuple


@dataclass(frozen=True)
class GrassmannMeasure:
    """厳密な原子測度 Σ s_i |W_i| δ_{P_i}

    Attributes:
        n: 周囲空間の次元
        d: 平面の次元
        atoms: (平面, スケール) のタプル。同じ W の原子はまとめられ、スケールは正。

    Examples:
        >>> mu = GrassmannMeasure.from_bases(2, 1, [([(1, 1)], 1), ([(1, -1)], 1)])
        >>> mu.barycenter().as_dict()
        {(0,): Fraction(2, 1)}
    """

    n: int
    d: int
    atoms: tuple[tuple[RationalPlane, Fraction], ...] = ()

    def __post_init__(self) -> None:
        merged: dict[RationalPlane, Fraction] = {}
        for plane, scale in self.atoms:
            if (plane.n, plane.d) != (self.n, self.d):
                raise DimensionMismatchError(
                    f"atom {plane!r} does not live in Gr({self.d},{self.n})"
                )
            value = as_fraction(scale)
            if value < 0:
                raise ValueError(f"negative scale {value} for {plane!r}")
            merged[plane] = merged.get(plane, Fraction(0)) + value
        ordered = tuple(
            (plane, merged[plane])
            for plane in sorted(merged, key=lambda p: p.key)
            if merged[plane] > 0
        )
        object.__setattr__(self, "atoms", ordered)

    # --------------------------
    #  生成
    # --------------------------

    @classmethod
    def from_pairs(
        cls, n: int, d: int, pairs: Iterable[tuple[RationalPlane, object]]
    ) -> "GrassmannMeasure":
        return cls(n, d, tuple((plane, as_fraction(scale)) for plane, scale in pairs))

    @classmethod
    def from_bases(
        cls,
        n: int,
        d: int,
        entries: Iterable[tuple[Sequence[Sequence[object]], object]],
    ) -> "GrassmannMeasure":
        """基底列とスケールの組から作る

        原子 (B, s) は測度 s·|wedge(B)|·δ_P を表す。内部では原始的な W_P に合わせて
        スケールを s·wedge(B)/W_P に換算する (例: B=(−2,0), s=1 は W=(−1,0), s=2)。

        Args:
            n: 周囲次元
            d: 平面次元
            entries: (基底列ベクトルのリスト, スケール) の組

        Returns:
            GrassmannMeasure: 厳密形の測度
        """
        atoms = []
        for columns, scale in entries:
            plane = plane_from_columns(columns)
            factor = wedge_of_columns(columns).ratio_to(plane.W)
            if factor is None or factor <= 0:
                raise DimensionMismatchError(f"basis {columns} does not match {plane!r}")
            atoms.append((plane, as_fraction(scale) * factor))
        return cls(n, d, tuple(atoms))

    @classmethod
    def dirac(cls, plane: RationalPlane, scale: object = 1) -> "GrassmannMeasure":
        return cls(plane.n, plane.d, ((plane, as_fraction(scale)),))

    # --------------------------
    #  演算
    # --------------------------

    def __add__(self, other: "GrassmannMeasure") -> "GrassmannMeasure":
        if (self.n, self.d) != (other.n, other.d):
            raise DimensionMismatchError("measures on different Grassmannians")
        return GrassmannMeasure(self.n, self.d, self.atoms + other.atoms)

    def __iter__(self) -> Iterator[tuple[RationalPlane, Fraction]]:
        return iter(self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def is_empty(self) -> bool:
        return not self.atoms

    def scaled(self, factor: object) -> "GrassmannMeasure":
        value = as_fraction(factor)
        return GrassmannMeasure(
            self.n, self.d, tuple((p, s * value) for p, s in self.atoms)
        )

    def support(self) -> tuple[RationalPlane, ...]:
        return tuple(plane for plane, _ in self.atoms)

    def barycenter(self) -> DVector:
        """厳密重心 Σ s_i W_i"""
        total = DVector.zero(self.n, self.d)
        for plane, scale in self.atoms:
            total = total + plane.W.scaled(scale)
        return total

    def total_mass(self) -> float:
        return sum(float(scale) * plane.W.norm() for plane, scale in self.atoms)

    def to_float(self) -> "FloatMeasure":
        """原子質量 s·|W| の浮動小数点形"""
        result = FloatMeasure(self.n, self.d)
        for plane, scale in self.atoms:
            result.add(plane.key, plane.omega, float(scale) * plane.W.norm())
        return result


def barycenter_exact(measure: GrassmannMeasure) -> DVector:
    """Σ scale_i·W_i を厳密に返す

    Examples:
        >>> mu = GrassmannMeasure.from_bases(
        ...     2, 1, [([(1, 1)], 1), ([(1, -1)], 1), ([(-2, 0)], 1)]
        ... )
        >>> barycenter_exact(mu).is_zero()
        True
    """
    return measure.barycenter()


@dataclass
class FloatMeasure:
    """浮動小数点形の原子測度

    Attributes:
        n: 周囲空間の次元
        d: 平面の次元
        atoms: キー → (単位 d ベクトル ω, 質量)。有理平面のキーは原始整数 W のタプル。
    """

    n: int
    d: int
    atoms: dict[FloatKey, tuple[DVector, float]] = field(default_factory=dict)

    def add(self, key: FloatKey, omega: DVector, mass: float) -> None:
        if omega.exact:
            raise ExactFloatMixError("FloatMeasure stores float unit d-vectors")
        if key in self.atoms:
            previous, current = self.atoms[key]
            self.atoms[key] = (previous, current + mass)
        else:
            self.atoms[key] = (omega, mass)

    @classmethod
    def from_vectors(
        cls, n: int, d: int, entries: Iterable[tuple[Sequence[float], float]]
    ) -> "FloatMeasure":
        """浮動小数点の d ベクトル座標と質量の組から作る (座標は単位化される)"""
        result = cls(n, d)
        for coords, mass in entries:
            omega = DVector.float_from(coords, n, d).unit()
            result.add(_float_key(omega), omega, float(mass))
        return result

    def keys(self) -> list[FloatKey]:
        return sorted(self.atoms, key=repr)

    def mass_of(self, key: FloatKey) -> float:
        return self.atoms[key][1] if key in self.atoms else 0.0

    def total_mass(self) -> float:
        return sum(mass for _, mass in self.atoms.values())

    def barycenter(self) -> DVector:
        total = DVector.zero(self.n, self.d, exact=False)
        for omega, mass in self.atoms.values():
            total = total + omega.scaled(mass)
        return total

    def normalized(self) -> "FloatMeasure":
        total = self.total_mass()
        result = FloatMeasure(self.n, self.d)
        for key, (omega, mass) in self.atoms.items():
            result.add(key, omega, mass / total)
        return result

    def scaled(self, factor: float) -> "FloatMeasure":
        result = FloatMeasure(self.n, self.d)
        for key, (omega, mass) in self.atoms.items():
            result.add(key, omega, mass * factor)
        return result

    def pruned(self, threshold: float) -> "FloatMeasure":
        """質量が threshold 以下の原子を除く"""
        result = FloatMeasure(self.n, self.d)
        for key, (omega, mass) in self.atoms.items():
            if mass > threshold:
                result.add(key, omega, mass)
        return result

    def integrate(self, function: "object") -> float:
        """∫ f dμ = Σ 質量·f(ω)"""
        return sum(mass * function(omega) for omega, mass in self.atoms.values())  # type: ignore[operator]


def _float_key(omega: DVector) -> FloatKey:
    return tuple(round(c, 12) for c in omega.coords)
