"""構成の共通処理 (オフセット素数の再試行・基準平面)"""

from fractions import Fraction
from typing import Callable, TypeVar

from sympy import nextprime

from backend.chains import PolyChain, TransversalityError, cube_chain
from backend.grassmann import GrassmannMeasure, RationalPlane, coordinate_plane
from backend.logging import construction_logger as logger
from backend.torus import DegenerateOffsetError
from config.settings import get_settings

from .exceptions import NonMatchingClassError, PositivityPostconditionError

T = TypeVar("T")

RETRYABLE = (DegenerateOffsetError, TransversalityError, PositivityPostconditionError)


def with_offset_retries(
    build: Callable[[int], T], label: str, offset_prime: int | None = None
) -> T:
    """素数 p で build(p) を試し、オフセット起因の失敗なら次の素数で作り直す

    Args:
        build: 素数を受け取って構成する関数
        label: ログ用の名前
        offset_prime: 最初の素数 (既定は設定の OFFSET_PRIME)

    Returns:
        T: build の戻り値

    Raises:
        DegenerateOffsetError | TransversalityError | PositivityPostconditionError:
            MAX_OFFSET_RETRIES 回作り直しても失敗した場合 (最後の例外)
    """
    settings = get_settings()
    prime = int(offset_prime or settings.OFFSET_PRIME)
    retries = settings.MAX_OFFSET_RETRIES
    for attempt in range(retries + 1):
        try:
            return build(prime)
        except RETRYABLE as error:
            if attempt == retries:
                raise
            following = int(nextprime(prime))
            logger.warning(
                f"{label}: prime {prime} rejected ({type(error).__name__}: {error}); "
                f"trying {following}"
            )
            prime = following
    raise AssertionError("unreachable")


def reference_plane(n: int, d: int) -> RationalPlane:
    """P0 = span(e_1, …, e_d)"""
    return coordinate_plane(n, d)


def unit_disc(n: int, d: int) -> PolyChain:
    """[D] = [0,1]^d × {0} (正の向き)"""
    return cube_chain([0] * n, [1] * d + [0] * (n - d))


def check_matching_class(measure: GrassmannMeasure) -> RationalPlane:
    """重心が W_P0 と一致することを確かめて P0 を返す"""
    plane = reference_plane(measure.n, measure.d)
    barycenter = measure.barycenter()
    if barycenter != plane.W:
        raise NonMatchingClassError(
            f"barycenter {barycenter.as_dict()} differs from W_P0 = {plane.W.as_dict()}"
        )
    return plane


def is_identity(measure: GrassmannMeasure) -> bool:
    """μ = δ_P0 (スケール 1) か"""
    plane = reference_plane(measure.n, measure.d)
    return measure.atoms == ((plane, Fraction(1)),)
