"""有理数の文字列表現 ("p/q") の検証"""

from fractions import Fraction

from backend.grassmann.linalg import as_fraction


def parse_rational(value: object) -> str:
    """int または "p/q" 文字列を正規化した文字列にする

    Raises:
        ValueError: 有理数として解釈できない場合 (float は受け付けない)

    Examples:
        >>> parse_rational(" 2/4 ")
        '1/2'
        >>> parse_rational(3)
        '3'
    """
    if isinstance(value, (int, str, Fraction)) and not isinstance(value, bool):
        try:
            return str(as_fraction(value))
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"'{value}' is not a rational number") from e
    raise ValueError(f"rational must be given as 'p/q' or an integer, got {value!r}")
