"""CLI の入力 (測度・被積分関数・チェイン・LP 候補) の読み込み

--measure / --psi にはファイルパスかプリセット名を渡せる。
"""

from pathlib import Path

from backend.chains import PolyChain
from backend.energy import angle_candidates, cone_planes
from backend.grassmann import FloatMeasure, GrassmannMeasure, RationalPlane, coordinate_plane
from backend.logging import cli_logger as logger
from config.presets import PresetManager, load_json_model
from schemas import ChainSchema, IntegrandSchema, MeasureSchema


def _is_path(reference: str) -> bool:
    return reference.endswith(".json") or Path(reference).exists()


def load_measure_schema(reference: str) -> MeasureSchema:
    """パスまたはプリセット名から測度スキーマを読む

    Raises:
        FileNotFoundError: パスが存在しない場合
        ValueError: JSON やスキーマが不正、またはプリセットが未定義の場合
    """
    if _is_path(reference):
        schema = load_json_model(Path(reference), MeasureSchema)
    else:
        schema = PresetManager().load_measure(reference)
    assert isinstance(schema, MeasureSchema)
    logger.info(f"measure loaded: {reference} (n={schema.n}, d={schema.d}, atoms={len(schema.atoms)})")
    return schema


def load_measure(reference: str) -> GrassmannMeasure:
    """厳密形の測度を読む (浮動小数点の原子があれば ValueError)"""
    return load_measure_schema(reference).to_domain()


def load_source_measure(reference: str) -> GrassmannMeasure | FloatMeasure:
    """厳密形ならそのまま、浮動小数点の原子を含めば FloatMeasure を返す"""
    schema = load_measure_schema(reference)
    return schema.to_domain() if schema.is_exact else schema.to_float()


def load_integrand_schema(reference: str) -> IntegrandSchema:
    if _is_path(reference):
        schema = load_json_model(Path(reference), IntegrandSchema)
    else:
        schema = PresetManager().load_integrand(reference)
    assert isinstance(schema, IntegrandSchema)
    logger.info(f"integrand loaded: {reference} (kind={schema.kind}, graph={schema.graph})")
    return schema


def load_chain(path: str) -> PolyChain:
    schema = load_json_model(Path(path), ChainSchema)
    assert isinstance(schema, ChainSchema)
    chain = schema.to_domain()
    logger.info(f"chain loaded: {path} (n={chain.n}, d={chain.d}, cells={len(chain)})")
    return chain


def resolve_candidates(reference: str | None, n: int, d: int) -> list[RationalPlane]:
    """LP の候補平面 (P0 は常に含める)

    Args:
        reference: "angle:STEP" (n=2, d=1 の角度格子)、"cone" (成分 −1,0,1 の平面)、
            測度のパス/プリセット名 (その台)、または None (n=2, d=1 なら 45° 格子、他は cone)
        n: 周囲次元
        d: 平面次元

    Returns:
        list[RationalPlane]: 候補平面

    Raises:
        ValueError: 書式や次元が不正な場合
    """
    plane = coordinate_plane(n, d)
    if reference is None:
        reference = "angle:45" if (n, d) == (2, 1) else "cone"
    if reference.startswith("angle:"):
        if (n, d) != (2, 1):
            raise ValueError(f"angle candidates need n=2, d=1, got n={n}, d={d}")
        try:
            step = float(reference.split(":", 1)[1])
        except ValueError as e:
            raise ValueError(f"Invalid candidate set '{reference}'") from e
        if not 0 < step <= 90:
            raise ValueError(f"angle step must lie in (0, 90], got {step}")
        planes = angle_candidates(step)
    elif reference == "cone":
        planes = cone_planes(n, d)
    else:
        measure = load_measure(reference)
        if (measure.n, measure.d) != (n, d):
            raise ValueError(
                f"candidate measure lives in Gr({measure.d},{measure.n}), expected Gr({d},{n})"
            )
        planes = list(measure.support())
    if plane not in planes:
        planes = [plane] + list(planes)
    return list(planes)
