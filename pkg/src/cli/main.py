"""コマンドラインのエントリポイント

使い方:
    python main.py cycle --measure three_line_cycle --size 8 --out out/cycle.json --format svg
    python main.py converge --measure diagonal_filling --mode fill --sizes 3:9,4:16,5:25 --format csv --out out/fill.csv
    python main.py lp --psi sin2theta --candidates angle:45 --witness

終了コード: 0 正常、2 入力エラー、3 事後条件の失敗 (エラーのクラス名を標準エラーに出す)
"""

import argparse
import sys
from typing import Callable, Sequence

from pydantic import ValidationError

from backend.chains import ChainError, TransversalityError
from backend.constructions import ConstructionError, PositivityPostconditionError
from backend.energy import EnergyError, GapTooSmall
from backend.grassmann import GrassmannError
from backend.logging import DOMAIN_LOGGERS, apply_level
from backend.logging import cli_logger as logger
from backend.torus import DegenerateOffsetError, FillingPostconditionError, TorusError
from config.settings import get_settings
from schemas import RunReport

from .commands import (
    run_approx,
    run_construction,
    run_counterexample,
    run_energy,
    run_export,
    run_extract,
    run_lp,
)
from .config import RunConfig
from .convergence import run_convergence_study

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_POSTCONDITION_ERROR = 3

POSTCONDITION_ERRORS: tuple[type[Exception], ...] = (
    PositivityPostconditionError,
    FillingPostconditionError,
    DegenerateOffsetError,
    TransversalityError,
    GapTooSmall,
)
INPUT_ERRORS: tuple[type[Exception], ...] = (
    ValidationError,
    ValueError,
    FileNotFoundError,
    GrassmannError,
    ChainError,
    TorusError,
    ConstructionError,
    EnergyError,
)

HANDLERS: dict[str, Callable[[RunConfig], RunReport]] = {
    "cycle": run_construction,
    "fill": run_construction,
    "multigraph": run_construction,
    "extract": run_extract,
    "energy": run_energy,
    "lp": run_lp,
    "approx": run_approx,
    "counterexample": run_counterexample,
    "converge": run_convergence_study,
    "export": run_export,
}


def build_parser() -> argparse.ArgumentParser:
    """サブコマンドつきのパーサーを作る"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="出力先")
    common.add_argument("--offset-seed", dest="offset_prime", type=int, help="オフセットの素数")
    common.add_argument("--quad-order", dest="quad_order", type=int, help="求積次数 (1-3)")
    common.add_argument("--tolerance", type=float, help="比較の許容誤差")
    common.add_argument(
        "--format", choices=["json", "csv", "svg", "obj"], default="json", help="出力形式"
    )

    parser = argparse.ArgumentParser(
        prog="polyhedral-tangent-planes",
        description="接平面分布を指定した多面体チェインの構成と異方的エネルギーの評価",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    for name, text in (
        ("cycle", "重心 0 の測度からサイクルを構成"),
        ("fill", "重心 W_P0 の測度から単位立方体の境界の充填を構成"),
        ("multigraph", "正の向きの測度から正の向きの多価グラフを構成"),
    ):
        sub = subparsers.add_parser(name, parents=[common], help=text)
        sub.add_argument("--measure", required=True, help="測度 JSON のパスまたはプリセット名")
        sub.add_argument("--size", "-N", type=int, required=True, help="N")
        sub.add_argument("--height", "-M", type=int, help="M (省略時は ⌊√N⌋)")

    sub = subparsers.add_parser("extract", parents=[common], help="多価グラフから Q 価関数を抽出")
    sub.add_argument("--chain", required=True, help="チェイン JSON")
    sub.add_argument("--q", type=int, help="Q (省略時は係数の分母の最小公倍数)")

    sub = subparsers.add_parser("energy", parents=[common], help="異方的エネルギーの評価")
    sub.add_argument("--chain", required=True, help="チェイン JSON")
    sub.add_argument("--psi", help="被積分関数 (省略時は面積)")
    sub.add_argument("--steps", type=int, default=0, help="タイリング τ_i の段数 i")

    sub = subparsers.add_parser("lp", parents=[common], help="充填エネルギーの LP")
    sub.add_argument("--psi", required=True, help="被積分関数")
    sub.add_argument("--candidates", help="angle:STEP / cone / 測度")
    sub.add_argument("--witness", action="store_true", help="厳密なギャップの証人を探す")

    sub = subparsers.add_parser("approx", parents=[common], help="厳密形の原子測度で近似")
    sub.add_argument("--measure", required=True, help="測度 JSON")
    sub.add_argument("--eps", type=float, help="ワッサースタイン許容誤差")
    sub.add_argument("--positive", action="store_true", help="P0 に関する正の錐に収める")

    sub = subparsers.add_parser("counterexample", parents=[common], help="非多凸な ψ の反例")
    sub.add_argument("--psi", required=True, help="行列被積分関数 (graph=true)")
    sub.add_argument("--candidates", help="証人を探す候補")
    sub.add_argument("--sizes", help="(M:N) のスケジュール")
    sub.add_argument("--eps", type=float, help="ワッサースタイン許容誤差")

    sub = subparsers.add_parser("converge", parents=[common], help="収束の検証")
    sub.add_argument("--measure", required=True, help="測度")
    sub.add_argument("--sizes", required=True, help="4,8,16 または 3:9,4:16")
    sub.add_argument("--mode", choices=["cycle", "fill", "multigraph"], default="cycle")
    sub.add_argument("--psi", help="エネルギー列の被積分関数 (省略時は面積)")

    sub = subparsers.add_parser("export", parents=[common], help="SVG / OBJ へ書き出し")
    sub.add_argument("--chain", required=True, help="チェイン JSON")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values = {key: value for key, value in vars(args).items() if value is not None}
    return RunConfig(**values)


def main(argv: Sequence[str] | None = None) -> int:
    """CLI を実行して終了コードを返す

    Args:
        argv: 引数 (None なら sys.argv[1:])

    Returns:
        int: 0 正常、2 入力エラー、3 事後条件の失敗
    """
    args = build_parser().parse_args(argv)
    try:
        apply_level(DOMAIN_LOGGERS, get_settings().LOG_LEVEL.value)
        config = config_from_args(args)
        logger.info(f"command '{config.command}' started with {config.echo()}")
        report = HANDLERS[config.command](config)
    except POSTCONDITION_ERRORS as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_POSTCONDITION_ERROR
    except INPUT_ERRORS as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    sys.stdout.write(report.to_json())
    logger.info(f"command '{config.command}' finished")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
