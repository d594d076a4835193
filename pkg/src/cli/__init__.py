"""コマンドラインフロントエンド (構成・収束検証・エネルギー/LP レポート・書き出し)"""

from .config import RunConfig, parse_sizes
from .convergence import run_convergence_study
from .main import EXIT_INPUT_ERROR, EXIT_OK, EXIT_POSTCONDITION_ERROR, build_parser, main

__all__ = [
    "RunConfig",
    "parse_sizes",
    "run_convergence_study",
    "build_parser",
    "main",
    "EXIT_OK",
    "EXIT_INPUT_ERROR",
    "EXIT_POSTCONDITION_ERROR",
]
