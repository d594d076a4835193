from pathlib import Path

from .logger import apply_level, setup_logger

# プロジェクトルートのlogsフォルダを使用
# src/backend/logging/__init__.py → 3つ上がプロジェクトルート
_PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent.parent
_LOGS_DIR = _PROJECT_ROOT / "logs"

# ドメインパッケージごとのロガー (構成計算は INFO、内部ループは DEBUG)
grassmann_logger = setup_logger(
    "backend.grassmann", log_file=str(_LOGS_DIR / "grassmann.log"), level=20
)
chains_logger = setup_logger(
    "backend.chains", log_file=str(_LOGS_DIR / "chains.log"), level=20
)
torus_logger = setup_logger(
    "backend.torus", log_file=str(_LOGS_DIR / "torus.log"), level=20
)
construction_logger = setup_logger(
    "backend.constructions", log_file=str(_LOGS_DIR / "constructions.log"), level=20
)
energy_logger = setup_logger(
    "backend.energy", log_file=str(_LOGS_DIR / "energy.log"), level=20
)
lp_logger = setup_logger("backend.lp", log_file=str(_LOGS_DIR / "lp.log"), level=20)
cli_logger = setup_logger(
    "cli", log_file=str(_LOGS_DIR / "cli.log"), level=20, console=False
)

DOMAIN_LOGGERS = (
    grassmann_logger,
    chains_logger,
    torus_logger,
    construction_logger,
    energy_logger,
    lp_logger,
    cli_logger,
)

__all__ = [
    "setup_logger",
    "apply_level",
    "grassmann_logger",
    "chains_logger",
    "torus_logger",
    "construction_logger",
    "energy_logger",
    "lp_logger",
    "cli_logger",
    "DOMAIN_LOGGERS",
]
