import logging
import sys
from pathlib import Path
from typing import Iterable, Optional, TextIO
from logging.handlers import TimedRotatingFileHandler, RotatingFileHandler

_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
_DATEFMT = "%Y-%m-%d %H:%M:%S"


def setup_logger(
    name: str,
    log_file: Optional[str] = None,
    level: int = logging.DEBUG,
    console: bool = True,
    stream: Optional[TextIO] = None,
    file_encoding: str = "utf-8",
    file_handler_type: str = "rotating",
    file_max_bytes: int = 10 * 1024 * 1024,
    file_backup_count: int = 5,
) -> logging.Logger:
    """ロガーをセットアップする

    コンソール出力とファイル出力の両方に対応したロガーを構築。
    既存のハンドラは自動的にクリアされ、重複を防ぐ。
    コンソール出力は標準エラーに出す (CLI のレポート出力と混ざらないように)。

    Args:
        name: ロガー名 (通常はパッケージ名を渡す)
        log_file: ログファイルのパス (Noneの場合はファイル出力なし)
        level: ログレベル (logging.DEBUG, INFO, WARNING, ERROR)
        console: コンソール出力するかどうか
        stream: コンソール出力先 (None なら呼び出し時点の sys.stderr)
        file_encoding: ログファイルのエンコーディング (デフォルト: utf-8)
        file_handler_type: ファイルハンドラの種類 ("rotating" or "timed", その他はFileHandler)
        file_max_bytes: ログファイルの最大サイズ (バイト単位, デフォルト: 10MB)
        file_backup_count: バックアップファイルの数 (デフォルト: 5)

    Returns:
        logging.Logger: 設定済みのロガーインスタンス

    Examples:
        >>> from backend.logging import setup_logger
        >>> logger = setup_logger("backend.chains", log_file="chains.log")
        >>> logger.info("restrict: 12 cells kept")
    """
    logger = logging.getLogger(name)
    logger.setLevel(level)
    logger.propagate = False

    # 既存のハンドラをクリア（重複防止 + ファイルハンドル解放）
    for handler in logger.handlers[:]:
        handler.close()
        logger.removeHandler(handler)

    formatter = logging.Formatter(_FORMAT, datefmt=_DATEFMT)

    if console:
        console_handler = logging.StreamHandler(stream if stream is not None else sys.stderr)
        console_handler.setFormatter(formatter)
        console_handler.setLevel(level)
        logger.addHandler(console_handler)

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)

        file_handler: logging.Handler
        if file_handler_type == "rotating":
            file_handler = RotatingFileHandler(
                log_file,
                maxBytes=file_max_bytes,
                backupCount=file_backup_count,
                encoding=file_encoding,
            )
        elif file_handler_type == "timed":
            file_handler = TimedRotatingFileHandler(
                log_file,
                when="midnight",
                interval=1,
                backupCount=file_backup_count,
                encoding=file_encoding,
            )
        else:
            file_handler = logging.FileHandler(log_file, encoding=file_encoding)
        file_handler.setFormatter(formatter)
        file_handler.setLevel(level)
        logger.addHandler(file_handler)

    return logger


def apply_level(loggers: Iterable[logging.Logger], level: int | str) -> None:
    """ロガーとそのハンドラのレベルをまとめて変更する

    Settings.LOG_LEVEL を CLI 起動時に反映するために使う。

    Args:
        loggers: 対象ロガー
        level: ログレベル (数値または "DEBUG" などの名前)
    """
    resolved = logging.getLevelName(level) if isinstance(level, str) else level
    for logger in loggers:
        logger.setLevel(resolved)
        for handler in logger.handlers:
            handler.setLevel(resolved)

