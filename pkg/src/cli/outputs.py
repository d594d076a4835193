"""CLI の出力 (チェイン JSON、サイドカー、CSV)"""

import csv
import json
from pathlib import Path
from typing import Any, Sequence

from backend.chains import PolyChain, to_obj, to_svg
from backend.logging import cli_logger as logger
from pydantic import BaseModel
from schemas import ChainSchema


def write_text(path: str | Path, text: str) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")
    logger.info(f"written: {target}")
    return target


def write_model(path: str | Path, model: BaseModel) -> Path:
    """モデルをキーを整列した JSON で書く"""
    payload = json.loads(model.model_dump_json())
    return write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def write_chain(path: str | Path, chain: PolyChain) -> Path:
    return write_model(path, ChainSchema.from_domain(chain))


def write_sidecar(out: str | Path, chain: PolyChain, fmt: str, title: str | None = None) -> Path | None:
    """--format が svg / obj なら out と同じ名前の図を書く"""
    if fmt == "svg":
        return to_svg(chain, Path(out).with_suffix(".svg"), title=title)
    if fmt == "obj":
        return to_obj(chain, Path(out).with_suffix(".obj"))
    return None


def write_csv(path: str | Path, rows: Sequence[dict[str, Any]], columns: Sequence[str]) -> Path:
    """行を CSV に書く (列は columns の順)"""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=list(columns), extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    logger.info(f"CSV written: {target} ({len(rows)} rows)")
    return target
