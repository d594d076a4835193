"""収束の検証 (run_convergence_study)

サイズごとに構成を実行し、TV 誤差・質量・エネルギー・ハウスドルフ距離・
バリフォールド対の残差を1行にまとめる。wall_time 列だけは非決定的。
"""

import time
from typing import Any, Callable

import numpy as np

from backend.chains import PolyChain, varifold_pair
from backend.energy import Integrand, energy_chain
from backend.logging import cli_logger as logger
from config.settings import get_settings
from schemas import RunReport

from .commands import construct, reference_sampler, require
from .config import RunConfig
from .inputs import load_integrand_schema, load_measure
from .outputs import write_csv, write_text

TestFunction = Callable[[np.ndarray, tuple], float]

# (名前, f(x, key), ∫_{[0,1]} f dx1)
VARIFOLD_TESTS: tuple[tuple[str, TestFunction, float], ...] = (
    ("one", lambda x, key: 1.0, 1.0),
    ("x1", lambda x, key: float(x[0]), 0.5),
    ("x1sq", lambda x, key: float(x[0]) ** 2, 1.0 / 3.0),
)

CSV_COLUMNS = (
    "N",
    "M",
    "cells",
    "tv_error",
    "mass",
    "energy",
    "hausdorff",
    "varifold_one",
    "varifold_x1",
    "varifold_x1sq",
    "wall_time",
)


def varifold_residuals(chain: PolyChain, total_mass: float, order: int) -> dict[str, float]:
    """f ∈ {1, x1, x1²} の対と極限値 (∫f dx1 × μ の全質量) の差

    極限は、サイクルなら単位立方体上の一様分布、充填・多価グラフなら単位 d 立方体上の
    一様分布と μ の積。どちらも x1 方向の周辺分布は [0,1] 上の一様分布になる。
    """
    return {
        f"varifold_{name}": abs(varifold_pair(chain, function, order) - expected * total_mass)
        for name, function, expected in VARIFOLD_TESTS
    }


def _strictly_decreasing(values: list[float]) -> bool:
    return all(later < earlier for earlier, later in zip(values, values[1:]))


def monotonicity_flags(rows: list[dict[str, Any]], mode: str) -> dict[str, Any]:
    """TV 誤差とハウスドルフ距離の単調性、バリフォールド残差の改善率"""
    flags: dict[str, Any] = {
        "tv_decreasing": _strictly_decreasing([row["tv_error"] for row in rows]),
        "hausdorff_decreasing": _strictly_decreasing([row["hausdorff"] for row in rows]),
    }
    first = max(rows[0][f"varifold_{name}"] for name, _, _ in VARIFOLD_TESTS)
    last = max(rows[-1][f"varifold_{name}"] for name, _, _ in VARIFOLD_TESTS)
    flags["varifold_improvement"] = first / last if last > 0 else None
    if mode == "cycle":
        flags["within_bound"] = all(
            row["c_constant"] is None or row["tv_error"] <= row["c_constant"] / row["N"] + 1e-9
            for row in rows
        )
    return flags


def run_convergence_study(config: RunConfig) -> RunReport:
    """サイズのリストについて構成を繰り返し、1サイズ1行の表を作る

    Args:
        config: command="converge" の RunConfig (measure, sizes, mode が必要)

    Returns:
        RunReport: rows に各サイズの行、results に単調性フラグ

    Raises:
        ValueError: 測度やサイズが指定されていない場合
    """
    started = time.perf_counter()
    measure = load_measure(require(config.measure, "--measure", config.command))
    if not config.sizes:
        raise ValueError("'converge' needs --sizes")
    schema = load_integrand_schema(config.psi) if config.psi else None
    integrand = schema.to_integrand() if schema is not None else Integrand.area(measure.n, measure.d)
    if (integrand.n, integrand.d) != (measure.n, measure.d):
        raise ValueError(
            f"integrand is on Gr({integrand.d},{integrand.n}), measure on Gr({measure.d},{measure.n})"
        )
    resolution = get_settings().HAUSDORFF_RESOLUTION
    order = config.resolved_quad_order()
    sampler = reference_sampler(config.mode, measure.n, measure.d)
    total_mass = measure.total_mass()

    rows: list[dict[str, Any]] = []
    for height, size in config.sizes:
        tick = time.perf_counter()
        result = construct(config, measure, height, size)
        row: dict[str, Any] = {
            "N": size,
            "M": height,
            "cells": len(result.chain),
            "tv_error": result.tv_error,
            "mass": result.mass,
            "energy": energy_chain(integrand, result.chain),
            "hausdorff": result.hausdorff_to(sampler, resolution) if len(result.chain) else 0.0,
            "c_constant": result.c_constant,
            **varifold_residuals(result.chain, total_mass, order),
            "wall_time": round(time.perf_counter() - tick, 6),
        }
        logger.info(
            f"converge[{config.mode}]: M={height}, N={size}, cells={row['cells']}, "
            f"tv_error={row['tv_error']:.6g}, hausdorff={row['hausdorff']:.4g}"
        )
        rows.append(row)

    results = monotonicity_flags(rows, config.mode)
    deterministic_rows = [{k: v for k, v in row.items() if k != "wall_time"} for row in rows]
    report = RunReport(
        command=config.command,
        parameters=config.echo(),
        results=results,
        rows=deterministic_rows,
        timing={
            "wall_time": round(time.perf_counter() - started, 6),
            **{f"N={row['N']}": row["wall_time"] for row in rows},
        },
    )
    if config.out:
        if config.format == "csv":
            write_csv(config.out, rows, CSV_COLUMNS)
        else:
            write_text(config.out, report.to_json())
        report.outputs.append(str(config.out))
    return report
