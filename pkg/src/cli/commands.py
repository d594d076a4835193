"""サブコマンドの実装

各コマンドは RunConfig を受け取り、RunReport を返す。ファイル出力 (--out) も
ここで行う。すべての出力は入力が検証されたあとに書く。
"""

import time
from fractions import Fraction
from typing import Any

import numpy as np

from backend.chains import box_sampler, cube_in_plane, slice_total
from backend.constructions import (
    ConstructionResult,
    build_cycle,
    build_filling,
    build_multigraph,
    extract_qvalued,
    tile_shrink,
)
from backend.energy import (
    GapTooSmall,
    Integrand,
    MatrixIntegrand,
    counterexample_multigraph,
    energy_chain,
    energy_multigraph,
    energy_report,
    rational_approx,
    solve_filling_lp,
    strict_gap_witness,
)
from backend.grassmann import GrassmannMeasure, coordinate_plane, wasserstein_distance
from backend.logging import cli_logger as logger
from config.settings import get_settings
from schemas import IntegrandSchema, LPReport, MeasureSchema, RunReport

from .config import RunConfig
from .inputs import (
    load_chain,
    load_integrand_schema,
    load_measure,
    load_source_measure,
    resolve_candidates,
)
from .outputs import write_chain, write_model, write_sidecar, write_text


def require(value: Any, flag: str, command: str) -> Any:
    if value is None:
        raise ValueError(f"'{command}' needs {flag}")
    return value


def _report(config: RunConfig, results: dict[str, Any], started: float, **extra: Any) -> RunReport:
    return RunReport(
        command=config.command,
        parameters=config.echo(),
        results=results,
        timing={"wall_time": round(time.perf_counter() - started, 6)},
        **extra,
    )


# --------------------------
#  構成 (cycle / fill / multigraph)
# --------------------------


def construct(config: RunConfig, measure: GrassmannMeasure, height: int, size: int) -> ConstructionResult:
    """config.command (converge なら config.mode) の構成を1回実行する"""
    mode = config.mode if config.command == "converge" else config.command
    if mode == "cycle":
        return build_cycle(measure, size, config.offset_prime)
    if mode == "fill":
        return build_filling(measure, size, height, config.offset_prime)
    return build_multigraph(measure, size, height, config.offset_prime)


def reference_sampler(mode: str, n: int, d: int) -> Any:
    """ハウスドルフ距離の参照集合 (サイクルは単位立方体、それ以外は単位 d 立方体)"""
    if mode == "cycle":
        return box_sampler([0.0] * n, [1.0] * n)
    return cube_in_plane(n, d)


def run_construction(config: RunConfig) -> RunReport:
    """cycle / fill / multigraph"""
    started = time.perf_counter()
    measure = load_measure(require(config.measure, "--measure", config.command))
    height, size = config.grid()
    result = construct(config, measure, height, size)

    results = result.summary()
    if not result.chain.is_empty():
        sampler = reference_sampler(config.command, measure.n, measure.d)
        results["hausdorff"] = result.hausdorff_to(sampler, get_settings().HAUSDORFF_RESOLUTION)

    outputs = []
    if config.out:
        outputs.append(str(write_chain(config.out, result.chain)))
        sidecar = write_sidecar(config.out, result.chain, config.format, title=config.command)
        if sidecar is not None:
            outputs.append(str(sidecar))
    logger.info(
        f"{config.command}: N={size}, cells={len(result.chain)}, tv_error={result.tv_error:.6g}"
    )
    return _report(config, results, started, outputs=outputs)


# --------------------------
#  extract
# --------------------------


def run_extract(config: RunConfig) -> RunReport:
    """正の向きの 1 チェインを Q 価関数として読み、一般のファイバーの次数を検査する"""
    started = time.perf_counter()
    chain = load_chain(require(config.chain, "--chain", config.command))
    multiplicity, function = extract_qvalued(chain, config.q)

    a, b = function.breakpoints[0], function.breakpoints[1]
    fiber_x = (a + b) / 2
    base = (fiber_x,) + (Fraction(0),) * function.codimension
    directions = [
        tuple(Fraction(1) if k == j else Fraction(0) for k in range(chain.n))
        for j in range(1, chain.n)
    ]
    degree = slice_total(chain, base, directions)

    results = {
        "Q": multiplicity,
        "domain": [str(x) for x in function.domain],
        "breakpoints": [str(x) for x in function.breakpoints],
        "values": [
            [[str(c) for c in value] for value in function.evaluate(x)]
            for x in function.breakpoints
        ],
        "lipschitz": function.lipschitz,
        "continuous": function.is_continuous(),
        "fiber_x": str(fiber_x),
        "fiber_degree": str(degree),
    }
    report = _report(config, results, started)
    if config.out:
        write_text(config.out, report.to_json())
    return report


# --------------------------
#  energy
# --------------------------


def _grassmann_integrand(schema: IntegrandSchema | None, n: int, d: int) -> Integrand:
    if schema is None:
        return Integrand.area(n, d)
    if (schema.n, schema.d) != (n, d):
        raise ValueError(f"integrand is on Gr({schema.d},{schema.n}), chain needs Gr({d},{n})")
    return schema.to_integrand()


def run_energy(config: RunConfig) -> RunReport:
    """∫Ψ dγ_T と原子ごとの寄与。--steps i なら τ_0..τ_i のエネルギー列も出す"""
    started = time.perf_counter()
    chain = load_chain(require(config.chain, "--chain", config.command))
    schema = load_integrand_schema(config.psi) if config.psi else None
    integrand = _grassmann_integrand(schema, chain.n, chain.d)

    results: dict[str, Any] = {
        "integrand": integrand.name,
        "energy": energy_chain(integrand, chain),
        "mass": chain.mass(),
        "atoms": energy_report(integrand, chain),
    }
    if schema is not None and schema.graph and chain.d == 1:
        results["multigraph_energy"] = energy_multigraph(schema.to_matrix_integrand(), chain)

    rows = []
    if config.steps > 0:
        for i in range(config.steps + 1):
            tiled = tile_shrink(chain, i)
            rows.append({"i": i, "energy": energy_chain(integrand, tiled), "cells": len(tiled)})
        slack = config.resolved_tolerance()
        results["nonincreasing"] = all(
            later["energy"] <= earlier["energy"] + slack for earlier, later in zip(rows, rows[1:])
        )
    report = _report(config, results, started, rows=rows)
    if config.out:
        write_text(config.out, report.to_json())
    return report


# --------------------------
#  lp
# --------------------------


def run_lp(config: RunConfig) -> RunReport:
    """候補集合上の充填エネルギー LP (gap > 0 なら多凸性の破れ)"""
    started = time.perf_counter()
    schema = load_integrand_schema(require(config.psi, "--psi", config.command))
    integrand = schema.to_integrand()
    reference = coordinate_plane(schema.n, schema.d)
    candidates = resolve_candidates(config.candidates, schema.n, schema.d)
    result = solve_filling_lp(integrand, reference, candidates)
    witness = strict_gap_witness(integrand, reference, candidates) if config.witness else None

    lp_report = LPReport.from_domain(result, witness=witness is not None)
    results = lp_report.model_dump(mode="json")
    if witness is not None:
        results["witness_measure"] = MeasureSchema.from_float(witness).model_dump(
            mode="json", exclude_none=True
        )
    report = _report(config, results, started)
    if config.out:
        write_text(config.out, report.to_json())
    return report


# --------------------------
#  approx
# --------------------------


def run_approx(config: RunConfig) -> RunReport:
    """浮動小数点の測度を厳密形の原子測度で近似し、--out に測度 JSON を書く"""
    started = time.perf_counter()
    source = load_source_measure(require(config.measure, "--measure", config.command))
    eps = config.eps if config.eps is not None else get_settings().WASSERSTEIN_EPS
    cone = coordinate_plane(source.n, source.d) if config.positive else None
    measure = rational_approx(source, eps, positive_cone=cone)

    results = {
        "atoms": len(measure),
        "eps": eps,
        "wasserstein": wasserstein_distance(source, measure, tolerance=1e-6),
        "barycenter": [str(c) for c in measure.barycenter().coords],
        "total_mass": measure.total_mass(),
    }
    outputs = []
    if config.out:
        outputs.append(str(write_model(config.out, MeasureSchema.from_domain(measure, name="approx"))))
    return _report(config, results, started, outputs=outputs)


# --------------------------
#  counterexample
# --------------------------


def run_counterexample(config: RunConfig) -> RunReport:
    """ψ の多凸性の破れから F_ψ(u) < Q·F_ψ(0) となる Q 価関数を作る"""
    started = time.perf_counter()
    schema = load_integrand_schema(require(config.psi, "--psi", config.command))
    psi: MatrixIntegrand = schema.to_matrix_integrand()
    bridge = psi.bridge()
    reference = coordinate_plane(psi.n, psi.d)
    candidates = resolve_candidates(config.candidates, psi.n, psi.d)
    witness = strict_gap_witness(bridge, reference, candidates)
    if witness is None:
        raise GapTooSmall(f"no polyconvexity gap for {psi.name} on {len(candidates)} candidates")

    result = counterexample_multigraph(
        psi, witness, eps=config.eps, sizes=config.sizes or None, offset_prime=config.offset_prime
    )
    results = {
        "Q": result.multiplicity,
        "energy": result.energy,
        "reference": result.reference,
        "margin": result.margin,
        "gap": result.gap,
        "M": result.size[0],
        "N": result.size[1],
        "lipschitz": result.function.lipschitz,
        "cells": len(result.construction.chain),
    }
    outputs = []
    if config.out:
        outputs.append(str(write_chain(config.out, result.construction.chain)))
    return _report(config, results, started, rows=result.history, outputs=outputs)


# --------------------------
#  export
# --------------------------


def run_export(config: RunConfig) -> RunReport:
    """チェイン JSON を SVG (n=2) または OBJ (n=3) に書き出す"""
    started = time.perf_counter()
    chain = load_chain(require(config.chain, "--chain", config.command))
    out = require(config.out, "--out", config.command)
    if config.format not in ("svg", "obj"):
        raise ValueError(f"export needs --format svg or obj, got {config.format}")
    written = write_sidecar(out, chain, config.format, title=config.chain)
    bounds = np.array([[float(x) for x in v] for v in chain.vertices()]) if len(chain) else None
    results = {
        "cells": len(chain),
        "mass": chain.mass(),
        "bounds": [bounds.min(axis=0).tolist(), bounds.max(axis=0).tolist()] if bounds is not None else [],
    }
    return _report(config, results, started, outputs=[str(written)])
