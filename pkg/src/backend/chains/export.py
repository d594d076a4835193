"""チェインの静的エクスポート (SVG: n=2、OBJ: n=3, d ≤ 2)"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.collections import LineCollection, PolyCollection  # noqa: E402

from backend.logging import chains_logger as logger  # noqa: E402

from .chain import PolyChain  # noqa: E402

POSITIVE_COLOR = "#1f77b4"
NEGATIVE_COLOR = "#d62728"


def to_svg(chain: PolyChain, path: str | Path, title: str | None = None) -> Path:
    """平面チェインを SVG に描く (線の色は係数の符号)

    Args:
        chain: n = 2 のチェイン
        path: 出力先
        title: 図のタイトル

    Returns:
        Path: 書き出したファイル
    """
    if chain.n != 2:
        raise ValueError(f"SVG export needs n = 2, got n = {chain.n}")
    target = Path(path)
    fig, ax = plt.subplots(figsize=(6, 6))
    colors = [POSITIVE_COLOR if coeff > 0 else NEGATIVE_COLOR for _, coeff in chain.items()]
    shapes = [[(float(x), float(y)) for x, y in cell] for cell, _ in chain.items()]
    if chain.d == 1:
        ax.add_collection(LineCollection(shapes, colors=colors, linewidths=0.8))
    elif chain.d == 2:
        ax.add_collection(
            PolyCollection(shapes, facecolors=colors, edgecolors="none", alpha=0.4)
        )
    else:
        xs = [p[0][0] for p in shapes]
        ys = [p[0][1] for p in shapes]
        ax.scatter(xs, ys, c=colors, s=8)
    ax.autoscale()
    ax.set_aspect("equal")
    if title:
        ax.set_title(title)
    fig.savefig(target, format="svg", bbox_inches="tight")
    plt.close(fig)
    logger.info(f"SVG written: {target} ({len(chain)} cells)")
    return target


def to_obj(chain: PolyChain, path: str | Path) -> Path:
    """空間チェインを Wavefront OBJ に書く (d=1 は l 行、d=2 は f 行)

    負の係数のセルは頂点順を逆にして向きを表す。
    """
    if chain.n != 3 or chain.d not in (1, 2):
        raise ValueError(f"OBJ export needs n = 3 and d in (1, 2), got ({chain.n}, {chain.d})")
    target = Path(path)
    index: dict[tuple, int] = {}
    for vertex in chain.vertices():
        index[vertex] = len(index) + 1
    lines = [f"# {len(chain)} cells"]
    for vertex in index:
        lines.append("v " + " ".join(f"{float(x):.12g}" for x in vertex))
    tag = "l" if chain.d == 1 else "f"
    for cell, coeff in chain.items():
        ids = [index[v] for v in cell]
        if coeff < 0:
            ids.reverse()
        lines.append(tag + " " + " ".join(str(i) for i in ids))
    target.write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.info(f"OBJ written: {target} ({len(index)} vertices)")
    return target
