"""格子構成 (サイクル・充填・多価グラフ)、Q 価関数の抽出、タイリング"""

from .common import reference_plane, unit_disc, with_offset_retries
from .cycle import build_cycle
from .exceptions import (
    BoundaryMismatchError,
    ConstructionError,
    NegativeCellError,
    NonIntegralAfterScaling,
    NonMatchingClassError,
    OrientationError,
    PositivityPostconditionError,
)
from .filling import build_filling, plane_heights
from .multigraph import (
    build_multigraph,
    extension_graph,
    is_positive_chain,
    non_positive_cells,
    plateau_graph,
)
from .qvalued import QValuedPL, extract_qvalued
from .result import ConstructionResult
from .tiling import tile_shrink

__all__ = [
    "ConstructionError",
    "NonMatchingClassError",
    "OrientationError",
    "PositivityPostconditionError",
    "NegativeCellError",
    "NonIntegralAfterScaling",
    "BoundaryMismatchError",
    "ConstructionResult",
    "build_cycle",
    "build_filling",
    "build_multigraph",
    "extract_qvalued",
    "tile_shrink",
    "QValuedPL",
    "plane_heights",
    "plateau_graph",
    "extension_graph",
    "is_positive_chain",
    "non_positive_cells",
    "reference_plane",
    "unit_disc",
    "with_offset_retries",
]
