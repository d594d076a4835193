from .dvector import (
    DVector,
    MultiIndex,
    float_wedge,
    minors_map,
    multi_indices,
    wedge_of_columns,
)
from .exceptions import (
    DimensionMismatchError,
    ExactFloatMixError,
    GrassmannError,
    MassMismatchError,
    NotSimpleError,
    RankDeficientError,
)
from .measure import FloatMeasure, GrassmannMeasure, barycenter_exact
from .metrics import chordal_distance, tv_distance, wasserstein_distance
from .plane import (
    RationalPlane,
    coordinate_plane,
    head_index,
    is_positively_oriented,
    plane_from_basis,
    plane_from_columns,
    plane_from_dvector,
)

__all__ = [
    "DVector",
    "MultiIndex",
    "float_wedge",
    "minors_map",
    "multi_indices",
    "wedge_of_columns",
    "GrassmannError",
    "DimensionMismatchError",
    "ExactFloatMixError",
    "MassMismatchError",
    "NotSimpleError",
    "RankDeficientError",
    "FloatMeasure",
    "GrassmannMeasure",
    "barycenter_exact",
    "chordal_distance",
    "tv_distance",
    "wasserstein_distance",
    "RationalPlane",
    "coordinate_plane",
    "head_index",
    "is_positively_oriented",
    "plane_from_basis",
    "plane_from_columns",
    "plane_from_dvector",
]
