from .affine import (
    cube_chain,
    kuhn_simplices,
    prism,
    pushforward_affine,
    scale,
    shrink,
    simplex_chain,
    translate,
)
from .chain import PolyChain, boundary, chain_from_cells, gaussian_image, mass
from .currents import currents_equal, is_zero, reduce
from .exceptions import (
    ChainError,
    DegenerateSimplexError,
    EmptyChainError,
    SingularMapError,
    TransversalityError,
)
from .export import to_obj, to_svg
from .hausdorff import box_sampler, cube_in_plane, hausdorff_distance, sample_chain
from .polytope import HalfSpace, Polytope, box_halfspaces, clip_parametrized
from .quadrature import quadrature_rule, varifold_pair
from .restrict import intersect_boundary, restrict
from .simplex import Cell, OrientedSimplex, Point, as_point, cell_wedge
from .slicing import slice_fiber, slice_total

__all__ = [
    "PolyChain",
    "OrientedSimplex",
    "Cell",
    "Point",
    "as_point",
    "cell_wedge",
    "chain_from_cells",
    "boundary",
    "mass",
    "gaussian_image",
    "restrict",
    "intersect_boundary",
    "is_zero",
    "currents_equal",
    "reduce",
    "pushforward_affine",
    "translate",
    "scale",
    "shrink",
    "cube_chain",
    "simplex_chain",
    "kuhn_simplices",
    "prism",
    "slice_fiber",
    "slice_total",
    "varifold_pair",
    "quadrature_rule",
    "hausdorff_distance",
    "box_sampler",
    "cube_in_plane",
    "sample_chain",
    "HalfSpace",
    "Polytope",
    "box_halfspaces",
    "clip_parametrized",
    "to_svg",
    "to_obj",
    "ChainError",
    "DegenerateSimplexError",
    "TransversalityError",
    "EmptyChainError",
    "SingularMapError",
]
