from .exceptions import (
    DegenerateOffsetError,
    FillingPostconditionError,
    NonZeroClassError,
    TorusError,
)
from .family import (
    PlaneFamily,
    generic_offsets,
    parallelepiped_chain,
    subtorus_chain,
    unit_cube_region,
)
from .filling import (
    PeriodicFilling,
    build_periodic_filling,
    cycle_of,
    default_base_point,
    family_class,
    fill_cycle,
    filling_defect,
    offset_defect,
)
from .lattice import LatticeCell
from .periodic import PeriodicChain, periodic_boundary_equal, periodic_equal
from .tiles import TileSplit, region_cycle, split_tile, tile_fundamental

__all__ = [
    "TorusError",
    "NonZeroClassError",
    "DegenerateOffsetError",
    "FillingPostconditionError",
    "PlaneFamily",
    "generic_offsets",
    "parallelepiped_chain",
    "subtorus_chain",
    "unit_cube_region",
    "PeriodicFilling",
    "build_periodic_filling",
    "cycle_of",
    "default_base_point",
    "family_class",
    "fill_cycle",
    "filling_defect",
    "offset_defect",
    "LatticeCell",
    "PeriodicChain",
    "periodic_boundary_equal",
    "periodic_equal",
    "TileSplit",
    "region_cycle",
    "split_tile",
    "tile_fundamental",
]
