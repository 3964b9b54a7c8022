from importlib import metadata

from toral_types.apartment import (
    Facet,
    Region,
    enumerate_vertices,
    facet_of,
    omega_region,
    optimal_point_radius_sl_n,
    simplicial_closure,
    simplicial_radius,
)
from toral_types.census import CensusInput, CensusReport, classify_location, run_census
from toral_types.roots import (
    AffineRoot,
    ApartmentPoint,
    RootDatum,
    WeylWord,
    build_root_datum,
    eval_affine,
    fundamental_alcove_vertices,
    reduce_to_alcove,
)
from toral_types.torus import (
    TorusSpec,
    attachment_point,
    fixed_region,
    is_single_facet_closure,
    parse_spec,
    torus_radius,
)

try:
    __version__: str = metadata.version("toral-types")
except metadata.PackageNotFoundError:
    __version__ = "0.0.0"
