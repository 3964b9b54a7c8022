from fractions import Fraction

#: Environment variable holding the default directory for CLI output files
OUTPUT_DIR_ENV = "TORAL_TYPES_OUTPUT_DIR"

#: Default truncation order t^N of the Laurent-series field used by the oracle
DEFAULT_PRECISION = 8

#: Membership and symplecticity claims are made modulo t^(N - slack)
DEFAULT_SLACK = 2

#: The oracle refuses truncation orders below this
MIN_PRECISION = 4

#: Default residue field size
DEFAULT_Q = 3

DEFAULT_SAMPLES = 64
MIN_SAMPLES = 32
DEFAULT_STABILIZER_SAMPLES = 1000
DEFAULT_SEED = 20240607

#: Half-width of the vertex box [-r, r]^n scanned by the fixed-region oracle
DEFAULT_ORACLE_BOX = 1

#: Drawing window (both axes) for figures of the Sp_4 apartment
DEFAULT_FIGURE_WINDOW = (Fraction(-1, 2), Fraction(1))

#: Pixels per unit of apartment coordinates
FIGURE_SCALE = 240
FIGURE_MARGIN = 24

#: Fixed styling of rendered figures
FIGURE_STYLE = {
    "wall_stroke": "#000000",
    "wall_width": 0.6,
    "region_fill": "#bdbdbd",
    "region_stroke": "#7f7f7f",
    "region_width": 3.0,
    "omega_stroke": "#000000",
    "omega_width": 1.2,
    "omega_dash": "3,3",
    "point_radius": 3.0,
    "point_fill": "#000000",
    "label_size": 14,
    "label_offset": (6, -6),
}

#: Stated in every census report
REPRESENTATION_SCOPE = (
    "Counts are the geometric criteria for types; that Type locations induce "
    "pairwise non-isomorphic types is taken as proven, and B^T is taken equal "
    "to A^T for this family of tori."
)
