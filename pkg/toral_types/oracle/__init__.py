from toral_types.oracle.base import OracleCheck, OracleReport
from toral_types.oracle.fixed_region import FixedRegionCheck, oracle_fixed_region
from toral_types.oracle.remark_orbit import (
    RemarkOrbitCheck,
    printed_pattern_check,
    remark_orbit_check,
)
from toral_types.oracle.stabilizer import StabilizerCheck, lemma_stabilizer_check
