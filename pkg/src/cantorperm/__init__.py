"""Digit permutations acting on Cantor series expansions.

Exact (rational) machinery for a family of interval maps defined by
permuting each digit of a mixed-radix expansion independently: orbit
computation with random access, residue-class membership criteria,
density bookkeeping for periodic integer sets, star discrepancy, and
probes for non-monotonicity and difference-quotient behaviour.
"""

__version__ = "0.1.0"

from .errors import (
    CantorPermError,
    CheckFalsified,
    ComputationError,
    ValidationError,
)
from .base import (
    BaseSequence,
    DigitExpansion,
    GridInterval,
    as_fraction,
    decode,
    encode,
    grid_interval,
    interval_of,
    make_base,
    make_expansion,
    prefix_of_interval,
)
from .perms import (
    CyclicPermutation,
    PermutationVector,
    ResidueCondition,
    combine_crt,
    discrete_log,
    from_cycle,
    identity,
    identity_vector,
    make_cyclic,
    make_unchecked,
    parse_permutations,
    power_apply,
    prefix_residue,
    shift,
    shift_vector,
)
from .dynamics import (
    OrbitPoint,
    OrbitSpec,
    apply_map,
    apply_truncated,
    make_orbit,
    modulus_of_continuity_check,
    orbit_point,
    orbit_prefix,
)
from .density import (
    CoveringBound,
    PartitionVerdict,
    PeriodicSet,
    covering_bound,
    density,
    expand_to,
    from_condition,
    intersect,
    measurable_partition_check,
    normalize,
    parse_periodic_set,
    periodic_set,
    union,
)
from .equidist import (
    DiscrepancyResult,
    IntervalStat,
    LevelReport,
    PreservationReport,
    SOURCES,
    grid_points,
    interval_counts,
    kronecker_golden,
    membership_equivalence,
    star_discrepancy,
    ud_preservation_probe,
    van_der_corput,
)
from .analysis import (
    DerivativeProbeReport,
    LevelQuotients,
    MonotonicityWitness,
    QuotientSample,
    derivative_probe,
    difference_quotient,
    find_monotonicity_witness,
    find_witness_descending,
)

__all__ = [
    "__version__",
    "CantorPermError",
    "ValidationError",
    "ComputationError",
    "CheckFalsified",
    "BaseSequence",
    "DigitExpansion",
    "GridInterval",
    "as_fraction",
    "make_base",
    "make_expansion",
    "encode",
    "decode",
    "grid_interval",
    "interval_of",
    "prefix_of_interval",
    "CyclicPermutation",
    "PermutationVector",
    "ResidueCondition",
    "make_cyclic",
    "make_unchecked",
    "from_cycle",
    "shift",
    "identity",
    "shift_vector",
    "identity_vector",
    "power_apply",
    "discrete_log",
    "combine_crt",
    "prefix_residue",
    "parse_permutations",
    "OrbitSpec",
    "OrbitPoint",
    "make_orbit",
    "apply_map",
    "apply_truncated",
    "orbit_point",
    "orbit_prefix",
    "modulus_of_continuity_check",
    "PeriodicSet",
    "periodic_set",
    "from_condition",
    "parse_periodic_set",
    "density",
    "expand_to",
    "normalize",
    "intersect",
    "union",
    "CoveringBound",
    "covering_bound",
    "PartitionVerdict",
    "measurable_partition_check",
    "IntervalStat",
    "LevelReport",
    "DiscrepancyResult",
    "PreservationReport",
    "SOURCES",
    "star_discrepancy",
    "interval_counts",
    "membership_equivalence",
    "van_der_corput",
    "kronecker_golden",
    "grid_points",
    "ud_preservation_probe",
    "MonotonicityWitness",
    "QuotientSample",
    "LevelQuotients",
    "DerivativeProbeReport",
    "find_monotonicity_witness",
    "find_witness_descending",
    "difference_quotient",
    "derivative_probe",
]
