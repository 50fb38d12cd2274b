"""Exact sheaf-counting invariants via fixed-point sums and fibration tables.

Two computational pillars, tied together by cross-checks:

* torus fixed-point sums on Hilbert schemes of points of the plane, with
  every intermediate an exact rational function in one equivariant
  parameter (`partitions`, `ratfunc`, `localization`);

* invariants of K3-fibered threefolds assembled from intersection-number
  tables, with generating series handled as exact truncated q-expansions
  on fractional grids (`qseries`, `nl_dt`).

Everything is exact: fractions.Fraction throughout, no floating point.
"""

from .errors import ConsistencyError, NLValidationError, PoleError
from .localization import (
    DEFAULT_SEED,
    dt_p3,
    fixed_point_contribution,
    contribution_from_characters,
    hilb_chern_integral,
    obstruction_character,
    p3_point_count,
    tangent_character,
)
from .nl_dt import (
    FibrationSpec,
    HilbertPolyK3,
    MukaiVector,
    NLTable,
    dt_from_nl,
    dt_symmetry_pair,
    hilb_index,
    moduli_dim,
    mukai_from_data,
    nl_dump,
    nl_load,
    nl_load_path,
    nl_loads,
    nl_symmetry_extend,
    phi_series,
    z_series_closed,
    z_series_direct,
)
from .partitions import (
    arm,
    boxes,
    enumerate_partitions,
    enumerate_triples,
    leg,
    triple_size,
)
from .qseries import (
    PuiseuxSeries,
    eta24,
    goettsche_series,
    hilb_euler,
    series_add,
    series_invert,
    series_mul,
    series_shift,
)
from .ratfunc import Poly, RationalFunction

__version__ = "0.1.0"

__all__ = [
    "ConsistencyError", "NLValidationError", "PoleError",
    "DEFAULT_SEED", "dt_p3", "fixed_point_contribution",
    "contribution_from_characters", "hilb_chern_integral",
    "obstruction_character", "p3_point_count", "tangent_character",
    "FibrationSpec", "HilbertPolyK3", "MukaiVector", "NLTable",
    "dt_from_nl", "dt_symmetry_pair", "hilb_index", "moduli_dim",
    "mukai_from_data", "nl_dump", "nl_load", "nl_load_path", "nl_loads",
    "nl_symmetry_extend", "phi_series", "z_series_closed", "z_series_direct",
    "arm", "boxes", "enumerate_partitions", "enumerate_triples", "leg",
    "triple_size",
    "PuiseuxSeries", "eta24", "goettsche_series", "hilb_euler",
    "series_add", "series_invert", "series_mul", "series_shift",
    "Poly", "RationalFunction",
    "__version__",
]
