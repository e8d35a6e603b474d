"""Exact counting of distinct abelian-square factors in words."""

__version__ = "0.1.0"

from abelsq.constructions import layered_prefix, layered_structure_checks, triple_block
from abelsq.contfrac import CertifiedReal, ContinuedFraction, FractionalParts
from abelsq.counting import (
    DensityReport,
    SquareSpectrum,
    density_report,
    inequivalent_spectrum,
    per_factor_average,
    spectrum,
    stable_spectrum,
)
from abelsq.discrepancy import discrepancy, discrepancy_bound
from abelsq.errors import BudgetError, NonStabilizationError, RefinementCapError, ResourceCapError
from abelsq.explore import max_as_search, random_word_statistic
from abelsq.regular import LinearRepresentation, RecurrenceSystem, tm_f_linear_rep, tm_f_recurrence
from abelsq.sturmian import (
    IntervalPartition,
    SturmianSpec,
    compare_frac,
    heavy_light,
    interval_partition,
    sturmian_as_count,
    sturmian_density_check,
    sturmian_prefix,
    window_count,
)
from abelsq.thuemorse import (
    defect,
    factor_defect,
    tm_complexity,
    tm_f_bruteforce,
    tm_f_closed_forms,
    tm_f_extrema_scan,
    tm_faa_fab,
    tm_prefix,
)
from abelsq.words import (
    Alphabet,
    FactorId,
    PrefixParikhTable,
    Word,
    distinct_factors,
    factor_parikh,
    is_abelian_k_power,
    is_abelian_square,
    is_balanced,
    max_power_order,
    parikh,
    period_and_exponent,
    right_special_factors,
)
