"""Exact prime counting in intervals and empirical checks of conjectured bounds."""

from .errors import (
    BudgetError,
    DomainError,
    PrimeGaugeError,
    RangeOverflowError,
    UsageError,
)
from .sieve import (
    DEFAULT_BUDGET,
    DEFAULT_CHECKPOINT_STRIDE,
    DEFAULT_SEGMENT_SIZE,
    Interval,
    PiTable,
    PrimeBasis,
    build_basis,
    count_primes,
    is_prime,
    nth_prime,
    pi,
    pi_at_points,
)
from .conjectures import (
    LegEvaluation,
    NthPrimeBound,
    ThresholdResult,
    bertrand_check,
    brocard_count,
    brocard_decomposition,
    closed_interval_count,
    conj4_bound,
    conj4_crossover,
    conj_bounds_leg,
    evaluate_leg,
    interval_count,
    leg,
    leg_many,
    nagura_check,
    nth_prime_bound,
    pnt_ratio,
    rosser_check,
    rosser_ub_leg,
    threshold_formula,
    threshold_search,
)
from .scan_report import (
    RenderedTable,
    ScanRecord,
    TableSpec,
    emit,
    records_from_json,
    reproduce_table,
    run_scan,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "DomainError",
    "PrimeGaugeError",
    "RangeOverflowError",
    "UsageError",
    "DEFAULT_BUDGET",
    "DEFAULT_CHECKPOINT_STRIDE",
    "DEFAULT_SEGMENT_SIZE",
    "Interval",
    "PiTable",
    "PrimeBasis",
    "build_basis",
    "count_primes",
    "is_prime",
    "nth_prime",
    "pi",
    "pi_at_points",
    "LegEvaluation",
    "NthPrimeBound",
    "ThresholdResult",
    "bertrand_check",
    "brocard_count",
    "brocard_decomposition",
    "closed_interval_count",
    "conj4_bound",
    "conj4_crossover",
    "conj_bounds_leg",
    "evaluate_leg",
    "interval_count",
    "leg",
    "leg_many",
    "nagura_check",
    "nth_prime_bound",
    "pnt_ratio",
    "rosser_check",
    "rosser_ub_leg",
    "threshold_formula",
    "threshold_search",
    "RenderedTable",
    "ScanRecord",
    "TableSpec",
    "emit",
    "records_from_json",
    "reproduce_table",
    "run_scan",
]
