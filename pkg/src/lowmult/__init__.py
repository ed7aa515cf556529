"""Low-weight multiples of binary primitive polynomials.

Finds multiples of a primitive P over GF(2) with bounded weight and
degree -- the precomputation behind correlation attacks on LFSR-based
stream ciphers -- either exhaustively or by seeded random sampling.
Two interchangeable exhaustive strategies are provided: a classical
store-and-probe residue table, and a discrete-logarithm table search
backed by a Pohlig-Hellman / baby-step giant-step engine with
Zech-logarithm support.
"""

from .errors import (
    DegreeOutOfRangeError,
    InstanceTooLargeError,
    LogOfZeroError,
    LowMultError,
    MemoryBudgetExceededError,
    NotPrimitiveError,
    PolyParseError,
    WeightTooSmallError,
    ZechUndefinedError,
    ZeroShiftError,
)
from .factorint import factorize, is_probable_prime
from .gf2poly import (
    FieldContext,
    SparsePoly,
    fe_mul,
    make_context,
    monomial_residue,
    parse_poly,
    random_primitive_poly,
    residue,
    verify_multiple,
)
from .dlog import (
    LogEngine,
    build_engine,
    discrete_log,
    load_engine,
    predict_table_bytes,
    save_engine,
    zech_log,
    zech_orbit,
)
from .search import (
    LogTable,
    LogTableEntry,
    MultipleRecord,
    RunReport,
    SearchParams,
    SearchResult,
    assemble_multiple,
    build_log_table,
    centered_shift,
    default_split,
    enumerate_tuples,
    estimate_count,
    logtmto_find_all,
    range_query,
    second_phase_bound,
    tmto_find_all,
)
from .sampler import (
    ProgressEvent,
    Rng,
    SampleParams,
    SampleResult,
    birthday_logtmto,
    birthday_tmto,
    random_log_sample,
    unrank_combination,
    write_progress_csv,
)
from .reference import brute_force_log, brute_force_multiples, poly_divides

__version__ = "0.1.0"

__all__ = [
    "DegreeOutOfRangeError", "InstanceTooLargeError", "LogOfZeroError",
    "LowMultError", "MemoryBudgetExceededError", "NotPrimitiveError",
    "PolyParseError", "WeightTooSmallError", "ZechUndefinedError",
    "ZeroShiftError",
    "factorize", "is_probable_prime",
    "FieldContext", "SparsePoly", "fe_mul", "make_context",
    "monomial_residue", "parse_poly", "random_primitive_poly", "residue",
    "verify_multiple",
    "LogEngine", "build_engine", "discrete_log", "load_engine",
    "predict_table_bytes", "save_engine", "zech_log", "zech_orbit",
    "LogTable", "LogTableEntry", "MultipleRecord", "RunReport",
    "SearchParams", "SearchResult", "assemble_multiple", "build_log_table",
    "centered_shift", "default_split", "enumerate_tuples", "estimate_count",
    "logtmto_find_all", "range_query", "second_phase_bound", "tmto_find_all",
    "ProgressEvent", "Rng", "SampleParams", "SampleResult",
    "birthday_logtmto", "birthday_tmto", "random_log_sample",
    "unrank_combination", "write_progress_csv",
    "brute_force_log", "brute_force_multiples", "poly_divides",
]
