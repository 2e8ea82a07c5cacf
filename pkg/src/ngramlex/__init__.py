"""Corpus statistics for Google Books 1-gram data: per-year frequency
tables, vocabulary growth curves, expected-vocabulary models, power-law
fits, and a Monte Carlo sampling oracle."""

__version__ = "0.1.0"

from .errors import (
    CorruptSnapshot,
    DataError,
    DomainError,
    EmptyRange,
    EmptyTable,
    FitDiagnosticError,
    InsufficientData,
    InsufficientPoints,
    MalformedLine,
    MalformedRecord,
    NgramlexError,
    NoInteriorMaximum,
    NonPositiveValue,
)
from .ingest import (
    FilterConfig,
    FrequencyTable,
    IngestReport,
    TokenRecord,
    build_year_tables,
    load_totalcounts,
    merge_year_tables,
    normalize_token,
    parse_ngram_line,
    parse_snapshot,
    read_records,
    read_snapshot_file,
    snapshot_bytes,
    write_snapshot_file,
)
from .growth import (
    FunctionWordList,
    GrowthCurve,
    HeapsSeries,
    content_share,
    function_word_share,
    growth_points,
    sliding_heaps,
    window_extract,
)
from .model import (
    ExponentScan,
    ModelConfig,
    ProbabilityVector,
    expected_vocab,
    expected_vocab_grid,
    expected_vocab_modified,
    geometric_grid,
    hit_probability,
    local_heaps_exponent,
    model_growth_curve,
    zipf_probs,
)
from .fit import (
    PowerLawFit,
    RankFrequency,
    fit_powerlaw_ls,
    fit_report,
    fit_zipf_mle,
    fit_zipf_mle_counts,
    rank_table,
)
from .oracle import McEstimate, mc_expected_vocab, sample_distinct_count

__all__ = [
    "__version__",
    "NgramlexError",
    "DomainError",
    "DataError",
    "MalformedLine",
    "MalformedRecord",
    "CorruptSnapshot",
    "EmptyTable",
    "EmptyRange",
    "InsufficientData",
    "InsufficientPoints",
    "NonPositiveValue",
    "NoInteriorMaximum",
    "FitDiagnosticError",
    "TokenRecord",
    "FilterConfig",
    "FrequencyTable",
    "IngestReport",
    "parse_ngram_line",
    "normalize_token",
    "read_records",
    "build_year_tables",
    "merge_year_tables",
    "load_totalcounts",
    "snapshot_bytes",
    "parse_snapshot",
    "write_snapshot_file",
    "read_snapshot_file",
    "GrowthCurve",
    "FunctionWordList",
    "HeapsSeries",
    "growth_points",
    "function_word_share",
    "content_share",
    "sliding_heaps",
    "window_extract",
    "ProbabilityVector",
    "ModelConfig",
    "ExponentScan",
    "zipf_probs",
    "hit_probability",
    "expected_vocab",
    "expected_vocab_grid",
    "expected_vocab_modified",
    "local_heaps_exponent",
    "model_growth_curve",
    "geometric_grid",
    "RankFrequency",
    "PowerLawFit",
    "rank_table",
    "fit_powerlaw_ls",
    "fit_zipf_mle",
    "fit_zipf_mle_counts",
    "fit_report",
    "McEstimate",
    "sample_distinct_count",
    "mc_expected_vocab",
]
