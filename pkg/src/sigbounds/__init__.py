"""Regex characteristics over the {<,=,>} alphabet, time-series constraint
evaluation, sharp result-variable bounds, and brute-force certification."""

from .sigregex import (
    ALPHABET,
    EQ,
    GT,
    LT,
    Automaton,
    EmptyLanguageError,
    NotDisjunctionCapsuledError,
    ParseError,
    RegexError,
    bounded_height_automaton,
    check_word,
    parse,
    render,
    word_key,
)
from .sigregex import compile as compile_regex
from .series import (
    DEFAULT_POLICY,
    MINUS_INF,
    NEUTRAL_POLICY,
    PLUS_INF,
    Aggregator,
    DefaultPolicy,
    Domain,
    DomainError,
    EmptyPatternError,
    Feature,
    Occurrence,
    PatternSpec,
    SeriesError,
    TimeSeries,
    enumerate_series,
    evaluate,
    feature_of,
    fmt_ext,
    maximal_occurrences,
    signature,
    supporting_series,
    word_height,
)
from .characteristics import (
    AmbiguousInducingWordError,
    CharacteristicsError,
    CharacteristicsReport,
    CharKind,
    CharValue,
    WordNotInLanguageError,
    default_cap,
    height,
    inducing_words,
    overlap,
    overlap_of_words,
    range_of,
    range_params,
    report,
    shift,
    smallest_variation,
    superpositions,
    variation_of_words,
    width,
)
from .properties import (
    FixedLengthRegexError,
    PropertiesError,
    PropertyCheck,
    is_fixed_length,
    minimal_words,
    nb_no_overlap,
    nb_overlap,
    nb_simple,
    occurrence_feasible,
    overlap_class,
    width_max,
    width_occurrence,
    width_sum,
)
from .bounds import (
    BoundError,
    BoundResult,
    NotApplicableError,
    NotSupportedError,
    OverlapExceedsWidthError,
    PropertyMissingError,
    Side,
    VariationUndefinedError,
    bound,
    interval_cap,
    max_width_upper,
    min_width_lower,
    nb_lower,
    nb_upper,
    sum_width_upper,
)
from .oracle import (
    DEFAULT_BUDGET,
    GF_SUPPORTED,
    BudgetExceededError,
    ExtremaResult,
    SweepReport,
    SweepRow,
    brute_extrema,
    brute_overlap,
    brute_variation,
    check_budget,
    sharpness_report,
)
from .catalogue import (
    CatalogueEntry,
    CatalogueError,
    UnknownPatternError,
    all_entries,
    golden_check,
    lookup,
    names,
)

__version__ = "0.1.0"

__all__ = [
    "ALPHABET",
    "LT",
    "EQ",
    "GT",
    "Automaton",
    "RegexError",
    "ParseError",
    "EmptyLanguageError",
    "NotDisjunctionCapsuledError",
    "parse",
    "render",
    "compile_regex",
    "bounded_height_automaton",
    "check_word",
    "word_key",
    "Aggregator",
    "Feature",
    "Domain",
    "DomainError",
    "TimeSeries",
    "PatternSpec",
    "Occurrence",
    "DefaultPolicy",
    "DEFAULT_POLICY",
    "NEUTRAL_POLICY",
    "PLUS_INF",
    "MINUS_INF",
    "SeriesError",
    "EmptyPatternError",
    "signature",
    "word_height",
    "evaluate",
    "feature_of",
    "maximal_occurrences",
    "enumerate_series",
    "supporting_series",
    "fmt_ext",
    "CharKind",
    "CharValue",
    "CharacteristicsError",
    "CharacteristicsReport",
    "WordNotInLanguageError",
    "AmbiguousInducingWordError",
    "width",
    "height",
    "range_of",
    "range_params",
    "inducing_words",
    "overlap",
    "overlap_of_words",
    "superpositions",
    "shift",
    "variation_of_words",
    "smallest_variation",
    "default_cap",
    "report",
    "PropertiesError",
    "PropertyCheck",
    "FixedLengthRegexError",
    "nb_simple",
    "nb_overlap",
    "nb_no_overlap",
    "width_max",
    "width_sum",
    "width_occurrence",
    "occurrence_feasible",
    "overlap_class",
    "is_fixed_length",
    "minimal_words",
    "BoundError",
    "BoundResult",
    "NotApplicableError",
    "NotSupportedError",
    "OverlapExceedsWidthError",
    "VariationUndefinedError",
    "PropertyMissingError",
    "Side",
    "bound",
    "nb_lower",
    "nb_upper",
    "interval_cap",
    "max_width_upper",
    "sum_width_upper",
    "min_width_lower",
    "BudgetExceededError",
    "ExtremaResult",
    "SweepRow",
    "SweepReport",
    "DEFAULT_BUDGET",
    "GF_SUPPORTED",
    "brute_extrema",
    "brute_overlap",
    "brute_variation",
    "check_budget",
    "sharpness_report",
    "CatalogueEntry",
    "CatalogueError",
    "UnknownPatternError",
    "all_entries",
    "lookup",
    "names",
    "golden_check",
    "__version__",
]
