"""Factor frequencies of pure morphic words.

Exact big-integer level recurrences give per-letter image counts of a factor
without expanding the fixed point; frequency-weighted ratios over unbounded
letters converge to the factor frequency with a guaranteed error bound, and
a streaming generator provides the independent empirical oracle.
"""

from .errors import (
    BigIntLimitExceeded,
    DegenerateAlpha,
    DegenerateSupport,
    DuplicateRule,
    EmptyFactor,
    ErasingRule,
    MissingRule,
    MorphfreqError,
    NotProlongable,
    ParseError,
    UnknownLetter,
)
from .frequency import (
    ErrorBound,
    FactorFrequencyReport,
    LevelRatio,
    LevelRecord,
    LevelSummary,
    advance_summaries,
    estimate_frequency,
    guaranteed_error_bound,
    initial_summaries,
    level_ratio,
    level_summaries,
)
from .intervals import Interval
from .morphism import (
    LetterClassification,
    Morphism,
    apply,
    classify_letters,
    incidence_matrix,
    is_primitive,
    is_prolongable,
    iterate_length,
    morphism,
    parse_morphism,
    prolongable_letters,
    serialize_morphism,
)
from .report import TOOL_VERSION
from .spectrum import BoundedMass, FrequencyVector, bounded_mass, letter_frequencies
from .stream import (
    EmpiricalSeries,
    FixedPointStream,
    count_factors,
    count_letters,
    empirical_factor_count,
    empirical_series,
    factor_inventory,
    prefix,
    resolve_start,
    stream,
)
from .words import Word, count_occurrences, seam_count, window_prefix, window_suffix, word

__version__ = TOOL_VERSION

__all__ = [
    "BigIntLimitExceeded",
    "BoundedMass",
    "DegenerateAlpha",
    "DegenerateSupport",
    "DuplicateRule",
    "EmptyFactor",
    "EmpiricalSeries",
    "ErasingRule",
    "ErrorBound",
    "FactorFrequencyReport",
    "FixedPointStream",
    "FrequencyVector",
    "Interval",
    "LetterClassification",
    "LevelRatio",
    "LevelRecord",
    "LevelSummary",
    "MissingRule",
    "Morphism",
    "MorphfreqError",
    "NotProlongable",
    "ParseError",
    "UnknownLetter",
    "Word",
    "advance_summaries",
    "apply",
    "bounded_mass",
    "classify_letters",
    "count_factors",
    "count_letters",
    "count_occurrences",
    "empirical_factor_count",
    "empirical_series",
    "estimate_frequency",
    "factor_inventory",
    "guaranteed_error_bound",
    "incidence_matrix",
    "initial_summaries",
    "is_primitive",
    "is_prolongable",
    "iterate_length",
    "letter_frequencies",
    "level_ratio",
    "level_summaries",
    "morphism",
    "parse_morphism",
    "prefix",
    "prolongable_letters",
    "resolve_start",
    "seam_count",
    "serialize_morphism",
    "stream",
    "window_prefix",
    "window_suffix",
    "word",
]
