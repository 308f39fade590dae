"""Frequency-weighted cohort activation metrics over a phoneme-trie lexicon.

Two competing listening models share one machinery: a switch model that
commits to the likelier onset outright, and an acoustic-weighted model
that carries graded onset evidence through the cohort. The package
computes both models' surprisal and entropy traces, resamples perceptual
continua, searches a lexicon for voicing-contrast stimulus pairs, and
compares the models on synthetic data with nested likelihood-ratio tests.
"""

from .analysis import (
    AMBIGUITY_LEVELS,
    CATEGORICAL_PREDICTORS,
    CONTINUOUS_PREDICTORS,
    FULL_PREDICTORS,
    MODEL_PREDICTORS,
    REGRESSION_FIELDS,
    CalibrationResult,
    ComparisonRecord,
    FitResult,
    ModelComparisonResult,
    NestingError,
    RecoverySummary,
    RegressionRow,
    SingularDesignError,
    bonferroni_alpha,
    build_trace_set,
    chi_square_sf,
    compare_removals,
    likelihood_ratio_test,
    model_recovery,
    ols_fit,
    permutation_calibration,
    reduced_predictors,
    simulate_dataset,
    write_dataset,
)
from .cohort import (
    Cohort,
    CohortTrie,
    ImpossibleContinuationError,
    build_trie,
)
from .continuum import (
    CONTINUUM_TARGETS,
    N_STEPS,
    ContinuumPoint,
    DegenerateCurveError,
    IdentificationCurve,
    PerceptualContinuum,
    evidence_for_target,
    fit_psychometric,
    logistic_identification,
    read_identification_curves,
    resample_continuum,
)
from .lexicon import (
    KNOWN_UNITS,
    PLOSIVE_VOICING_PAIRS,
    Lexicon,
    LexiconEntry,
    LexiconError,
    LexiconParseError,
    LexiconValidationError,
    make_lexicon,
    parse_lexicon,
    plosive_voicing_pairs,
    write_lexicon,
)
from .metrics import (
    TRACE_FIELDS,
    AcousticEvidence,
    MetricPoint,
    MetricTrace,
    UndefinedCorrelationError,
    WeightedCohort,
    acoustic_entropy,
    acoustic_surprisal,
    acoustic_surprisal_onset,
    acoustic_weighted_probs,
    metric_trace,
    model_correlation,
    model_divergence_ranking,
    switch_entropy,
    switch_surprisal,
)
from .stimuli import WordPair, divergence_point, find_word_pairs

__version__ = "0.1.0"

__all__ = [
    "AMBIGUITY_LEVELS",
    "AcousticEvidence",
    "CATEGORICAL_PREDICTORS",
    "CONTINUOUS_PREDICTORS",
    "CONTINUUM_TARGETS",
    "CalibrationResult",
    "Cohort",
    "CohortTrie",
    "ComparisonRecord",
    "ContinuumPoint",
    "DegenerateCurveError",
    "FULL_PREDICTORS",
    "FitResult",
    "IdentificationCurve",
    "ImpossibleContinuationError",
    "KNOWN_UNITS",
    "Lexicon",
    "LexiconEntry",
    "LexiconError",
    "LexiconParseError",
    "LexiconValidationError",
    "MetricPoint",
    "MetricTrace",
    "MODEL_PREDICTORS",
    "ModelComparisonResult",
    "N_STEPS",
    "NestingError",
    "PLOSIVE_VOICING_PAIRS",
    "PerceptualContinuum",
    "REGRESSION_FIELDS",
    "RecoverySummary",
    "RegressionRow",
    "SingularDesignError",
    "TRACE_FIELDS",
    "UndefinedCorrelationError",
    "WeightedCohort",
    "WordPair",
    "acoustic_entropy",
    "acoustic_surprisal",
    "acoustic_surprisal_onset",
    "acoustic_weighted_probs",
    "bonferroni_alpha",
    "build_trace_set",
    "build_trie",
    "chi_square_sf",
    "compare_removals",
    "divergence_point",
    "evidence_for_target",
    "find_word_pairs",
    "fit_psychometric",
    "likelihood_ratio_test",
    "logistic_identification",
    "make_lexicon",
    "metric_trace",
    "model_correlation",
    "model_divergence_ranking",
    "model_recovery",
    "ols_fit",
    "parse_lexicon",
    "permutation_calibration",
    "plosive_voicing_pairs",
    "read_identification_curves",
    "reduced_predictors",
    "resample_continuum",
    "simulate_dataset",
    "switch_entropy",
    "switch_surprisal",
    "write_dataset",
    "write_lexicon",
]
