"""Multi-reference fluency evaluation for grammatical error correction.

Computes sentence-level GLEU between a hypothesis, its uncorrected source,
and one or more human references, combines per-reference scores through
four aggregation strategies (select-best, simple average, softmax-weighted
average, merged n-gram counts), and provides corpus-level reporting,
incremental reference curves, and paired bootstrap significance testing.
Multi-reference BLEU is included as a contrast baseline.
"""

from .aggregate import (
    MERGED,
    SELECT_BEST,
    SIMPLE_AVERAGE,
    STRATEGIES,
    WEIGHTED_AVERAGE,
    NoReferencesError,
    Segment,
    SegmentResult,
    StrategyConfig,
    merged_gleu,
    score_segment,
    select_best,
    simple_average,
    weighted_average,
)
from .bleu import BleuScore, clipped_precision, closest_ref_length, sentence_bleu
from .corpus import (
    BootstrapResult,
    CorpusScore,
    CurvePoint,
    ReferenceStats,
    corpus_score,
    incremental_curve,
    paired_bootstrap,
    reference_stats,
    score_delta,
    score_segments,
)
from .gleu import (
    PrecisionTerm,
    SentenceScore,
    brevity_penalty,
    effective_match_count,
    modified_precision,
    sentence_gleu,
)
from .ngrams import NgramProfile, merge_profiles, profile
from .textnorm import (
    CHAR,
    WORD,
    TokenSeq,
    normalize,
    tokenize,
    tokenize_chars,
    tokenize_words,
)

__version__ = "0.1.0"

__all__ = [
    "BleuScore",
    "BootstrapResult",
    "CHAR",
    "CorpusScore",
    "CurvePoint",
    "MERGED",
    "NgramProfile",
    "NoReferencesError",
    "PrecisionTerm",
    "ReferenceStats",
    "SELECT_BEST",
    "SIMPLE_AVERAGE",
    "STRATEGIES",
    "Segment",
    "SegmentResult",
    "SentenceScore",
    "StrategyConfig",
    "TokenSeq",
    "WEIGHTED_AVERAGE",
    "WORD",
    "brevity_penalty",
    "clipped_precision",
    "closest_ref_length",
    "corpus_score",
    "effective_match_count",
    "incremental_curve",
    "merge_profiles",
    "merged_gleu",
    "modified_precision",
    "normalize",
    "paired_bootstrap",
    "profile",
    "reference_stats",
    "score_delta",
    "score_segment",
    "score_segments",
    "select_best",
    "sentence_bleu",
    "sentence_gleu",
    "simple_average",
    "tokenize",
    "tokenize_chars",
    "tokenize_words",
    "weighted_average",
]
