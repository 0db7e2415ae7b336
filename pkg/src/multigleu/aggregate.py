"""Aggregation of per-reference GLEU scores into one segment score.

Four strategies are supported. Three operate on the vector of per-reference
scores (take the maximum, the arithmetic mean, or a softmax-weighted mean);
the fourth merges all reference n-gram counts into one composite profile
and scores against that once. Select-best and merged never decrease when a
reference is added; the averaging strategies can.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .gleu import SentenceScore, sentence_gleu
from .ngrams import NgramProfile, merge_profiles, profile
from .textnorm import MODES, WORD, tokenize

SELECT_BEST = "select_best"
SIMPLE_AVERAGE = "simple_average"
WEIGHTED_AVERAGE = "weighted_average"
MERGED = "merged"
STRATEGIES = (SELECT_BEST, SIMPLE_AVERAGE, WEIGHTED_AVERAGE, MERGED)


@dataclass(frozen=True, slots=True)
class Segment:
    """One evaluation unit: source, hypothesis, and available references."""

    source: str
    hypothesis: str
    references: tuple[str, ...]


@dataclass(frozen=True, slots=True)
class StrategyConfig:
    """Scoring parameters: strategy selection, softmax temperature, n-gram
    order, and tokenization mode."""

    strategy: str = MERGED
    tau: float = 1.0
    max_order: int = 4
    mode: str = WORD

    def __post_init__(self) -> None:
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy: {self.strategy!r}")
        if self.tau <= 0:
            raise ValueError(f"tau must be > 0, got {self.tau}")
        if self.max_order < 1:
            raise ValueError(f"max_order must be >= 1, got {self.max_order}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode: {self.mode!r}")


@dataclass(frozen=True, slots=True)
class SegmentResult:
    """All four strategy scores for one segment, plus the per-reference
    scores and strategy internals (softmax weights, winning index)."""

    per_strategy: dict[str, float]
    per_reference: tuple[float, ...]
    selected_index: int
    weights: tuple[float, ...]
    merged_detail: SentenceScore = field(repr=False)


class NoReferencesError(ValueError):
    """Raised when a segment has no references to score against."""


def select_best(scores: list[float] | tuple[float, ...]) -> tuple[float, int]:
    """Maximum per-reference score and the smallest index attaining it."""
    if not scores:
        raise ValueError("scores must be non-empty")
    idx = max(range(len(scores)), key=lambda i: scores[i])
    return scores[idx], idx


def simple_average(scores: list[float] | tuple[float, ...]) -> float:
    """Arithmetic mean of the per-reference scores."""
    if not scores:
        raise ValueError("scores must be non-empty")
    return sum(scores) / len(scores)


def weighted_average(
    scores: list[float] | tuple[float, ...], tau: float = 1.0
) -> tuple[float, tuple[float, ...]]:
    """Softmax-weighted mean: w_i = exp(tau * f_i) / sum_j exp(tau * f_j).

    As tau grows the weighting sharpens towards the best reference; as it
    approaches zero the weights flatten towards the plain mean. The maximum
    score is subtracted before exponentiation for numerical stability, which
    leaves the weights unchanged.
    """
    if not scores:
        raise ValueError("scores must be non-empty")
    if tau <= 0:
        raise ValueError(f"tau must be > 0, got {tau}")
    top = max(scores)
    exps = [math.exp(tau * (f - top)) for f in scores]
    total = sum(exps)
    weights = tuple(e / total for e in exps)
    return sum(w * f for w, f in zip(weights, scores)), weights


def merged_gleu(
    src: NgramProfile, hyp: NgramProfile, ref_profiles: list[NgramProfile]
) -> SentenceScore:
    """Score once against the multiset union of all reference profiles.

    The brevity penalty uses the constituent reference length that maximizes
    it for the given hypothesis length; since the penalty never increases
    with the reference length, that is always the minimum length. Under this
    rule (and the summed counts) adding a reference can never lower the
    merged score.
    """
    merged = merge_profiles(ref_profiles)
    return sentence_gleu(
        src, hyp, merged, ref_length=min(merged.lengths), max_order=hyp.max_order
    )


def score_segment(segment: Segment, config: StrategyConfig) -> SegmentResult:
    """Tokenize a segment and compute all four aggregation strategies.

    Each per-reference score uses that reference's own length for the
    brevity penalty; the merged score is computed at the profile level.
    Raises :class:`NoReferencesError` for segments with no references.
    """
    if not segment.references:
        raise NoReferencesError("segment has no references")
    n = config.max_order
    src = profile(tokenize(segment.source, config.mode), n)
    hyp = profile(tokenize(segment.hypothesis, config.mode), n)
    refs = [profile(tokenize(r, config.mode), n) for r in segment.references]

    per_ref = tuple(
        sentence_gleu(src, hyp, r, ref_length=r.length, max_order=n).value
        for r in refs
    )
    best, idx = select_best(per_ref)
    weighted, weights = weighted_average(per_ref, config.tau)
    merged_detail = merged_gleu(src, hyp, refs)
    per_strategy = {
        SELECT_BEST: best,
        SIMPLE_AVERAGE: simple_average(per_ref),
        WEIGHTED_AVERAGE: weighted,
        MERGED: merged_detail.value,
    }
    return SegmentResult(
        per_strategy=per_strategy,
        per_reference=per_ref,
        selected_index=idx,
        weights=weights,
        merged_detail=merged_detail,
    )
