"""Corpus-level aggregation and analysis procedures.

Corpus scores are macro averages: the arithmetic mean of per-segment scores.
Segments without references are excluded from the average and counted
separately. Also provides incremental reference curves, reference-count
statistics, score deltas, and paired bootstrap significance testing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .aggregate import STRATEGIES, Segment, SegmentResult, StrategyConfig, score_segment


@dataclass(frozen=True, slots=True)
class CorpusScore:
    strategy: str
    value: float
    n_segments: int
    n_skipped: int


@dataclass(frozen=True, slots=True)
class CurvePoint:
    """Corpus scores per strategy when only the first k references are used."""

    k: int
    per_strategy: dict[str, float]


@dataclass(frozen=True, slots=True)
class ReferenceStats:
    """Histogram of reference counts (count -> number of segments)."""

    histogram: dict[int, int]
    mean: float | None
    n_segments: int


@dataclass(frozen=True, slots=True)
class BootstrapResult:
    p_value: float
    iterations: int
    seed: int
    mean_delta: float


def score_segments(
    segments: list[Segment], config: StrategyConfig
) -> list[SegmentResult | None]:
    """Score every segment, keeping input order; None marks a segment with
    no references (excluded from corpus averages but counted)."""
    return [
        score_segment(seg, config) if seg.references else None for seg in segments
    ]


def macro_average(values: list[float]) -> float:
    """The corpus-level convention: plain mean of segment scores."""
    if not values:
        raise ValueError("cannot average an empty corpus")
    return sum(values) / len(values)


def corpus_score(results: list[SegmentResult | None], strategy: str) -> CorpusScore:
    """Mean of one strategy's segment scores over the scored segments."""
    values = [r.per_strategy[strategy] for r in results if r is not None]
    n_skipped = sum(1 for r in results if r is None)
    if not values:
        raise ValueError("no scored segments: every segment lacks references")
    return CorpusScore(strategy, macro_average(values), len(values), n_skipped)


def _truncate(segment: Segment, k: int, order: list[int] | None) -> Segment:
    refs = segment.references
    if order is not None:
        refs = tuple(refs[i] for i in order)
    return Segment(segment.source, segment.hypothesis, refs[:k])


def incremental_curve(
    segments: list[Segment],
    config: StrategyConfig,
    k_max: int,
    permute_refs: bool = False,
    trials: int = 1,
    seed: int | None = None,
) -> list[CurvePoint]:
    """Corpus scores per strategy as references are added one at a time.

    Point k re-scores every segment using only its first min(k, available)
    references in file order, so segments with few references keep
    contributing their full-set score at larger k. With ``permute_refs`` the
    reference order of each segment is shuffled per trial with a seeded
    generator and the per-strategy values are averaged over trials.
    """
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if permute_refs and seed is None:
        raise ValueError("permute_refs requires a seed")
    if not permute_refs:
        trials = 1

    rng = random.Random(seed)
    orders_per_trial: list[list[list[int] | None]] = []
    for _ in range(trials):
        orders: list[list[int] | None] = []
        for seg in segments:
            if permute_refs:
                order = list(range(len(seg.references)))
                rng.shuffle(order)
                orders.append(order)
            else:
                orders.append(None)
        orders_per_trial.append(orders)

    points = []
    for k in range(1, k_max + 1):
        sums = {s: 0.0 for s in STRATEGIES}
        for orders in orders_per_trial:
            results = [
                score_segment(_truncate(seg, k, order), config)
                if seg.references
                else None
                for seg, order in zip(segments, orders)
            ]
            for s in STRATEGIES:
                sums[s] += corpus_score(results, s).value
        points.append(CurvePoint(k, {s: sums[s] / trials for s in STRATEGIES}))
    return points


def reference_stats(segments: list[Segment]) -> ReferenceStats:
    """Distribution of references per segment, plus the mean count."""
    histogram: dict[int, int] = {}
    for seg in segments:
        k = len(seg.references)
        histogram[k] = histogram.get(k, 0) + 1
    if segments:
        mean = sum(len(seg.references) for seg in segments) / len(segments)
    else:
        mean = None
    return ReferenceStats(dict(sorted(histogram.items())), mean, len(segments))


def score_delta(a: CorpusScore, b: CorpusScore) -> float:
    """Difference a - b between two corpus scores over the same corpus."""
    if a.n_segments + a.n_skipped != b.n_segments + b.n_skipped:
        raise ValueError(
            "corpus size mismatch: "
            f"{a.n_segments + a.n_skipped} != {b.n_segments + b.n_skipped}"
        )
    return a.value - b.value


def paired_bootstrap(
    scores_a: list[float],
    scores_b: list[float],
    iterations: int = 1000,
    seed: int = 0,
) -> BootstrapResult:
    """Paired bootstrap test for the mean difference between two score vectors.

    Segment indices are resampled with replacement ``iterations`` times with
    a seeded generator. The reported p-value follows a two-sided sign-flip
    convention: the fraction of resamples whose mean difference is zero or
    has the opposite sign of the observed mean difference. When the observed
    difference is exactly zero the p-value is 1.0. Deterministic for fixed
    inputs, iterations, and seed.
    """
    if len(scores_a) != len(scores_b):
        raise ValueError(
            f"score vectors differ in length: {len(scores_a)} != {len(scores_b)}"
        )
    if len(scores_a) < 2:
        raise ValueError("need at least 2 paired scores")
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")

    a = np.asarray(scores_a, dtype=np.float64)
    b = np.asarray(scores_b, dtype=np.float64)
    observed = float(a.mean() - b.mean())

    rng = np.random.default_rng(seed)
    n = len(a)
    diff = a - b
    idx = rng.integers(0, n, size=(iterations, n))
    deltas = diff[idx].mean(axis=1)
    if observed > 0:
        flipped = int(np.count_nonzero(deltas <= 0))
    elif observed < 0:
        flipped = int(np.count_nonzero(deltas >= 0))
    else:
        flipped = iterations
    return BootstrapResult(flipped / iterations, iterations, seed, observed)
