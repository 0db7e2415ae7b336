"""Sentence-level GLEU for grammatical error correction.

GLEU compares a corrected hypothesis H against a reference correction R
while also looking at the uncorrected source S: n-grams the hypothesis
shares with the reference are rewarded, but n-grams it kept from the source
that the reference removed are subtracted from the match count. The final
score follows the BLEU recipe (geometric mean of per-order precisions times
a brevity penalty) with uniform order weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .ngrams import NgramProfile


@dataclass(frozen=True, slots=True)
class PrecisionTerm:
    """One order's modified-precision fraction (numerator over denominator)."""

    order: int
    numerator: int
    denominator: int

    @property
    def value(self) -> float:
        return self.numerator / self.denominator if self.denominator else 0.0


@dataclass(frozen=True, slots=True)
class SentenceScore:
    """A sentence-level score together with its per-order breakdown.

    ``effective_orders`` lists the orders that actually entered the geometric
    mean (those with a nonzero denominator); ``ref_length_used`` is the r
    that went into the brevity penalty.
    """

    value: float
    precisions: tuple[PrecisionTerm, ...]
    bp: float
    effective_orders: tuple[int, ...]
    ref_length_used: int


def effective_match_count(c_h: int, c_r: int, c_s: int) -> int:
    """Matched count for one n-gram: reference reward minus source penalty.

    ``min(c_h, c_r)`` rewards overlap with the reference; overlap with the
    ``max(0, c_s - c_r)`` source occurrences the reference removed is
    subtracted; the result is clipped at zero.
    """
    return max(min(c_h, c_r) - min(c_h, max(0, c_s - c_r)), 0)


def modified_precision(
    hyp: NgramProfile, src: NgramProfile, ref: NgramProfile, n: int
) -> PrecisionTerm:
    """Order-``n`` modified precision of ``hyp`` against ``ref`` given ``src``.

    Sums :func:`effective_match_count` over the distinct n-grams of the
    hypothesis; the denominator is the total n-gram count of the hypothesis
    (zero when the hypothesis is shorter than ``n``).
    """
    for p in (hyp, src, ref):
        if n > p.max_order:
            raise ValueError(f"order {n} exceeds profile max_order {p.max_order}")
    h_counts = hyp.counts[n]
    r_counts = ref.counts[n]
    s_counts = src.counts[n]
    numerator = sum(
        effective_match_count(c_h, r_counts[g], s_counts[g])
        for g, c_h in h_counts.items()
    )
    return PrecisionTerm(n, numerator, sum(h_counts.values()))


def brevity_penalty(c: int, r: int) -> float:
    """BLEU-style brevity penalty for hypothesis length c and reference length r.

    1 when the hypothesis is longer than the reference, exp(1 - r/c)
    otherwise, and 0 for an empty hypothesis.
    """
    if c < 0:
        raise ValueError(f"hypothesis length must be >= 0, got {c}")
    if r < 1:
        raise ValueError(f"reference length must be >= 1, got {r}")
    if c == 0:
        return 0.0
    if c > r:
        return 1.0
    return math.exp(1.0 - r / c)


def sentence_gleu(
    src: NgramProfile,
    hyp: NgramProfile,
    ref: NgramProfile,
    ref_length: int | None = None,
    max_order: int = 4,
) -> SentenceScore:
    """Score one hypothesis against one reference profile.

    All three profiles must share the tokenization mode and have been built
    with at least ``max_order`` orders. Orders where the hypothesis has no
    n-grams are dropped and the uniform weights renormalize over the rest;
    if any remaining order has a zero match count, or none remain, the score
    is 0 (no smoothing). ``ref_length`` is the r used in the brevity penalty
    and must be given explicitly when ``ref`` is a merged profile.
    """
    if not (src.mode == hyp.mode == ref.mode):
        raise ValueError(
            f"profile mode mismatch: src={src.mode} hyp={hyp.mode} ref={ref.mode}"
        )
    if max_order < 1:
        raise ValueError(f"max_order must be >= 1, got {max_order}")
    if ref_length is None:
        ref_length = ref.length
    if ref_length < 1:
        raise ValueError(f"ref_length must be >= 1, got {ref_length}")

    precisions = tuple(
        modified_precision(hyp, src, ref, n) for n in range(1, max_order + 1)
    )
    effective = tuple(t for t in precisions if t.denominator > 0)
    c = hyp.length
    bp = brevity_penalty(c, ref_length)

    if not effective or any(t.numerator == 0 for t in effective):
        value = 0.0
    else:
        log_sum = sum(math.log(t.numerator / t.denominator) for t in effective)
        value = bp * math.exp(log_sum / len(effective))
    return SentenceScore(
        value=value,
        precisions=precisions,
        bp=bp,
        effective_orders=tuple(t.order for t in effective),
        ref_length_used=ref_length,
    )
