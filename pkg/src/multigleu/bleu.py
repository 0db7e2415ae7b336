"""Multi-reference sentence BLEU, the contrast baseline to merged GLEU.

BLEU handles multiple references by clipping each hypothesis n-gram count
at the *maximum* count across references (not their sum) and by picking the
reference length closest to the hypothesis for the brevity penalty. The
zero-precision and short-hypothesis conventions are shared with the GLEU
module so that score differences isolate the formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .gleu import PrecisionTerm, brevity_penalty
from .ngrams import NgramProfile


@dataclass(frozen=True, slots=True)
class BleuScore:
    value: float
    precisions: tuple[PrecisionTerm, ...]
    bp: float
    r_star: int
    effective_orders: tuple[int, ...]


def clipped_precision(
    hyp: NgramProfile, refs: list[NgramProfile], n: int
) -> PrecisionTerm:
    """Order-``n`` precision with counts clipped at the max across references."""
    if not refs:
        raise ValueError("reference list must be non-empty")
    for p in [hyp, *refs]:
        if n > p.max_order:
            raise ValueError(f"order {n} exceeds profile max_order {p.max_order}")
    h_counts = hyp.counts[n]
    numerator = sum(
        min(c_h, max(r.counts[n][g] for r in refs)) for g, c_h in h_counts.items()
    )
    return PrecisionTerm(n, numerator, sum(h_counts.values()))


def closest_ref_length(c: int, lengths: list[int]) -> int:
    """Reference length closest to ``c``; ties go to the shorter length."""
    if not lengths:
        raise ValueError("lengths must be non-empty")
    return min(lengths, key=lambda r: (abs(r - c), r))


def sentence_bleu(
    hyp: NgramProfile, refs: list[NgramProfile], max_order: int = 4
) -> BleuScore:
    """Score one hypothesis against a reference set with clipped precisions."""
    if not refs:
        raise ValueError("reference list must be non-empty")
    for p in refs:
        if p.mode != hyp.mode:
            raise ValueError(f"profile mode mismatch: {p.mode} != {hyp.mode}")
    if max_order < 1:
        raise ValueError(f"max_order must be >= 1, got {max_order}")

    precisions = tuple(
        clipped_precision(hyp, refs, n) for n in range(1, max_order + 1)
    )
    effective = tuple(t for t in precisions if t.denominator > 0)
    c = hyp.length
    r_star = closest_ref_length(c, [r.length for r in refs])
    bp = brevity_penalty(c, r_star)

    if not effective or any(t.numerator == 0 for t in effective):
        value = 0.0
    else:
        log_sum = sum(math.log(t.numerator / t.denominator) for t in effective)
        value = bp * math.exp(log_sum / len(effective))
    return BleuScore(
        value=value,
        precisions=precisions,
        bp=bp,
        r_star=r_star,
        effective_orders=tuple(t.order for t in effective),
    )
