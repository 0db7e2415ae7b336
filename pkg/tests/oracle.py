"""Naive brute-force scorers used as independent cross-checks.

Everything here works directly on token lists with plain dicts and explicit
loops, deliberately sharing no code with the library. Slow but obviously
correct.
"""

from __future__ import annotations

import math


def ngram_counts(tokens, n):
    counts = {}
    for i in range(len(tokens) - n + 1):
        gram = tuple(tokens[i : i + n])
        counts[gram] = counts.get(gram, 0) + 1
    return counts


def gleu_score(source, hypothesis, reference, max_order, ref_length=None):
    """Sentence GLEU computed straight from the definitions."""
    c = len(hypothesis)
    r = len(reference) if ref_length is None else ref_length
    ref_counts = [ngram_counts(reference, n) for n in range(1, max_order + 1)]
    return _gleu_from_counts(source, hypothesis, ref_counts, c, r, max_order)


def merged_gleu_score(source, hypothesis, references, max_order):
    """Merged-counts GLEU: reference counts summed, min length for BP."""
    merged = []
    for n in range(1, max_order + 1):
        total = {}
        for ref in references:
            for gram, count in ngram_counts(ref, n).items():
                total[gram] = total.get(gram, 0) + count
        merged.append(total)
    c = len(hypothesis)
    r = min(len(ref) for ref in references)
    return _gleu_from_counts(source, hypothesis, merged, c, r, max_order)


def _gleu_from_counts(source, hypothesis, ref_counts, c, r, max_order):
    if c == 0:
        return 0.0
    logs = []
    for n in range(1, max_order + 1):
        hyp = ngram_counts(hypothesis, n)
        src = ngram_counts(source, n)
        ref = ref_counts[n - 1]
        denominator = sum(hyp.values())
        if denominator == 0:
            continue
        numerator = 0
        for gram, c_h in hyp.items():
            c_r = ref.get(gram, 0)
            c_s = src.get(gram, 0)
            numerator += max(min(c_h, c_r) - min(c_h, max(0, c_s - c_r)), 0)
        if numerator == 0:
            return 0.0
        logs.append(math.log(numerator / denominator))
    if not logs:
        return 0.0
    bp = 1.0 if c > r else math.exp(1.0 - r / c)
    return bp * math.exp(sum(logs) / len(logs))


def bleu_score(hypothesis, references, max_order):
    """Multi-reference BLEU: max-clipped counts, closest-length BP."""
    c = len(hypothesis)
    if c == 0:
        return 0.0
    logs = []
    for n in range(1, max_order + 1):
        hyp = ngram_counts(hypothesis, n)
        denominator = sum(hyp.values())
        if denominator == 0:
            continue
        numerator = 0
        for gram, c_h in hyp.items():
            best = 0
            for ref in references:
                best = max(best, ngram_counts(ref, n).get(gram, 0))
            numerator += min(c_h, best)
        if numerator == 0:
            return 0.0
        logs.append(math.log(numerator / denominator))
    if not logs:
        return 0.0
    r_star = None
    for ref in references:
        if (
            r_star is None
            or abs(len(ref) - c) < abs(r_star - c)
            or (abs(len(ref) - c) == abs(r_star - c) and len(ref) < r_star)
        ):
            r_star = len(ref)
    bp = 1.0 if c > r_star else math.exp(1.0 - r_star / c)
    return bp * math.exp(sum(logs) / len(logs))


def softmax_weighted(scores, tau):
    """Direct softmax-weighted mean, no stabilization tricks."""
    weights = [math.exp(tau * f) for f in scores]
    total = sum(weights)
    return sum(w * f for w, f in zip(weights, scores)) / total


def all_sequences(alphabet, max_len):
    """Every token sequence over ``alphabet`` with length 0..max_len."""
    out = [[]]
    frontier = [[]]
    for _ in range(max_len):
        frontier = [seq + [tok] for seq in frontier for tok in alphabet]
        out.extend(frontier)
    return out
