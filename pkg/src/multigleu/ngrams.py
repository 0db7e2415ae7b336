"""N-gram count profiles and their multiset merging.

A profile stores, for every order 1..max_order, a Counter mapping each
contiguous n-gram (a tuple of tokens) to its occurrence count. Profiles are
immutable once built; merging sums counts across profiles (a true multiset
union) and keeps every constituent's token length so the scoring layer can
pick its own brevity-penalty convention.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .textnorm import TokenSeq


@dataclass(frozen=True, slots=True)
class NgramProfile:
    """Per-order n-gram counts for one token sequence (or a merged set).

    ``lengths`` holds a single entry for a profile built from one sequence,
    and one entry per constituent for merged profiles.
    """

    counts: dict[int, Counter]
    lengths: tuple[int, ...]
    max_order: int
    mode: str

    @property
    def length(self) -> int:
        """Token length; only defined for single-sequence profiles."""
        if len(self.lengths) != 1:
            raise ValueError("merged profile has no single length")
        return self.lengths[0]

    @property
    def is_merged(self) -> bool:
        return len(self.lengths) > 1


def profile(tokens: TokenSeq, max_order: int) -> NgramProfile:
    """Count the contiguous n-grams of ``tokens`` for orders 1..max_order."""
    if max_order < 1:
        raise ValueError(f"max_order must be >= 1, got {max_order}")
    toks = tokens.tokens
    length = len(toks)
    counts = {
        n: Counter(tuple(toks[i : i + n]) for i in range(length - n + 1))
        for n in range(1, max_order + 1)
    }
    return NgramProfile(counts, (length,), max_order, tokens.mode)


def merge_profiles(profiles: list[NgramProfile]) -> NgramProfile:
    """Sum n-gram counts across ``profiles`` into one composite profile.

    Counts are added, not max-clipped, so an n-gram attested by several
    references contributes in proportion to how often it occurs across the
    whole set. Constituent lengths are concatenated in input order.
    """
    if not profiles:
        raise ValueError("cannot merge an empty list of profiles")
    first = profiles[0]
    for p in profiles[1:]:
        if p.max_order != first.max_order:
            raise ValueError(
                f"profiles disagree on max_order: {p.max_order} != {first.max_order}"
            )
        if p.mode != first.mode:
            raise ValueError(f"profiles disagree on mode: {p.mode} != {first.mode}")
    merged: dict[int, Counter] = {}
    for n in range(1, first.max_order + 1):
        total: Counter = Counter()
        for p in profiles:
            total.update(p.counts[n])
        merged[n] = total
    lengths = tuple(length for p in profiles for length in p.lengths)
    return NgramProfile(merged, lengths, first.max_order, first.mode)
