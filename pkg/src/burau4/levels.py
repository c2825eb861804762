"""Complete enumeration of admissible tuples at a fixed crossing level.

The crossing count is determined per zero-weight case:

  case I   (w8 = 0):  c = (w0 + w1) / 2, so w0 + w1 = 2c and w14 = 4c
  case II  (w9 = 0):  c = (w0 - w1) / 2, so w0 = w1 + 2c and w14 = 4c
  case III (w12 = 0): c = (w0 - w1) / 2        if w0 >= w2 + w3
                      c = w2 + w3 - (w0+w1)/2  otherwise,  w14 = 2(w2 + w3)

Within each case the admissibility inequalities bound every free variable;
the loop ranges below are supersets of those bounds (each candidate is
re-checked in full), and their exhaustiveness is pinned by the brute-force
box comparison in the test suite.  Useful consequences used for the ranges:

  case II:   w1 < w3 < 2c and w2 >= 2c - w3
  case IIIa: w1 < w3 < 2c (from the initial/terminal disjunctions)
  case IIIb: w2 + w3 < 4c (else both initial branches fail)

Tuples satisfying several cases are emitted exactly once: case I owns the
w1 = 0 overlap with case II, and case III skips tuples whose w2 + w3 equals
w0 + w1 or w0 - w1.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .conditions import crossing_count, is_admissible
from .weights import WeightTuple


def _odd_range(lo: int, hi: int) -> range:
    """Odd integers in [lo, hi)."""
    start = lo if lo % 2 else lo + 1
    return range(start, hi, 2)


def _case1(c2: int) -> Iterator[WeightTuple]:
    # w0 + w1 = 2c, w14 = 4c
    for w1 in range(0, c2, 2):
        w0 = c2 - w1
        for w2 in _odd_range(w1 + 1, c2):
            for w3 in _odd_range(max(1, c2 - w2), w0):
                yield WeightTuple(w0, w1, w2, w3, 2 * c2)


def _case2(c2: int) -> Iterator[WeightTuple]:
    # w0 - w1 = 2c, w14 = 4c; w1 = 0 already appears in case I
    for w1 in range(2, c2 - 1, 2):
        w0 = w1 + c2
        for w3 in _odd_range(w1 + 1, c2):
            for w2 in _odd_range(max(1, c2 - w3), c2):
                yield WeightTuple(w0, w1, w2, w3, 2 * c2)


def _case3(c2: int) -> Iterator[WeightTuple]:
    # w14 = 2(w2 + w3); skip overlaps with cases I and II
    for w3 in _odd_range(1, c2):                      # w0 >= w2 + w3
        for w1 in range(0, w3, 2):
            w0 = w1 + c2
            for w2 in _odd_range(max(1, c2 - w3), w1 + c2 - w3 + 1):
                s = w2 + w3
                if s == w0 + w1 or s == w0 - w1:
                    continue
                yield WeightTuple(w0, w1, w2, w3, 2 * s)
    for s in range(c2, 2 * c2, 2):                    # w0 < w2 + w3
        for w0 in range(2, min(s - 1, 2 * s - c2) + 1, 2):
            w1 = 2 * s - c2 - w0
            if w1 < 0 or s == w0 + w1 or s == w0 - w1:
                continue
            for w3 in _odd_range(max(1, s - c2 + 1), min(w0, s)):
                yield WeightTuple(w0, w1, s - w3, w3, 2 * s)


def enumerate_level(level: int) -> list[WeightTuple]:
    """All admissible tuples with crossing count ``level``, lexicographic.

    ``level`` must be a positive even integer.  Each tuple appears exactly
    once even when it satisfies several zero-weight cases.
    """
    if level < 2 or level % 2:
        raise ValueError(f"level must be a positive even integer, got {level}")
    c2 = 2 * level  # the ubiquitous 2c
    out = []
    for cand in _case1(c2):
        if is_admissible(cand):
            out.append(cand)
    for cand in _case2(c2):
        if is_admissible(cand):
            out.append(cand)
    for cand in _case3(c2):
        if is_admissible(cand) and crossing_count(cand) == level:
            out.append(cand)
    out = sorted(set(out))
    return out


def enumerate_levels(levels: Iterable[int]) -> Iterator[tuple[int, list[WeightTuple]]]:
    for lv in levels:
        yield lv, enumerate_level(lv)


def partition(tuples: list[WeightTuple], index: int, count: int) -> list[WeightTuple]:
    """Deterministic contiguous slice ``index`` of ``count`` partitions."""
    if not 0 <= index < count:
        raise ValueError("bad partition index")
    n = len(tuples)
    lo = n * index // count
    hi = n * (index + 1) // count
    return tuples[lo:hi]
