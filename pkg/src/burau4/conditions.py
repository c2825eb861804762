"""Admissibility conditions for weight tuples encoding arcs from p3 to p4.

A weight tuple is admissible when the carried multicurve can be the boundary
of a regular neighborhood of an arc joining punctures 3 and 4 whose initial
and terminal segments are in the standard steered position relative to the
reference arc alpha joining punctures 1 and 2.  The tests split into four
groups:

  divisibility   parity forced by which punctures are arc endpoints
  nonnegativity  the six pod weights must be realizable
  initial        the start of the arc leaves p3, runs up the right pod, and
                 makes an essential first crossing with alpha
  terminal       mirror conditions for the approach into p4

plus two global multicurve filters: the four loop weights must not share a
common factor, and at least one of the pod rails 8, 9, 12 must carry weight
zero (otherwise a component encircles the whole track).

Admissibility still allows proper multicurves; the final arbiter is the
trace, which discovers whether a single arc uses the entire weight set.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .weights import WeightTuple


class NoZeroWeightError(ValueError):
    """None of w8, w9, w12 vanishes: the multicurve has an encircling loop."""


@dataclass(frozen=True)
class CaseSet:
    """Which of the three zero-weight cases a tuple satisfies.

    case1: w8 = 0 (w14/2 = w0 + w1)
    case2: w9 = 0 (w14/2 = w0 - w1)
    case3: w12 = 0 (w14/2 = w2 + w3)

    The cases can overlap; at least one must hold for an admissible tuple.
    """

    case1: bool
    case2: bool
    case3: bool

    @property
    def any(self) -> bool:
        return self.case1 or self.case2 or self.case3

    def labels(self) -> list[str]:
        return [n for n, v in (("I", self.case1), ("II", self.case2), ("III", self.case3)) if v]


def check_divisibility(t: WeightTuple) -> bool:
    """w0, w1 even (p1, p2 are not endpoints); w2, w3 odd (p3, p4 are); w14 even."""
    return (t.w0 % 2 == 0 and t.w1 % 2 == 0 and t.w2 % 2 == 1
            and t.w3 % 2 == 1 and t.w14 % 2 == 0)


def check_nonnegativity(t: WeightTuple) -> bool:
    """The six pod weights w8..w13 are all >= 0."""
    w0, w1, w2, w3, w14 = t
    h = w14 // 2
    return (h <= w0 + w1 and w0 <= w1 + h and w1 <= w0 + h
            and w3 <= w2 + h and h <= w2 + w3 and w2 <= w3 + h)


def check_initial(t: WeightTuple) -> bool:
    """Steering of the initial segment out of p3."""
    w0, w1, w2, w3, w14 = t
    h = w14 // 2
    if not w3 < h:
        return False
    if not ((w1 + h < w0 + w2) or (w1 < w2)):
        return False
    return ((w0 + w2 < w1 + h) or (w0 + w2 < w14)
            or (w0 + w1 + w2 < 3 * h) or (w1 + w2 < w14))


def check_terminal(t: WeightTuple) -> bool:
    """Steering of the terminal segment into p4."""
    w0, w1, w2, w3, w14 = t
    h = w14 // 2
    return (w2 < h and w1 + w3 < w0 + h and w3 < w0
            and ((w0 + w1 < w3 + h) or (w1 < w3)))


def classify_cases(t: WeightTuple) -> CaseSet:
    """Classify which of w8, w9, w12 vanish; raise if none does."""
    h = t.w14 // 2
    cases = CaseSet(h == t.w0 + t.w1, h == t.w0 - t.w1, h == t.w2 + t.w3)
    if not cases.any:
        raise NoZeroWeightError(f"none of w8, w9, w12 is zero for {t}")
    return cases


def crossing_count(t: WeightTuple) -> int:
    """Essential intersection count with alpha of the arc realizing the weights."""
    w8 = t.w0 + t.w1 - t.w14 // 2
    return t.w0 // 2 + t.w1 // 2 - min(t.w1, w8)


def is_admissible(t: WeightTuple) -> bool:
    """All condition groups, the gcd filter, and at least one zero-weight case.

    Admissible tuples may still carry proper multicurves; tracing decides.
    """
    if t.w14 % 2 or min(t) < 0:
        return False
    if not (check_divisibility(t) and check_nonnegativity(t)
            and check_initial(t) and check_terminal(t)):
        return False
    if gcd(gcd(t.w0, t.w1), gcd(t.w2, t.w3)) != 1:
        return False
    h = t.w14 // 2
    return h == t.w0 + t.w1 or h == t.w0 - t.w1 or h == t.w2 + t.w3
