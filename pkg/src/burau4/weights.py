"""Weight coordinates on the universal train track of the 4-punctured disk.

An isotopy class of multicurve carried by the track is encoded by the
fifteen rail weights ``w0..w14``.  The branch relations at the ten switches
leave five free coordinates ``(w0, w1, w2, w3, w14)``; the other ten rails
are derived:

    w4  = 2*w0                 w8  = w0 + w1 - w14/2
    w5  = 2*w1                 w9  = -w0 + w1 + w14/2
    w6  = 2*w2                 w10 = w0 - w1 + w14/2
    w7  = 2*w3                 w11 = w2 - w3 + w14/2
                               w12 = w2 + w3 - w14/2
                               w13 = -w2 + w3 + w14/2

Rails 0..3 are the small loops around punctures 1..4, rails 4..7 the stems
that join each loop to the upper pods, rails 8..10 / 11..13 the left and
right pod triples, and rail 14 the long rail bridging the two pods.
"""

from __future__ import annotations

from typing import NamedTuple


class OddHalfWeightError(ValueError):
    """w14 must be even: half of it enters every pod weight."""


class NegativeDerivedWeightError(ValueError):
    """Some derived rail weight is negative, so no carried multicurve exists."""


class WeightTuple(NamedTuple):
    """The five free rail weights of a carried multicurve."""

    w0: int
    w1: int
    w2: int
    w3: int
    w14: int

    def derive(self) -> tuple[int, ...]:
        """All fifteen rail weights (w0..w14), validating integrality and sign."""
        return derive_weights(self)

    def __str__(self) -> str:
        return f"({self.w0},{self.w1},{self.w2},{self.w3},{self.w14})"


def derive_weights(t: WeightTuple) -> tuple[int, ...]:
    """Expand the free coordinates to the full fifteen rail weights.

    Raises OddHalfWeightError when w14 is odd and NegativeDerivedWeightError
    when any of the six pod weights comes out negative.
    """
    w0, w1, w2, w3, w14 = t
    if w14 % 2:
        raise OddHalfWeightError(f"w14 = {w14} is odd")
    h = w14 // 2
    pods = (w0 + w1 - h, -w0 + w1 + h, w0 - w1 + h,
            w2 - w3 + h, w2 + w3 - h, -w2 + w3 + h)
    if min(pods) < 0:
        raise NegativeDerivedWeightError(f"negative pod weight for {t}")
    return (w0, w1, w2, w3, 2 * w0, 2 * w1, 2 * w2, 2 * w3, *pods, w14)
