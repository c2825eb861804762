"""Fast arc tracer: threshold steering along rail 14 with exact bookkeeping.

The arc is walked as the center strand of its carried neighborhood.  Between
two consecutive visits to rail 14 it makes one excursion into the left pod
(around punctures 1/2, where every crossing with the reference arc alpha
happens) or the right pod (around punctures 3/4, which only shifts the cover
level).  Each excursion is resolved in O(1) by integer slot arithmetic; no
per-strand state is kept.

Positions are tracked two ways at once:

* the slot index ``s`` of the strand in the rail-14 band (1 = north), which
  drives the dynamics, and
* the line count ``ell`` = number of neighborhood strands to the left of the
  traveler (``2*(b14-s)+1`` westbound, ``2*s-1`` eastbound), which is what
  the published threshold lists speak in.

The record symbol of each excursion is the position of the first threshold
entry exceeding ``ell``.  One real excursion shape (loop 1 entered westward
after loop 0 westward, exiting to rail 9) lies beyond every entry of the
left list for every tuple on which it occurs; since position 7 in the list
is algebraically vacant (entries 6 and 7 coincide identically), that route
is recorded as symbol 7.  The mapping of routes to symbols is frozen below
and cross-checked against the threshold position on every step.

Level and sign conventions (fixed once, absorbed by up-to-unit comparison):
westward loop passes lower the cover level by one, eastward passes raise it;
a crossing with alpha on the p1 loop contributes ``-t^level`` after a
westward pass and ``+t^level`` before an eastward one, mirrored on the p2
loop.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .conditions import crossing_count, is_admissible
from .laurent import LaurentPolynomial
from .weights import WeightTuple, derive_weights


class TracerError(RuntimeError):
    pass


class StepBudgetExceededError(TracerError):
    """The walk did not terminate within its step budget."""


class UnknownRouteError(TracerError):
    """An excursion shape outside the frozen catalog occurred."""


class ModeMisuseError(RuntimeError):
    """Exact-mode data was requested from a screening outcome."""


class TraceStatus(enum.Enum):
    GENUINE_ARC = "genuine_arc"
    PROPER_MULTICURVE = "proper_multicurve"
    NON_ADMISSIBLE = "non_admissible"


class ScreenResult(enum.Enum):
    DEFINITELY_NONZERO = "definitely_nonzero"
    POSSIBLY_ZERO = "possibly_zero"
    PROPER_MULTICURVE = "proper_multicurve"


def left_thresholds(w: tuple[int, ...]) -> list[int]:
    """The eight westward steering thresholds, in list order."""
    return [min(w[1], w[8], w[9]), min(w[1], w[9]), w[9],
            w[0] + w[9] - w[8], w[10] + w[9] - w[8], w[1] + w[10] - w[8],
            w[14] - w[1], min(w[10], w[0] + w[10] - w[8], 2 * w[10] - w[8])]


def right_thresholds(w: tuple[int, ...]) -> list[int]:
    """The five eastward steering thresholds, in list order."""
    return [min(w[3], w[12], w[13]), min(w[3], w[13]), w[13],
            w[2] + w[13] - w[12], w[11] + w[13] - w[12]]


# Route -> record symbol, frozen from reference-trace calibration.  A route
# is the excursion's loop-visit sequence: (loop index, entry side).
LEFT_ROUTE_SYMBOL = {
    ((1, "e"), (0, "e")): 1,
    ((1, "e"),): 2,
    ((1, "w"),): 3,
    ((0, "e"),): 4,
    ((0, "w"),): 5,
    ((0, "w"), (1, "e"), (0, "e")): 6,
    ((0, "w"), (1, "w")): 7,
    ((0, "w"), (1, "w"), (0, "e")): 8,
}
RIGHT_ROUTE_SYMBOL = {
    ((3, "e"), (2, "e")): 1,
    ((3, "e"),): 2,
    ((3, "w"),): 3,
    ((2, "e"),): 4,
    ((2, "w"),): 5,
    ((2, "w"), (3, "w")): 6,
}

_MAX_VISITS_PER_EXCURSION = 4


def _threshold_position(entries: list[int], ell: int) -> Optional[int]:
    for i, e in enumerate(entries):
        if ell < e:
            return i + 1
    return None


@dataclass
class _HalfWeights:
    """Strand counts of the arc's own diagram (half the carried weights)."""

    b: tuple[int, ...]

    @classmethod
    def of(cls, t: WeightTuple) -> "_HalfWeights":
        w = derive_weights(t)
        return cls((w[0] // 2, w[1] // 2, (w[2] - 1) // 2, (w[3] - 1) // 2,
                    w[0], w[1], w[2], w[3],
                    w[8] // 2, w[9] // 2, w[10] // 2,
                    w[11] // 2, w[12] // 2, w[13] // 2, w[14] // 2))


def _excursion_left(s: int, b: tuple[int, ...]) -> tuple[list[tuple[int, str]], int]:
    """Resolve a westbound excursion entered at rail-14 slot ``s``.

    Returns the loop-visit route and the eastbound exit slot.
    """
    visits: list[tuple[int, str]] = []
    if s <= b[10]:
        stem, k = 4, s
    else:
        stem, k = 5, b[8] + (s - b[10])
    while True:
        if len(visits) >= _MAX_VISITS_PER_EXCURSION:
            raise UnknownRouteError(f"left excursion exceeds {_MAX_VISITS_PER_EXCURSION} loops")
        if stem == 4:
            west = k <= b[0]
            visits.append((0, "w" if west else "e"))
            k2 = b[4] + 1 - k
            if k2 <= b[10]:
                return visits, k2
            stem, k = 5, b[8] + b[10] + 1 - k2
        else:
            west = k <= b[1]
            visits.append((1, "w" if west else "e"))
            m2 = b[5] + 1 - k
            if m2 > b[8]:
                return visits, b[10] + (m2 - b[8])
            stem, k = 4, b[10] + (b[8] + 1 - m2)


def _excursion_right(s: int, b: tuple[int, ...]) -> tuple[list[tuple[int, str]], int, bool]:
    """Resolve an eastbound excursion entered at rail-14 slot ``s``.

    Returns (route, westbound exit slot, reached p4).  The terminal strand is
    the middle slot of stem 7; it can only be reached by the direct descent,
    which the caller detects up front, so hitting it here is a hard error.
    """
    visits: list[tuple[int, str]] = []
    if s <= b[13]:
        stem, q = 7, b[7] + 1 - s
    else:
        stem, q = 6, b[14] + 1 - s
    while True:
        if len(visits) >= _MAX_VISITS_PER_EXCURSION:
            raise UnknownRouteError(f"right excursion exceeds {_MAX_VISITS_PER_EXCURSION} loops")
        if stem == 7:
            if q == b[3] + 1:
                if visits:
                    raise TracerError("terminal strand reached mid-excursion")
                return visits, 0, True
            west = q <= b[3]
            visits.append((3, "w" if west else "e"))
            q2 = b[7] + 1 - q
            if q2 > b[12]:
                return visits, b[7] + 1 - q2, False
            stem, q = 6, b[6] + 1 - q2
        else:
            if q == b[2] + 1:
                raise TracerError("walk re-entered the start strand")
            west = q <= b[2]
            visits.append((2, "w" if west else "e"))
            v2 = b[6] + 1 - q
            if v2 <= b[11]:
                return visits, b[13] + (b[11] + 1 - v2), False
            stem, q = 7, b[6] + 1 - v2


class _ExactAccumulator:
    __slots__ = ("coeffs",)

    def __init__(self):
        self.coeffs: dict[int, int] = {}

    def add(self, sign: int, level: int) -> None:
        c = self.coeffs.get(level, 0) + sign
        if c:
            self.coeffs[level] = c
        else:
            self.coeffs.pop(level, None)

    def polynomial(self) -> LaurentPolynomial:
        return LaurentPolynomial.from_terms(self.coeffs)


class _ModAccumulator:
    """Coefficient array with exponents folded modulo 2**mod_bits."""

    __slots__ = ("cells", "mask", "nonzero")

    def __init__(self, mod_bits: int):
        self.cells = [0] * (1 << mod_bits)
        self.mask = (1 << mod_bits) - 1
        self.nonzero = 0

    def add(self, sign: int, level: int) -> None:
        i = level & self.mask
        before = self.cells[i]
        after = before + sign
        self.cells[i] = after
        self.nonzero += (after != 0) - (before != 0)


@dataclass
class TraceState:
    """One traveler position between excursions, plus accumulated data."""

    tup: WeightTuple
    slot: int
    direction: str                     # "left" or "right": the next travel
    level: int = 0
    steps: int = 0
    record: list[int] = field(default_factory=list)
    visits: list[int] = field(default_factory=lambda: [0, 0, 0, 0])
    pos: int = 0
    neg: int = 0
    acc: object = None
    done: bool = False

    @property
    def ell(self) -> int:
        b14 = self.tup.w14 // 2
        if self.direction == "left":
            return 2 * (b14 - self.slot) + 1
        return 2 * self.slot - 1


def initial_state(t: WeightTuple, acc=None) -> TraceState:
    """The walk as it first reaches rail 14: westbound with ell = w2."""
    b = _HalfWeights.of(t).b
    if not b[2] + 1 <= b[11]:
        raise TracerError(f"start strand cannot reach rail 14 for {t}")
    return TraceState(tup=t, slot=b[14] - b[2], direction="left",
                      acc=acc if acc is not None else _ExactAccumulator())


def _apply_visit(state: TraceState, loop: int, side: str) -> None:
    state.visits[loop] += 1
    west = side == "w"
    if loop == 0:
        if west:
            state.level -= 1
            state.neg += 1
            state.acc.add(-1, state.level)
        else:
            state.pos += 1
            state.acc.add(+1, state.level)
            state.level += 1
    elif loop == 1:
        if west:
            state.pos += 1
            state.acc.add(+1, state.level)
            state.level -= 1
        else:
            state.level += 1
            state.neg += 1
            state.acc.add(-1, state.level)
    else:
        state.level += -1 if west else +1


def step(state: TraceState, weights: Optional[tuple[int, ...]] = None) -> TraceState:
    """Advance one excursion (or detect termination), mutating ``state``.

    The record symbol is derived from the route taken and cross-checked
    against the threshold position whenever that position exists.
    """
    if state.done:
        raise TracerError("stepping a finished trace")
    w = weights if weights is not None else derive_weights(state.tup)
    b = _HalfWeights.of(state.tup).b
    ell = state.ell
    state.steps += 1
    if state.direction == "left":
        route, s_out = _excursion_left(state.slot, b)
        symbol = LEFT_ROUTE_SYMBOL.get(tuple(route))
        if symbol is None:
            raise UnknownRouteError(f"left route {route} for {state.tup}")
        pos = _threshold_position(left_thresholds(w), ell)
        if pos is not None and pos != symbol:
            raise TracerError(
                f"threshold position {pos} disagrees with route symbol {symbol} "
                f"at ell={ell} for {state.tup}")
        state.record.append(symbol)
        for loop, side in route:
            _apply_visit(state, loop, side)
        state.slot = s_out
        state.direction = "right"
        return state
    # eastbound: check the closing condition before steering
    rights = right_thresholds(w)
    if (ell == w[3] and ell < w[13]) or (ell >= max(rights) and ell == 3 * w[3] + w[14]):
        state.done = True
        return state
    route, s_out, terminal = _excursion_right(state.slot, b)
    if terminal:
        # geometrically unreachable: the closing condition above is exact
        raise TracerError(f"unflagged terminal descent for {state.tup}")
    symbol = RIGHT_ROUTE_SYMBOL.get(tuple(route))
    if symbol is None:
        raise UnknownRouteError(f"right route {route} for {state.tup}")
    pos = _threshold_position(rights, ell)
    if (pos or 6) != symbol:
        raise TracerError(
            f"threshold position {pos} disagrees with route symbol {symbol} "
            f"at ell={ell} for {state.tup}")
    state.record.append(symbol)
    for loop, side in route:
        _apply_visit(state, loop, side)
    state.slot = s_out
    state.direction = "left"
    return state


@dataclass(frozen=True)
class TraceOutcome:
    """Result of tracing one weight tuple."""

    status: TraceStatus
    crossings: int
    record: Optional[tuple[int, ...]] = None
    polynomial: Optional[LaurentPolynomial] = None
    positive: int = 0
    negative: int = 0
    mod_nonzero: Optional[bool] = None

    def require_polynomial(self) -> LaurentPolynomial:
        if self.polynomial is None:
            raise ModeMisuseError("polynomial only available from an exact genuine-arc trace")
        return self.polynomial


def trace(t: WeightTuple, mode: str = "exact", mod_bits: int = 7) -> TraceOutcome:
    """Trace the arc carried by ``t``.

    mode "exact" accumulates the integer Laurent polynomial; "preliminary"
    accumulates coefficients modulo ``2**mod_bits`` and only reports whether
    the folded array is nonzero.  Either mode walks the full arc and settles
    the genuine-arc / proper-multicurve question by strand accounting: the
    walk is a genuine arc exactly when it consumes every loop strand.
    """
    t = WeightTuple(*t)
    if not is_admissible(t):
        return TraceOutcome(TraceStatus.NON_ADMISSIBLE, 0)
    if mode not in ("exact", "preliminary"):
        raise ValueError(f"unknown mode {mode!r}")
    w = derive_weights(t)
    b = _HalfWeights.of(t).b
    acc = _ExactAccumulator() if mode == "exact" else _ModAccumulator(mod_bits)
    state = initial_state(t, acc)
    budget = 4 * (crossing_count(t) + t.w14) + 16
    while not state.done:
        if state.steps > budget:
            raise StepBudgetExceededError(f"no termination within {budget} steps for {t}")
        step(state, w)
    genuine = state.visits == [b[0], b[1], b[2], b[3]]
    raw = state.pos + state.neg
    if not genuine:
        return TraceOutcome(TraceStatus.PROPER_MULTICURVE, raw,
                            positive=state.pos, negative=state.neg,
                            mod_nonzero=None if mode == "exact" else acc.nonzero > 0)
    if raw != b[0] + b[1]:
        raise TracerError(f"crossing accounting broke for {t}")
    essential = crossing_count(t)
    if mode == "exact":
        poly = acc.polynomial()
        if poly.norm() > essential or (poly.norm() - essential) % 2:
            raise TracerError(f"norm/crossing inconsistency for {t}")
        return TraceOutcome(TraceStatus.GENUINE_ARC, essential, tuple(state.record),
                            poly, state.pos, state.neg)
    return TraceOutcome(TraceStatus.GENUINE_ARC, essential, tuple(state.record),
                        None, state.pos, state.neg, acc.nonzero > 0)


def screen_zero(t: WeightTuple, mod_bits: int = 7) -> ScreenResult:
    """Cheap modular screening for a zero polynomial.

    DEFINITELY_NONZERO is sound: folding exponents modulo ``2**mod_bits`` is
    a ring map, so a nonzero folded array forces a nonzero polynomial.  A
    zero folded array says nothing and must be settled by an exact trace.
    """
    out = trace(t, mode="preliminary", mod_bits=mod_bits)
    if out.status is TraceStatus.PROPER_MULTICURVE:
        return ScreenResult.PROPER_MULTICURVE
    if out.status is TraceStatus.NON_ADMISSIBLE:
        raise ValueError(f"screening requires an admissible tuple, got {t}")
    return ScreenResult.DEFINITELY_NONZERO if out.mod_nonzero else ScreenResult.POSSIBLY_ZERO
