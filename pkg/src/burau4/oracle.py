"""Slow first-principles reference for the tracer.

Everything here is built the long way round.  The carried multicurve is laid
out as an explicit strand diagram: every rail holds an ordered band of
strands, and each switch joins strand ends by the unique planar
(order-preserving, or order-reversing across a fold) matching.  Walking the
diagram strand by strand then answers every question the tracer answers:

* how many components the carried multicurve has,
* whether the arc walk from p3 consumes the whole diagram (genuine arc),
* the crossing sequence with the reference arc alpha, with each crossing's
  sign, cover level, and position along alpha,
* the essential crossing count after honest bigon removal,
* the Burau polynomial, and the record of the walk.

The diagram exists at two granularities: the arc's own strands (half the
carried weights, plus the two endpoint strands into p3 and p4) drive the
walk; the full carried weights give the multicurve whose component count
classifies proper multicurves.

A piecewise-linear embedding over exact rationals doubles as a geometric
audit: strands are rendered as polylines and checked to be pairwise
disjoint, and the crossings with alpha are counted by segment intersection.

Conventions (cover level, crossing signs, record symbols) are shared with
the tracer so the two pipelines are comparable outcome by outcome; the
construction of positions and transitions is independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .conditions import crossing_count, is_admissible
from .laurent import LaurentPolynomial
from .tracer import (LEFT_ROUTE_SYMBOL, RIGHT_ROUTE_SYMBOL, TraceOutcome,
                     TraceStatus, left_thresholds, right_thresholds,
                     _threshold_position)
from .weights import WeightTuple, derive_weights


class OracleError(RuntimeError):
    pass


class NotAnArcBoundaryError(OracleError):
    """A single-component diagram failed to walk from p3 to p4."""


class SymbolUncoveredError(OracleError):
    """The probe set never exercised some record symbol."""


# ---------------------------------------------------------------------------
# diagram construction
# ---------------------------------------------------------------------------

START = ("puncture", 3)
END = ("puncture", 4)

_OTHER_END = {"bot": "top", "top": "bot", "a": "b", "b": "a", "w": "e", "e": "w"}


def _build_ports(n: dict[int, int], endpoints: bool) -> dict:
    """Port map of the strand diagram with band sizes ``n[rail]``.

    With ``endpoints`` the middle strands of stems 6 and 7 dangle into the
    punctures (the arc-level diagram); without, every stem strand folds
    around its loop (the carried multicurve).
    """
    ports: dict = {}

    def link(a, b):
        ports[a] = b
        ports[b] = a

    for k in range(1, n[4] + 1):        # stem-4 top
        link((4, k, "top"), (10, k, "a") if k <= n[10] else (8, k - n[10], "a"))
    for m in range(1, n[5] + 1):        # stem-5 top
        link((5, m, "top"), (8, n[8] + 1 - m, "b") if m <= n[8] else (9, m - n[8], "a"))
    for s in range(1, n[14] + 1):       # rail-14 west end
        link((14, s, "a"), (10, s, "b") if s <= n[10] else (9, s - n[10], "b"))
    for s in range(1, n[14] + 1):       # rail-14 east end
        link((14, s, "b"), (13, s, "a") if s <= n[13] else (11, s - n[13], "a"))
    for v in range(1, n[6] + 1):        # stem-6 top
        link((6, v, "top"), (11, n[11] + 1 - v, "b") if v <= n[11] else (12, n[6] + 1 - v, "a"))
    for q in range(1, n[7] + 1):        # stem-7 top
        link((7, q, "top"), (12, q, "b") if q <= n[12] else (13, n[7] + 1 - q, "b"))
    for stem, loop in ((4, 0), (5, 1), (6, 2), (7, 3)):
        size = n[stem]
        half = size // 2
        for k in range(1, size + 1):
            if endpoints and stem in (6, 7) and k == half + 1:
                link((stem, k, "bot"), ("puncture", loop + 1))
                continue
            circle = min(k, size + 1 - k)
            side = "w" if k <= half else "e"
            link((stem, k, "bot"), (loop, circle, side))
    return ports


@dataclass
class StrandDiagram:
    """Explicit strand bands of the carried multicurve on the track."""

    tup: WeightTuple
    weights: tuple[int, ...]            # the fifteen carried rail weights
    arc_bands: dict[int, int]           # strand counts of the arc diagram
    arc_ports: dict
    curve_ports: dict                   # full multicurve diagram

    @property
    def total_arc_strands(self) -> int:
        return sum(self.arc_bands.values()) + 2   # plus the two puncture nodes


def build_diagram(t: WeightTuple) -> StrandDiagram:
    t = WeightTuple(*t)
    w = derive_weights(t)
    arc = {0: w[0] // 2, 1: w[1] // 2, 2: (w[2] - 1) // 2, 3: (w[3] - 1) // 2,
           4: w[0], 5: w[1], 6: w[2], 7: w[3],
           8: w[8] // 2, 9: w[9] // 2, 10: w[10] // 2,
           11: w[11] // 2, 12: w[12] // 2, 13: w[13] // 2, 14: w[14] // 2}
    full = {0: w[0] // 2, 1: w[1] // 2, 2: w[2], 3: w[3],
            4: w[4], 5: w[5], 6: w[6], 7: w[7],
            8: w[8], 9: w[9], 10: w[10], 11: w[11], 12: w[12], 13: w[13], 14: w[14]}
    if any(w[i] % 2 for i in (0, 1, 8, 9, 10, 11, 12, 13, 14)) or w[2] % 2 == 0 or w[3] % 2 == 0:
        raise OracleError(f"weights of {t} do not carry an arc diagram")
    return StrandDiagram(t, w, arc, _build_ports(arc, endpoints=True),
                         _build_ports(full, endpoints=False))


def components(diagram: StrandDiagram) -> list[list]:
    """Cycle decomposition of the carried multicurve."""
    ports = diagram.curve_ports
    seen = set()
    cycles = []
    for node in ports:
        if node in seen:
            continue
        cycle = []
        cur = node
        while cur not in seen:
            seen.add(cur)
            other = (cur[0], cur[1], _OTHER_END[cur[2]])
            seen.add(other)
            cycle.append((cur[0], cur[1]))
            cur = ports[other]
        cycles.append(cycle)
    return cycles


# ---------------------------------------------------------------------------
# reference walk
# ---------------------------------------------------------------------------

@dataclass
class Crossing:
    sign: int
    level: int
    alpha_key: tuple          # sort key for position along alpha


@dataclass
class ReferenceTrace:
    """Everything the reference walk observes, before interpretation."""

    tup: WeightTuple
    reached_end: bool
    consumed_all: bool
    crossings: list[Crossing]
    record: list[int]
    traversals: list[dict]    # instrumentation: one entry per rail-14 visit
    final_level: int


def _loop_events(loop: int, enter_side: str, level: int,
                 circle: int, out: list[Crossing]) -> int:
    """Apply one loop traversal's cut and alpha crossings; return new level."""
    if loop == 0:
        if enter_side == "w":
            level -= 1
            out.append(Crossing(-1, level, (0, -circle)))
        else:
            out.append(Crossing(+1, level, (0, -circle)))
            level += 1
    elif loop == 1:
        if enter_side == "w":
            out.append(Crossing(+1, level, (1, circle)))
            level -= 1
        else:
            level += 1
            out.append(Crossing(-1, level, (1, circle)))
    else:
        level += -1 if enter_side == "w" else +1
    return level


def reference_walk(diagram: StrandDiagram) -> ReferenceTrace:
    """Walk the arc diagram from p3, gathering crossings and the record."""
    ports = diagram.arc_ports
    b14 = diagram.arc_bands[14]
    w = diagram.weights
    lefts = left_thresholds(w)
    rights = right_thresholds(w)
    crossings: list[Crossing] = []
    record: list[int] = []
    traversals: list[dict] = []
    visited = {START, END}
    level = 0
    route: Optional[list] = None

    def flush_route(side):
        nonlocal route
        if route is None:
            return
        table = LEFT_ROUTE_SYMBOL if side == "L" else RIGHT_ROUTE_SYMBOL
        symbol = table.get(tuple(route))
        if symbol is None:
            raise OracleError(f"unknown {side} route {route} for {diagram.tup}")
        pos = traversals[-1]["threshold_position"]
        if side == "R" and pos is None:
            pos = 6
        if pos is not None and pos != symbol:
            raise OracleError(f"threshold/route mismatch for {diagram.tup}")
        record.append(symbol)
        traversals[-1]["symbol"] = symbol
        traversals[-1]["route"] = tuple(route)
        route = None

    cur = ports[START]           # (6, middle, 'bot'): entering the stem upward
    reached_end = False
    for _ in range(2 * len(ports) + 4):
        rail, idx, end = cur
        visited.add(cur)
        other = (rail, idx, _OTHER_END[end])
        visited.add(other)
        if rail in (0, 1, 2, 3):
            level = _loop_events(rail, end, level, idx, crossings)
            if route is not None:
                route.append((rail, end))
        elif rail == 14:
            s = idx
            if end == "b":       # entered from the east: traveling west
                flush_route("R")
                ell = 2 * (b14 - s) + 1
                traversals.append({"side": "L", "slot": s, "ell": ell, "level": level,
                                   "threshold_position": _threshold_position(lefts, ell)})
                route = []
            else:                # traveling east
                flush_route("L")
                ell = 2 * s - 1
                traversals.append({"side": "R", "slot": s, "ell": ell, "level": level,
                                   "threshold_position": _threshold_position(rights, ell)})
                route = []
        nxt = ports[other]
        if nxt == END:
            reached_end = True
            break
        if nxt == START:
            raise NotAnArcBoundaryError(f"walk returned to p3 for {diagram.tup}")
        cur = nxt
    else:
        raise OracleError(f"walk did not terminate for {diagram.tup}")
    # the excursion that reached p4 contributes no record symbol
    if traversals and "symbol" not in traversals[-1]:
        traversals.pop()
    consumed = len(visited) == len(ports)
    return ReferenceTrace(diagram.tup, reached_end, consumed, crossings,
                          record, traversals, level)


def remove_bigons(crossings: list[Crossing]) -> list[Crossing]:
    """Cancel crossing pairs bounding empty bigons, until none remain.

    A removable pair is adjacent along the arc and along alpha, of opposite
    sign and equal cover level; equal level is exactly the condition that
    the disk between them contains no puncture.
    """
    alive = list(crossings)
    while True:
        by_alpha = sorted(range(len(alive)), key=lambda i: alive[i].alpha_key)
        rank = {i: r for r, i in enumerate(by_alpha)}
        found = None
        for i in range(len(alive) - 1):
            a, b = alive[i], alive[i + 1]
            if abs(rank[i] - rank[i + 1]) == 1 and a.sign == -b.sign and a.level == b.level:
                found = i
                break
        if found is None:
            return alive
        del alive[found:found + 2]


def polynomial_of(crossings: Iterable[Crossing]) -> LaurentPolynomial:
    return LaurentPolynomial.from_terms((c.level, c.sign) for c in crossings)


def alpha_lift_polynomial(crossings: Iterable[Crossing]) -> LaurentPolynomial:
    """The pairing computed from alpha's side: order swapped, levels inverted."""
    return LaurentPolynomial.from_terms((-c.level, -c.sign) for c in crossings)


def trace_reference(t: WeightTuple) -> TraceOutcome:
    """Classify and trace ``t`` entirely from the explicit diagram."""
    t = WeightTuple(*t)
    if not is_admissible(t):
        return TraceOutcome(TraceStatus.NON_ADMISSIBLE, 0)
    diagram = build_diagram(t)
    ncomp = len(components(diagram))
    walk = reference_walk(diagram)
    if not walk.reached_end:
        raise NotAnArcBoundaryError(f"arc walk dead-ended for {t}")
    if (ncomp == 1) != walk.consumed_all:
        raise OracleError(f"component count disagrees with strand accounting for {t}")
    pos = sum(1 for c in walk.crossings if c.sign > 0)
    neg = len(walk.crossings) - pos
    if ncomp > 1:
        return TraceOutcome(TraceStatus.PROPER_MULTICURVE, len(walk.crossings),
                            positive=pos, negative=neg)
    essential = len(remove_bigons(walk.crossings))
    return TraceOutcome(TraceStatus.GENUINE_ARC, essential, tuple(walk.record),
                        polynomial_of(walk.crossings), pos, neg)


# ---------------------------------------------------------------------------
# transition-table extraction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TransitionRule:
    """Per-symbol excursion summary extracted from reference traces.

    ``ell_out`` of the following traversal is affine in the entry ``ell`` and
    the free weights: coefficients are for (ell, w0, w1, w2, w3, w14, 1).
    Crossings are (sign, level offset from the entry level) in walk order.
    """

    side: str
    symbol: int
    route: tuple
    ell_coeffs: tuple[int, ...]
    level_delta: int
    crossings: tuple[tuple[int, int], ...]


def _fit_affine(samples: list[tuple[tuple[int, ...], int]]) -> tuple[int, ...]:
    """Exact least-norm integer fit of out = coeffs . basis over samples."""
    from fractions import Fraction as F
    width = len(samples[0][0])
    rows = [[F(x) for x in basis] + [F(out)] for basis, out in samples]
    # Gaussian elimination
    pivots = []
    r = 0
    for c in range(width):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        rows[r] = [x / rows[r][c] for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][-1] != 0:
            raise OracleError("excursion update is not affine in the basis")
    coeffs = [F(0)] * width
    for i, c in enumerate(pivots):
        coeffs[c] = rows[i][-1]
    out = []
    for x in coeffs:
        if x.denominator != 1:
            raise OracleError("non-integer affine coefficient")
        out.append(int(x))
    return tuple(out)


def default_probe_tuples(max_level: int = 10) -> list[WeightTuple]:
    from .levels import enumerate_level
    probes = []
    for lv in range(2, max_level + 1, 2):
        probes.extend(enumerate_level(lv))
    return probes


def derive_transition_table(probes: Optional[list[WeightTuple]] = None) -> dict:
    """Extract every symbol's excursion rule from instrumented walks.

    Returns {(side, symbol): TransitionRule}.  Raises SymbolUncoveredError if
    a symbol in the catalog never occurs in the probe set (symbol 7 of the
    right alphabet does not exist, and no left route realizes a threshold
    position between entries 6 and 7, which coincide).
    """
    if probes is None:
        probes = default_probe_tuples()
    samples: dict[tuple[str, int], dict] = {}
    for t in probes:
        diagram = build_diagram(t)
        walk = reference_walk(diagram)
        if not walk.consumed_all:
            continue
        events = walk.crossings
        ei = 0
        for i, tr in enumerate(walk.traversals):
            route = tr["route"]
            n_cross = sum(1 for loop, _ in route if loop in (0, 1))
            evs = events[ei:ei + n_cross]
            ei += n_cross
            key = (tr["side"], tr["symbol"])
            entry_level = tr["level"]
            rec = samples.setdefault(key, {"route": route, "rows": [], "deltas": set(),
                                           "crossings": set()})
            if rec["route"] != route:
                raise OracleError(f"symbol {key} taken by two routes")
            rec["crossings"].add(tuple((c.sign, c.level - entry_level) for c in evs))
            if i + 1 < len(walk.traversals):
                nxt = walk.traversals[i + 1]
                rec["deltas"].add(nxt["level"] - entry_level)
                basis = (tr["ell"], *t, 1)
                rec["rows"].append((basis, nxt["ell"]))
            else:
                rec["deltas"].add(walk.final_level - entry_level)
    table = {}
    expected = [("L", s) for s in (1, 2, 3, 4, 5, 6, 7, 8)] + [("R", s) for s in (1, 2, 3, 4, 5, 6)]
    for key in expected:
        if key not in samples:
            raise SymbolUncoveredError(f"symbol {key} not covered by the probe set")
        rec = samples[key]
        if len(rec["deltas"]) != 1 or len(rec["crossings"]) != 1:
            raise OracleError(f"symbol {key} has inconsistent excursion effects")
        coeffs = _fit_affine(rec["rows"])
        for basis, out in rec["rows"]:
            if sum(c * x for c, x in zip(coeffs, basis)) != out:
                raise OracleError(f"affine fit fails to reproduce a sample for {key}")
        table[key] = TransitionRule(key[0], key[1], rec["route"], coeffs,
                                    next(iter(rec["deltas"])),
                                    next(iter(rec["crossings"])))
    return table


# ---------------------------------------------------------------------------
# exact planar embedding
# ---------------------------------------------------------------------------

def _offsets(size: int, spread: Fraction) -> list[Fraction]:
    """Symmetric offsets for a band of ``size`` strands, middle at zero."""
    return [spread * Fraction(2 * j - size - 1, 2) for j in range(1, size + 1)]


def planar_embedding(t: WeightTuple) -> list[list[tuple[Fraction, Fraction]]]:
    """Render every strand of the arc diagram as an exact polyline.

    Strand bands follow the slot order of the diagram, so any error in a
    switch matching shows up as a strand crossing.
    """
    d = build_diagram(t)
    n = d.arc_bands
    D = Fraction(1, 4 * max(n[14] + n[8] + n[12], 8))      # strand spacing
    H0 = Fraction(1, 5)
    off = {r: _offsets(n[r], D) for r in (4, 5, 6, 7)}

    def stem_x(stem, k):
        return Fraction(stem - 3) + off[stem][k - 1]

    def y14(s):
        return Fraction(2) - s * D

    def y_arch(j):
        return Fraction(6, 5) + j * D

    lines = []

    def emit(*pts):
        lines.append([p for p in pts])

    for stem, loop in ((4, 0), (5, 1), (6, 2), (7, 3)):
        size, half = n[stem], n[stem] // 2
        cx = Fraction(stem - 3)
        for k in range(1, size + 1):
            emit((stem_x(stem, k), H0), (stem_x(stem, k), Fraction(1)))   # the stem strand
        for circ in range(1, half + 1):                                   # the loop strand
            R = Fraction(1, 4) - circ * D
            kw, ke = circ, size + 1 - circ
            emit((stem_x(stem, kw), H0), (cx - R, H0 / 2), (cx - R, -R),
                 (cx + R, -R), (cx + R, H0 / 2), (stem_x(stem, ke), H0))
        if stem in (6, 7):                                                # endpoint strand
            emit((stem_x(stem, half + 1), H0), (cx, Fraction(0)))
    for j in range(1, n[8] + 1):       # arch between stems 4 and 5; j = 1 outermost
        xa, xb = stem_x(4, n[10] + j), stem_x(5, n[8] + 1 - j)
        y = y_arch(n[8] + 1 - j)
        emit((xa, Fraction(1)), (xa, y), (xb, y), (xb, Fraction(1)))
    for j in range(1, n[12] + 1):      # arch between stems 6 and 7
        xa, xb = stem_x(6, n[6] + 1 - j), stem_x(7, j)
        emit((xa, Fraction(1)), (xa, y_arch(j)), (xb, y_arch(j)), (xb, Fraction(1)))
    for s in range(1, n[14] + 1):      # rail 14 with its four feeder rails
        if s <= n[10]:
            xw = stem_x(4, s)
        else:
            xw = stem_x(5, n[8] + (s - n[10]))
        if s <= n[13]:
            xe = stem_x(7, n[7] + 1 - s)
        else:
            xe = stem_x(6, n[11] + 1 - (s - n[13]))
        emit((xw, Fraction(1)), (xw, y14(s)), (xe, y14(s)), (xe, Fraction(1)))
    return lines


def _seg_intersect(p, q, a, b) -> bool:
    """Proper interior crossing of segments pq and ab (exact arithmetic)."""
    def orient(u, v, w):
        d = (v[0] - u[0]) * (w[1] - u[1]) - (v[1] - u[1]) * (w[0] - u[0])
        return (d > 0) - (d < 0)
    o1, o2 = orient(p, q, a), orient(p, q, b)
    o3, o4 = orient(a, b, p), orient(a, b, q)
    return o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4)


def validate_planarity(t: WeightTuple) -> tuple[int, int]:
    """(strand-strand crossings, alpha crossings) of the embedded diagram.

    A correct diagram has zero of the former and ``w0/2 + w1/2`` of the
    latter (bigons included; essentiality is a separate reduction).
    """
    lines = planar_embedding(t)
    segs = []
    for li, pts in enumerate(lines):
        for i in range(len(pts) - 1):
            segs.append((li, pts[i], pts[i + 1]))
    bad = 0
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            li, p, q = segs[i]
            lj, a, b = segs[j]
            if li == lj:
                continue
            if _seg_intersect(p, q, a, b):
                bad += 1
    alpha = ((Fraction(1), Fraction(0)), (Fraction(2), Fraction(0)))
    hits = sum(1 for _, p, q in segs if _seg_intersect(p, q, *alpha))
    return bad, hits
