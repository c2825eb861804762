"""Level sweeps and their interpretation.

Three workflows sit on top of the tracer:

* certification: screen every admissible tuple of every level up to a bound
  for a zero polynomial (a hit would be the headline result; none is the
  expected outcome),
* per-level statistics: the minimum polynomial norm over the genuine arcs of
  a level, its multiplicity, and the witnesses attaining it,
* family structure: arithmetic-progression families of arcs whose
  polynomials share their ordered coefficient sequence (tightly-knit) or at
  least never drop below the base norm (loosely-knit), and the per-level
  minimum norm after discarding non-initial family members.

Sweeps use the compiled kernels when numba is importable and fall back to
the pure tracer otherwise.  Per-level results can be cached on disk, which
both speeds up the family analyses (they revisit lower levels constantly)
and gives certified runs coarse-grained resumability.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Iterable, Optional

import numpy as np

from . import _fast
from .conditions import classify_cases, crossing_count
from .laurent import LaurentPolynomial
from .levels import enumerate_level
from .tracer import ScreenResult, TraceStatus, screen_zero, trace
from .weights import WeightTuple


class EmptyLevelError(ValueError):
    """No genuine arcs exist at the requested level."""


@dataclass(frozen=True)
class LevelStats:
    """Per-level minimum-norm summary."""

    level: int
    minnorm: int
    mult: int
    witnesses: tuple[WeightTuple, ...]
    arcs_tested: int
    multicurves: int


@dataclass(frozen=True)
class CertifyRow:
    level: int
    minnorm: int
    mult: int
    arcs_tested: int
    multicurves: int
    possibly_zero: int
    zeros: int


@dataclass
class CertifyReport:
    rows: list[CertifyRow] = field(default_factory=list)
    zero_witnesses: list[WeightTuple] = field(default_factory=list)

    @property
    def total_zeros(self) -> int:
        return sum(r.zeros for r in self.rows)


@dataclass(frozen=True)
class FamilyDescriptor:
    """An arithmetic progression of arcs with coherent polynomials."""

    base: WeightTuple
    step: tuple[int, int, int, int, int]
    kind: str                       # "tight" or "loose"
    signature: tuple[int, ...]      # nonzero coefficient sequence (tight only)
    verified_depth: int


# ---------------------------------------------------------------------------
# level sweeps
# ---------------------------------------------------------------------------

def _sweep_arrays(level: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(tuples, status, norms) for one level, via kernels or the pure path."""
    if _fast.HAVE_NUMBA:
        arr = _fast.enumerate_level_array(level)
        status, norms = _fast.norms_batch(arr)
        if (status < 0).any():
            bad = arr[status < 0][0]
            raise RuntimeError(f"kernel error on tuple {tuple(bad)}")
        return arr, status, norms
    tuples = enumerate_level(level)
    arr = np.array(tuples, dtype=np.int64).reshape(len(tuples), 5)
    status = np.empty(len(tuples), dtype=np.int8)
    norms = np.zeros(len(tuples), dtype=np.int64)
    for i, t in enumerate(tuples):
        out = trace(t)
        if out.status is TraceStatus.GENUINE_ARC:
            status[i] = 0
            norms[i] = out.polynomial.norm()
        else:
            status[i] = 2
    return arr, status, norms


class LevelCache:
    """On-disk memo of per-level sweep arrays (tuples, status, norms)."""

    def __init__(self, directory: Optional[str] = None):
        self.directory = directory
        self._mem: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}
        if directory:
            os.makedirs(directory, exist_ok=True)

    def get(self, level: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        if level in self._mem:
            return self._mem[level]
        path = os.path.join(self.directory, f"level_{level:04d}.npz") if self.directory else None
        if path and os.path.exists(path):
            z = np.load(path)
            data = (z["tuples"], z["status"], z["norms"])
        else:
            data = _sweep_arrays(level)
            if path:
                np.savez_compressed(path, tuples=data[0], status=data[1], norms=data[2])
        if len(self._mem) > 8:
            self._mem.clear()
        self._mem[level] = data
        return data


def level_stats(level: int, cache: Optional[LevelCache] = None) -> LevelStats:
    """Exact minimum norm, multiplicity and witnesses of one level."""
    arr, status, norms = (cache or LevelCache()).get(level)
    genuine = status == 0
    if not genuine.any():
        raise EmptyLevelError(f"no genuine arcs at level {level}")
    gnorms = norms[genuine]
    minnorm = int(gnorms.min())
    wit = arr[genuine & (norms == minnorm)]
    return LevelStats(level, minnorm, int((gnorms == minnorm).sum()),
                      tuple(WeightTuple(*map(int, r)) for r in wit),
                      int(genuine.sum()), int((status == 2).sum()))


def certify_level(level: int, mod_bits: int = 7,
                  cache: Optional[LevelCache] = None) -> tuple[CertifyRow, list[WeightTuple]]:
    """Screen one level for zero polynomials and collect its statistics.

    Screening runs first; only tuples whose folded coefficient array is all
    zero are settled by the exact norm.  The exact norms also provide the
    level's minimum-norm row.
    """
    if _fast.HAVE_NUMBA:
        arr = _fast.enumerate_level_array(level)
        status, norms, nonzero = _fast.sweep_batch(arr, mod_bits)
        if (status < 0).any():
            raise RuntimeError(f"kernel error at level {level}")
        genuine = status == 0
        possibly = genuine & ~nonzero
    else:
        tuples = enumerate_level(level)
        arr = np.array(tuples, dtype=np.int64).reshape(len(tuples), 5)
        screen = np.empty(len(tuples), dtype=np.int8)
        status = np.empty(len(tuples), dtype=np.int8)
        norms = np.zeros(len(tuples), dtype=np.int64)
        for i, t in enumerate(tuples):
            res = screen_zero(t, mod_bits)
            screen[i] = {ScreenResult.DEFINITELY_NONZERO: 0,
                         ScreenResult.POSSIBLY_ZERO: 1,
                         ScreenResult.PROPER_MULTICURVE: 2}[res]
            out = trace(t)
            status[i] = 0 if out.status is TraceStatus.GENUINE_ARC else 2
            norms[i] = out.polynomial.norm() if out.status is TraceStatus.GENUINE_ARC else 0
        if ((screen == 2) != (status == 2)).any():
            raise RuntimeError(f"screening and exact sweep disagree on multicurves at {level}")
        genuine = status == 0
        possibly = genuine & (screen == 1)
    zeros = genuine & (norms == 0)
    if (zeros & ~possibly).any():
        raise RuntimeError("screening claimed nonzero for an exact zero")
    witnesses = [WeightTuple(*map(int, r)) for r in arr[zeros]]
    gnorms = norms[genuine]
    minnorm = int(gnorms.min()) if genuine.any() else 0
    mult = int((gnorms == minnorm).sum()) if genuine.any() else 0
    row = CertifyRow(level, minnorm, mult, int(genuine.sum()),
                     int((status == 2).sum()), int(possibly.sum()), int(zeros.sum()))
    return row, witnesses


def certify_range(max_crossings: int, mod_bits: int = 7, workers: int = 1,
                  on_level: Optional[Callable[[CertifyRow], None]] = None,
                  levels: Optional[Iterable[int]] = None) -> CertifyReport:
    """Screen every level 2..max_crossings (even) for zero polynomials."""
    import functools
    report = CertifyReport()
    todo = list(levels) if levels is not None else list(range(2, max_crossings + 1, 2))
    job = functools.partial(certify_level, mod_bits=mod_bits)
    for row, witnesses in map_levels(job, todo, workers):
        report.rows.append(row)
        report.zero_witnesses.extend(witnesses)
        if on_level:
            on_level(row)
    report.rows.sort(key=lambda r: r.level)
    return report


def map_levels(job, levels: list[int], workers: int):
    """Apply ``job`` to levels, yielding results in level order.

    With several workers the levels are spread over processes; ``job`` must
    then be picklable (a module-level function or a partial of one).
    """
    if workers <= 1 or len(levels) <= 1:
        for lv in levels:
            yield job(lv)
        return
    import multiprocessing as mp
    with mp.get_context("spawn").Pool(workers) as pool:
        yield from pool.imap(job, levels)


def periodicity_check(lo: int, hi: int, workers: int = 1,
                      on_level: Optional[Callable] = None) -> tuple[bool, list, list[LevelStats]]:
    """Verify the periodic minnorm/mult pattern on even levels in [lo, hi].

    Expected: minnorm 10 when the level is divisible by 6 and 8 otherwise;
    multiplicity 6 when the level is 2 mod 6 and 18 otherwise.
    """
    levels = list(range(lo + lo % 2, hi + 1, 2))
    stats: list[LevelStats] = []
    exceptions = []
    for st in map_levels(level_stats, levels, workers):
        stats.append(st)
        want = (10 if st.level % 6 == 0 else 8, 6 if st.level % 6 == 2 else 18)
        if (st.minnorm, st.mult) != want:
            exceptions.append((st.level, (st.minnorm, st.mult), want))
        if on_level:
            on_level(st)
    return not exceptions, exceptions, stats


# ---------------------------------------------------------------------------
# exact polynomials on demand
# ---------------------------------------------------------------------------

def exact_polynomial(t: WeightTuple) -> Optional[LaurentPolynomial]:
    """Exact polynomial of a genuine arc, or None for a multicurve."""
    if _fast.HAVE_NUMBA:
        st, minexp, coeffs = _fast.exact_single(*t)
        if st == _fast.ERROR:
            raise RuntimeError(f"kernel error on {t}")
        if st != _fast.GENUINE:
            return None
        return LaurentPolynomial.from_terms(
            {minexp + i: int(c) for i, c in enumerate(coeffs)})
    out = trace(WeightTuple(*t))
    return out.polynomial if out.status is TraceStatus.GENUINE_ARC else None


def poly_signature(t: WeightTuple) -> Optional[tuple[int, ...]]:
    p = exact_polynomial(t)
    return None if p is None else p.signature()


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------

def _member(base: WeightTuple, step, i: int) -> WeightTuple:
    return WeightTuple(*(b + i * s for b, s in zip(base, step)))


def _family_holds(base: WeightTuple, step, depth: int, kind: str) -> bool:
    """Do members 0..depth stay genuine with coherent polynomials?"""
    from .conditions import is_admissible
    p0 = exact_polynomial(base)
    if p0 is None or not is_admissible(base):
        return False
    sig0, norm0 = p0.signature(), p0.norm()
    for i in range(1, depth + 1):
        m = _member(base, step, i)
        if min(m) < 0 or not is_admissible(m):
            return False
        p = exact_polynomial(m)
        if p is None:
            return False
        if kind == "tight":
            if p.signature() != sig0:
                return False
        else:
            if p.norm() < norm0:
                return False
    return True


def is_tightly_knit(b0: WeightTuple, b1: WeightTuple, depth: int) -> bool:
    """Members b0 + i*(b1-b0), 0 <= i <= depth, all genuine with one
    ordered nonzero-coefficient sequence."""
    step = tuple(x - y for x, y in zip(b1, b0))
    if all(s == 0 for s in step):
        raise ValueError("generators coincide")
    return _family_holds(WeightTuple(*b0), step, depth, "tight")


def is_loosely_knit(b0: WeightTuple, b1: WeightTuple, depth: int) -> bool:
    """Members all genuine with norm at least the base norm."""
    step = tuple(x - y for x, y in zip(b1, b0))
    if all(s == 0 for s in step):
        raise ValueError("generators coincide")
    return _family_holds(WeightTuple(*b0), step, depth, "loose")


ALL_EXCLUDED = None


def min_excluding_families(level: int, kind: str, depth: int,
                           cache: LevelCache) -> Optional[int]:
    """Minimum norm at ``level`` over arcs that are not non-initial members
    of any family based at a smaller level; None when every arc is excluded.

    Candidate bases are arcs at smaller levels dominated componentwise by
    the arc, with the difference divisible by the member index.  Arcs are
    tested in ascending norm order, so the scan stops at the first survivor.
    """
    arr, status, norms = cache.get(level)
    genuine = status == 0
    if not genuine.any():
        raise EmptyLevelError(f"no genuine arcs at level {level}")
    garr = arr[genuine]
    gnorms = norms[genuine]
    order = np.lexsort((garr[:, 4], garr[:, 3], garr[:, 2], garr[:, 1], garr[:, 0], gnorms))
    smaller = list(range(2, level, 2))
    for idx in order:
        beta = WeightTuple(*map(int, garr[idx]))
        if not _is_excluded(beta, int(gnorms[idx]), smaller, kind, depth, cache):
            return int(gnorms[idx])
    return ALL_EXCLUDED


def _is_excluded(beta: WeightTuple, beta_norm: int, smaller_levels: list[int],
                 kind: str, depth: int, cache: LevelCache) -> bool:
    bvec = np.array(beta, dtype=np.int64)
    sig_beta = poly_signature(beta) if kind == "tight" else None
    for lv in smaller_levels:
        arr, status, norms = cache.get(lv)
        mask = status == 0
        if kind == "loose":
            mask = mask & (norms <= beta_norm)
        if not mask.any():
            continue
        cand = arr[mask]
        diff = bvec[None, :] - cand
        dom = (diff >= 0).all(axis=1) & (diff.sum(axis=1) > 0)
        if not dom.any():
            continue
        cand = cand[dom]
        diffs = diff[dom]
        for base_row, d in zip(cand, diffs):
            g = int(np.gcd.reduce(d))
            if g == 0:
                continue
            base = WeightTuple(*map(int, base_row))
            if kind == "tight" and poly_signature(base) != sig_beta:
                continue
            for i in _divisors(g):
                step = tuple(int(x) // i for x in d)
                if _family_holds(base, step, depth, kind):
                    return True
    return False


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def min2k_table(lo: int, hi: int, kind: str, depth: int,
                cache: LevelCache,
                on_level: Optional[Callable] = None) -> list[tuple[int, Optional[int]]]:
    rows = []
    for level in range(lo + lo % 2, hi + 1, 2):
        value = min_excluding_families(level, kind, depth, cache)
        rows.append((level, value))
        if on_level:
            on_level((level, value))
    return rows


def extract_families(lo: int, hi: int, kind: str = "tight",
                     cache: Optional[LevelCache] = None) -> list[FamilyDescriptor]:
    """Group the minimum-norm witnesses of levels in [lo, hi] into maximal
    arithmetic-progression families with constant coefficient signature.

    Witness families advance six levels per member (the witness pattern
    repeats with period six), so chains are built within each residue class.
    Unchained witnesses are reported as degenerate depth-0 descriptors.
    """
    cache = cache or LevelCache()
    witnesses: dict[int, list[WeightTuple]] = {}
    sigs: dict[WeightTuple, tuple[int, ...]] = {}
    for level in range(lo + lo % 2, hi + 1, 2):
        st = level_stats(level, cache)
        witnesses[level] = list(st.witnesses)
        for w in st.witnesses:
            sigs[w] = poly_signature(w)
    used: set[WeightTuple] = set()
    families: list[FamilyDescriptor] = []
    for level in sorted(witnesses):
        for base in witnesses[level]:
            if base in used:
                continue
            chain = [base]
            nxt_level = level + 6
            while nxt_level in witnesses:
                prev = chain[-1]
                if len(chain) == 1:
                    cands = [w for w in witnesses[nxt_level]
                             if w not in used and sigs[w] == sigs[base]
                             and all(x >= y for x, y in zip(w, prev))]
                else:
                    step = tuple(x - y for x, y in zip(chain[1], chain[0]))
                    want = _member(prev, step, 1)
                    cands = [w for w in witnesses[nxt_level] if w == want]
                if len(chain) == 1:
                    # resolve ambiguity: prefer the candidate whose step extends
                    cands = [w for w in cands
                             if _chain_extends(prev, w, witnesses, nxt_level + 6)]
                if not cands:
                    break
                chain.append(min(cands))
                nxt_level += 6
            for w in chain:
                used.add(w)
            step = (tuple(x - y for x, y in zip(chain[1], chain[0]))
                    if len(chain) > 1 else (0, 0, 0, 0, 0))
            families.append(FamilyDescriptor(base, step, kind, sigs[base] or (),
                                             len(chain) - 1))
    return families


def _chain_extends(a: WeightTuple, b: WeightTuple,
                   witnesses: dict[int, list[WeightTuple]], level2: int) -> bool:
    if level2 not in witnesses:
        return True
    step = tuple(x - y for x, y in zip(b, a))
    return _member(b, step, 1) in witnesses[level2]


def arc_cases(t: WeightTuple) -> list[str]:
    return classify_cases(t).labels()


def arc_report_entry(t: WeightTuple) -> dict:
    """The per-arc record used in the JSONL report."""
    out = trace(t)
    if out.status is not TraceStatus.GENUINE_ARC:
        return {"tuple": list(t), "status": out.status.value}
    return {
        "tuple": list(t),
        "crossings": out.crossings,
        "polynomial": out.polynomial.canonical().to_string(),
        "norm": out.polynomial.norm(),
        "record": list(out.record),
        "cases": arc_cases(t),
    }
