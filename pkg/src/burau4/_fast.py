"""Compiled kernels for the large sweeps.

The pure-Python tracer is the readable reference; these numba kernels rerun
the same slot arithmetic at machine speed for the per-level sweeps
(screening every tuple of a level, or computing every exact norm).  They are
validated against the pure tracer in the test suite and are used whenever
numba imports cleanly; everything falls back to the pure path otherwise.

Status codes shared by the kernels:
    0  genuine arc
    2  proper multicurve
   -1  internal error (never expected; surfaced as an exception upstream)
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except Exception:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f
        if args and callable(args[0]):
            return args[0]
        return wrap


GENUINE = 0
MULTICURVE = 2
ERROR = -1


@njit(cache=True)
def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def _admissible(w0, w1, w2, w3, w14):
    if w0 < 0 or w1 < 0 or w2 < 0 or w3 < 0 or w14 < 0 or w14 % 2:
        return False
    if w0 % 2 or w1 % 2 or w2 % 2 == 0 or w3 % 2 == 0:
        return False
    h = w14 // 2
    if not (h <= w0 + w1 and w0 <= w1 + h and w1 <= w0 + h
            and w3 <= w2 + h and h <= w2 + w3 and w2 <= w3 + h):
        return False
    if not w3 < h:
        return False
    if not ((w1 + h < w0 + w2) or (w1 < w2)):
        return False
    if not ((w0 + w2 < w1 + h) or (w0 + w2 < w14)
            or (w0 + w1 + w2 < 3 * h) or (w1 + w2 < w14)):
        return False
    if not (w2 < h and w1 + w3 < w0 + h and w3 < w0
            and ((w0 + w1 < w3 + h) or (w1 < w3))):
        return False
    if _gcd(_gcd(w0, w1), _gcd(w2, w3)) != 1:
        return False
    return h == w0 + w1 or h == w0 - w1 or h == w2 + w3


@njit(cache=True)
def _crossing_count(w0, w1, w14):
    w8 = w0 + w1 - w14 // 2
    m = w1 if w1 < w8 else w8
    return w0 // 2 + w1 // 2 - m


@njit(cache=True)
def _enumerate_count_or_fill(level, out, fill):
    """Case-by-case enumeration; counts when fill is False, fills otherwise."""
    c2 = 2 * level
    n = 0
    for w1 in range(0, c2, 2):                       # case I
        w0 = c2 - w1
        for w2 in range(w1 + 1, c2, 2):
            lo = c2 - w2
            if lo < 1:
                lo = 1
            if lo % 2 == 0:
                lo += 1
            for w3 in range(lo, w0, 2):
                if _admissible(w0, w1, w2, w3, 2 * c2):
                    if fill:
                        out[n, 0] = w0; out[n, 1] = w1; out[n, 2] = w2
                        out[n, 3] = w3; out[n, 4] = 2 * c2
                    n += 1
    for w1 in range(2, c2 - 1, 2):                   # case II
        w0 = w1 + c2
        for w3 in range(w1 + 1, c2, 2):
            lo = c2 - w3
            if lo < 1:
                lo = 1
            if lo % 2 == 0:
                lo += 1
            for w2 in range(lo, c2, 2):
                if _admissible(w0, w1, w2, w3, 2 * c2):
                    if fill:
                        out[n, 0] = w0; out[n, 1] = w1; out[n, 2] = w2
                        out[n, 3] = w3; out[n, 4] = 2 * c2
                    n += 1
    for w3 in range(1, c2, 2):                       # case III, w0 >= w2+w3
        for w1 in range(0, w3, 2):
            w0 = w1 + c2
            lo = c2 - w3
            if lo < 1:
                lo = 1
            if lo % 2 == 0:
                lo += 1
            for w2 in range(lo, w1 + c2 - w3 + 1, 2):
                s = w2 + w3
                if s == w0 + w1 or s == w0 - w1:
                    continue
                if _admissible(w0, w1, w2, w3, 2 * s):
                    if fill:
                        out[n, 0] = w0; out[n, 1] = w1; out[n, 2] = w2
                        out[n, 3] = w3; out[n, 4] = 2 * s
                    n += 1
    for s in range(c2, 2 * c2, 2):                   # case III, w0 < w2+w3
        hi = s - 1
        if 2 * s - c2 < hi:
            hi = 2 * s - c2
        for w0 in range(2, hi + 1, 2):
            w1 = 2 * s - c2 - w0
            if w1 < 0 or s == w0 + w1 or s == w0 - w1:
                continue
            lo = s - c2 + 1
            if lo < 1:
                lo = 1
            if lo % 2 == 0:
                lo += 1
            hi3 = w0 if w0 < s else s
            for w3 in range(lo, hi3, 2):
                if _admissible(w0, w1, s - w3, w3, 2 * s):
                    if fill:
                        out[n, 0] = w0; out[n, 1] = w1; out[n, 2] = s - w3
                        out[n, 3] = w3; out[n, 4] = 2 * s
                    n += 1
    return n


def enumerate_level_array(level: int) -> np.ndarray:
    """All admissible tuples at ``level`` as an (N, 5) int32 array, sorted."""
    dummy = np.empty((0, 5), dtype=np.int32)
    n = _enumerate_count_or_fill(level, dummy, False)
    out = np.empty((n, 5), dtype=np.int32)
    _enumerate_count_or_fill(level, out, True)
    order = np.lexsort((out[:, 4], out[:, 3], out[:, 2], out[:, 1], out[:, 0]))
    return np.ascontiguousarray(out[order])


@njit(cache=True)
def _trace_kernel(w0, w1, w2, w3, w14, exact, mod_bits, acc, offset):
    """Walk one tuple, accumulating crossings into ``acc``.

    Exact mode: acc[level + offset] += sign; returns the touched index span.
    Modular mode: acc[level & mask] += sign over a 2**mod_bits array.
    Returns (status, pos, neg, lo_idx, hi_idx); acc is NOT reset here.
    """
    h = w14 // 2
    b0 = w0 // 2; b1 = w1 // 2; b2 = (w2 - 1) // 2; b3 = (w3 - 1) // 2
    b4 = w0; b5 = w1; b6 = w2; b7 = w3
    w8 = w0 + w1 - h
    b8 = w8 // 2; b10 = (w0 - w1 + h) // 2
    b11 = (w2 - w3 + h) // 2; b12 = (w2 + w3 - h) // 2; b13 = (-w2 + w3 + h) // 2
    b14 = h
    w13 = 2 * b13
    mask = (1 << mod_bits) - 1

    s = b14 - b2
    dirleft = True
    level = 0
    pos = 0
    neg = 0
    v0 = 0; v1 = 0; v2c = 0; v3c = 0
    lo_idx = offset
    hi_idx = offset
    budget = 4 * (_crossing_count(w0, w1, w14) + w14) + 16
    steps = 0
    while True:
        steps += 1
        if steps > budget:
            return ERROR, pos, neg, lo_idx, hi_idx
        if dirleft:
            if s <= b10:
                stem = 4; k = s
            else:
                stem = 5; k = b8 + (s - b10)
            nv = 0
            while True:
                nv += 1
                if nv > 4:
                    return ERROR, pos, neg, lo_idx, hi_idx
                if stem == 4:
                    v0 += 1
                    if k <= b0:
                        level -= 1
                        neg += 1
                        sign = -1
                    else:
                        pos += 1
                        sign = 1
                    if exact:
                        idx = level + offset
                        acc[idx] += sign
                        if idx < lo_idx:
                            lo_idx = idx
                        if idx > hi_idx:
                            hi_idx = idx
                    else:
                        acc[level & mask] += sign
                    if k > b0:
                        level += 1
                    k2 = b4 + 1 - k
                    if k2 <= b10:
                        s = k2
                        break
                    stem = 5; k = b8 + b10 + 1 - k2
                else:
                    v1 += 1
                    if k <= b1:
                        pos += 1
                        sign = 1
                    else:
                        level += 1
                        neg += 1
                        sign = -1
                    if exact:
                        idx = level + offset
                        acc[idx] += sign
                        if idx < lo_idx:
                            lo_idx = idx
                        if idx > hi_idx:
                            hi_idx = idx
                    else:
                        acc[level & mask] += sign
                    if k <= b1:
                        level -= 1
                    m2 = b5 + 1 - k
                    if m2 > b8:
                        s = b10 + (m2 - b8)
                        break
                    stem = 4; k = b10 + (b8 + 1 - m2)
            dirleft = False
        else:
            ell = 2 * s - 1
            if ell == w3 and ell < w13:
                break
            if s <= b13:
                stem = 7; q = b7 + 1 - s
            else:
                stem = 6; q = b14 + 1 - s
            nv = 0
            term = False
            while True:
                nv += 1
                if nv > 4:
                    return ERROR, pos, neg, lo_idx, hi_idx
                if stem == 7:
                    if q == b3 + 1:
                        return ERROR, pos, neg, lo_idx, hi_idx
                    v3c += 1
                    if q <= b3:
                        level -= 1
                    else:
                        level += 1
                    q2 = b7 + 1 - q
                    if q2 > b12:
                        s = b7 + 1 - q2
                        break
                    stem = 6; q = b6 + 1 - q2
                else:
                    if q == b2 + 1:
                        return ERROR, pos, neg, lo_idx, hi_idx
                    v2c += 1
                    if q <= b2:
                        level -= 1
                    else:
                        level += 1
                    v2 = b6 + 1 - q
                    if v2 <= b11:
                        s = b13 + (b11 + 1 - v2)
                        break
                    stem = 7; q = b6 + 1 - v2
            dirleft = True
    if v0 == b0 and v1 == b1 and v2c == b2 and v3c == b3:
        return GENUINE, pos, neg, lo_idx, hi_idx
    return MULTICURVE, pos, neg, lo_idx, hi_idx


@njit(cache=True)
def screen_batch(tuples, mod_bits):
    """Screen a batch: status 0 = genuine & folded array nonzero,
    1 = genuine & folded array all zero, 2 = multicurve, -1 = error."""
    n = tuples.shape[0]
    status = np.empty(n, dtype=np.int8)
    acc = np.zeros(1 << mod_bits, dtype=np.int64)
    for i in range(n):
        st, pos, neg, _, _ = _trace_kernel(np.int64(tuples[i, 0]), np.int64(tuples[i, 1]),
                                           np.int64(tuples[i, 2]), np.int64(tuples[i, 3]),
                                           np.int64(tuples[i, 4]), False, mod_bits,
                                           acc, 0)
        if st == GENUINE:
            nz = False
            for j in range(acc.shape[0]):
                if acc[j] != 0:
                    nz = True
                    break
            status[i] = 0 if nz else 1
        else:
            status[i] = st
        acc[:] = 0
    return status


@njit(cache=True)
def norms_batch(tuples):
    """Exact-norm sweep: (status, norm) per tuple; norm valid when genuine."""
    status, norms, _ = sweep_batch(tuples, 0)
    return status, norms


@njit(cache=True)
def sweep_batch(tuples, mod_bits):
    """One exact walk per tuple: (status, norm, folded-array-nonzero).

    With ``mod_bits`` > 0 the exact window is additionally folded modulo
    2**mod_bits, which reproduces the screening array of the modular run
    (the fold is a ring map, so accumulating before or after folding gives
    the same cells).
    """
    n = tuples.shape[0]
    status = np.empty(n, dtype=np.int8)
    norms = np.zeros(n, dtype=np.int64)
    nonzero = np.zeros(n, dtype=np.bool_)
    width = np.int64(16)
    for i in range(n):
        b = (np.int64(tuples[i, 0]) + tuples[i, 1] + tuples[i, 2] + tuples[i, 3]) // 2 + 4
        if 2 * b + 2 > width:
            width = 2 * b + 2
    acc = np.zeros(width, dtype=np.int64)
    fold = np.zeros(1 << mod_bits, dtype=np.int64) if mod_bits > 0 else np.zeros(1, dtype=np.int64)
    mask = (1 << mod_bits) - 1
    for i in range(n):
        offset = width // 2
        st, pos, neg, lo, hi = _trace_kernel(np.int64(tuples[i, 0]), np.int64(tuples[i, 1]),
                                             np.int64(tuples[i, 2]), np.int64(tuples[i, 3]),
                                             np.int64(tuples[i, 4]), True, 1,
                                             acc, offset)
        status[i] = st
        if st == GENUINE:
            total = 0
            for j in range(lo, hi + 1):
                c = acc[j]
                total += c if c >= 0 else -c
            norms[i] = total
            if mod_bits > 0:
                for j in range(lo, hi + 1):
                    if acc[j] != 0:
                        fold[(j - offset) & mask] += acc[j]
                nz = False
                for j in range(fold.shape[0]):
                    if fold[j] != 0:
                        nz = True
                    fold[j] = 0
                nonzero[i] = nz
        acc[lo:hi + 1] = 0
    return status, norms, nonzero


@njit(cache=True)
def exact_single(w0, w1, w2, w3, w14):
    """(status, min_exponent, coeff window) of one tuple's exact trace."""
    w0 = np.int64(w0); w1 = np.int64(w1); w2 = np.int64(w2)
    w3 = np.int64(w3); w14 = np.int64(w14)
    b = (w0 + w1 + w2 + w3) // 2 + 4
    acc = np.zeros(2 * b + 2, dtype=np.int64)
    st, pos, neg, lo, hi = _trace_kernel(w0, w1, w2, w3, w14, True, 1, acc, b + 1)
    return st, lo - (b + 1), acc[lo:hi + 1].copy()
