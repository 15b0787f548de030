"""Numba inner loops for vertex enumeration.

Float kernels return ``(inside, out_pos, out_neg, closed_pos)`` with
inside = #{|s| < lo}, out_pos = #{s > hi}, out_neg = #{s < -hi} and
closed_pos = #{s >= lo}.  Exact kernels return the same tuple with the
squared-norm predicate in place of the tolerance band.
"""

import numpy as np
from numba import njit

TZ_BITS = 16
# TRAILING_ZEROS[t] = number of trailing zero bits of t, for 0 < t < 2**16
TRAILING_ZEROS = np.zeros(1 << TZ_BITS, dtype=np.uint8)
for _b in range(TZ_BITS):
    TRAILING_ZEROS[1 << _b :: 1 << (_b + 1)] = _b


@njit(cache=True, inline="always")
def _ctz(t, tz):
    low = t & 0xFFFF
    if low != 0:
        return np.int64(tz[low])
    b = np.int64(TZ_BITS)
    t >>= TZ_BITS
    while (t & 1) == 0:
        t >>= 1
        b += 1
    return b


@njit(cache=True, nogil=True)
def _float_sum(weights, base, m, mask):
    s = base
    for i in range(m):
        if (mask >> i) & 1:
            s -= weights[i]
        else:
            s += weights[i]
    return s


@njit(cache=True, nogil=True)
def gray_float(weights, base, m, lo, hi, period, tz):
    """Gray-order tally over the low ``m`` coordinates, high bits folded into ``base``."""
    delta = np.empty(m, dtype=np.float64)
    for i in range(m):
        delta[i] = -2.0 * weights[i]
    s = _float_sum(weights, base, m, np.int64(0))
    a = abs(s)
    inside = np.int64(a < lo)
    out_pos = np.int64(s > hi)
    out_neg = np.int64(s < -hi)
    closed = np.int64(s >= lo)
    total = np.int64(1) << m
    countdown = period
    for t in range(1, total):
        b = _ctz(t, tz)
        s += delta[b]
        delta[b] = -delta[b]
        countdown -= 1
        if countdown == 0:
            s = _float_sum(weights, base, m, t ^ (t >> 1))
            countdown = period
        a = abs(s)
        inside += a < lo
        out_pos += s > hi
        out_neg += s < -hi
        closed += s >= lo
    return inside, out_pos, out_neg, closed


@njit(cache=True, nogil=True)
def naive_float(weights, n, lo, hi):
    inside = np.int64(0)
    out_pos = np.int64(0)
    out_neg = np.int64(0)
    closed = np.int64(0)
    for mask in range(np.int64(1) << n):
        s = _float_sum(weights, 0.0, n, mask)
        a = abs(s)
        inside += a < lo
        out_pos += s > hi
        out_neg += s < -hi
        closed += s >= lo
    return inside, out_pos, out_neg, closed


@njit(cache=True, nogil=True)
def _int_sum(weights, base, m, mask):
    s = base
    for i in range(m):
        if (mask >> i) & 1:
            s -= weights[i]
        else:
            s += weights[i]
    return s


@njit(cache=True, nogil=True)
def gray_exact(weights, base, m, norm_sq, tz):
    delta = np.empty(m, dtype=np.int64)
    for i in range(m):
        delta[i] = -2 * weights[i]
    s = _int_sum(weights, base, m, np.int64(0))
    sq = s * s
    inside = np.int64(sq < norm_sq)
    out_pos = np.int64(s > 0 and sq > norm_sq)
    out_neg = np.int64(s < 0 and sq > norm_sq)
    closed = np.int64(s > 0 and sq >= norm_sq)
    total = np.int64(1) << m
    for t in range(1, total):
        b = _ctz(t, tz)
        s += delta[b]
        delta[b] = -delta[b]
        sq = s * s
        inside += sq < norm_sq
        out_pos += (s > 0) & (sq > norm_sq)
        out_neg += (s < 0) & (sq > norm_sq)
        closed += (s > 0) & (sq >= norm_sq)
    return inside, out_pos, out_neg, closed


@njit(cache=True, nogil=True)
def gray_slack(weights, n, hi, period, tz):
    """Satisfied count (|s| <= hi) and the summed slack max(0, 1 - |s|) over it."""
    delta = np.empty(n, dtype=np.float64)
    for i in range(n):
        delta[i] = -2.0 * weights[i]
    s = _float_sum(weights, 0.0, n, np.int64(0))
    sat = np.int64(0)
    slack = 0.0
    a = abs(s)
    if a <= hi:
        sat += 1
        slack += max(0.0, 1.0 - a)
    countdown = period
    for t in range(1, np.int64(1) << n):
        b = _ctz(t, tz)
        s += delta[b]
        delta[b] = -delta[b]
        countdown -= 1
        if countdown == 0:
            s = _float_sum(weights, 0.0, n, t ^ (t >> 1))
            countdown = period
        a = abs(s)
        if a <= hi:
            sat += 1
            slack += max(0.0, 1.0 - a)
    return sat, slack


@njit(cache=True, nogil=True)
def closed_masks_float(weights, n, lo):
    """All masks with s >= lo, s recomputed from scratch, in increasing order."""
    count = 0
    out = np.empty(16, dtype=np.int64)
    for mask in range(np.int64(1) << n):
        if _float_sum(weights, 0.0, n, mask) >= lo:
            if count == out.shape[0]:
                grown = np.empty(2 * count, dtype=np.int64)
                grown[:count] = out
                out = grown
            out[count] = mask
            count += 1
    return out[:count].copy()


@njit(cache=True, nogil=True)
def closed_masks_exact(weights, n, norm_sq):
    count = 0
    out = np.empty(16, dtype=np.int64)
    for mask in range(np.int64(1) << n):
        s = _int_sum(weights, np.int64(0), n, mask)
        if s > 0 and s * s >= norm_sq:
            if count == out.shape[0]:
                grown = np.empty(2 * count, dtype=np.int64)
                grown[:count] = out
                out = grown
            out[count] = mask
            count += 1
    return out[:count].copy()
