"""Numba inner loops: dense quadrature applications and cube sweeps.

Summation order inside every output cell is a fixed row-major scan of the
source cells, and parallel loops only ever split independent outputs, so all
results are bit-for-bit reproducible regardless of thread count.

Kernel tables are indexed by cell offset: ``tab[dx + n - 1]`` (1d) or
``tab[dx0 + n - 1, dx1 + n - 1]`` (2d) holds Omega(delta/|delta|)/|delta|^d
for offset delta in cells; the cell-volume factor of the quadrature cancels
against |x - y|^(-d) exactly, so tables are resolution-free.

Source sets are parameterized as (box A ∩ domain) ∖ box B, which covers every
mask the decomposition engine needs; boxes are [lo, hi) per axis in cells.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

__all__ = [
    "apply_full_1d",
    "apply_full_2d",
    "apply_box_1d",
    "apply_box_2d",
    "node_values_1d",
    "node_values_2d",
    "wilson_all_intervals_1d",
    "cross_grid_paint_1d",
    "cross_grid_paint_2d",
]


@njit(cache=True)
def apply_full_1d(tab: np.ndarray, f: np.ndarray) -> np.ndarray:
    n = f.shape[0]
    out = np.zeros(n)
    for i in range(n):
        acc = 0.0
        for j in range(n):
            acc += tab[i - j + n - 1] * f[j]
        out[i] = acc
    return out


@njit(cache=True, parallel=True)
def apply_full_2d(tab: np.ndarray, f: np.ndarray) -> np.ndarray:
    n = f.shape[0]
    out = np.zeros((n, n))
    for i0 in prange(n):
        for i1 in range(n):
            acc = 0.0
            for j0 in range(n):
                for j1 in range(n):
                    acc += tab[i0 - j0 + n - 1, i1 - j1 + n - 1] * f[j0, j1]
            out[i0, i1] = acc
    return out


@njit(cache=True)
def apply_box_1d(
    tab: np.ndarray,
    f: np.ndarray,
    a_lo: int,
    a_hi: int,
    b_lo: int,
    b_hi: int,
    o_lo: int,
    o_hi: int,
) -> np.ndarray:
    """Quadrature with source (A ∩ domain) ∖ B, output on [o_lo, o_hi)."""
    n = f.shape[0]
    ylo = max(a_lo, 0)
    yhi = min(a_hi, n)
    out = np.zeros(o_hi - o_lo)
    for i in range(o_lo, o_hi):
        acc = 0.0
        for y in range(ylo, yhi):
            if b_lo <= y < b_hi:
                continue
            acc += tab[i - y + n - 1] * f[y]
        out[i - o_lo] = acc
    return out


@njit(cache=True)
def apply_box_2d(
    tab: np.ndarray,
    f: np.ndarray,
    a0_lo: int,
    a0_hi: int,
    a1_lo: int,
    a1_hi: int,
    b0_lo: int,
    b0_hi: int,
    b1_lo: int,
    b1_hi: int,
    o0_lo: int,
    o0_hi: int,
    o1_lo: int,
    o1_hi: int,
) -> np.ndarray:
    n = f.shape[0]
    y0lo = max(a0_lo, 0)
    y0hi = min(a0_hi, n)
    y1lo = max(a1_lo, 0)
    y1hi = min(a1_hi, n)
    out = np.zeros((o0_hi - o0_lo, o1_hi - o1_lo))
    for i0 in range(o0_lo, o0_hi):
        for i1 in range(o1_lo, o1_hi):
            acc = 0.0
            for y0 in range(y0lo, y0hi):
                in_b0 = b0_lo <= y0 < b0_hi
                for y1 in range(y1lo, y1hi):
                    if in_b0 and b1_lo <= y1 < b1_hi:
                        continue
                    acc += tab[i0 - y0 + n - 1, i1 - y1 + n - 1] * f[y0, y1]
            out[i0 - o0_lo, i1 - o1_lo] = acc
    return out


@njit(cache=True, parallel=True)
def node_values_1d(
    k1: np.ndarray,
    k2: np.ndarray,
    f: np.ndarray,
    u9: np.ndarray,
    t1u9: np.ndarray,
    q3_lo: int,
    q3_hi: int,
    lo_arr: np.ndarray,
    side_arr: np.ndarray,
    rp: float,
    nz_lo: int,
    nz_hi: int,
):
    """Per-cube truncation functionals for one decomposition node (1d).

    For each candidate cube Q' = [lo, lo+s) inside the node Q0:

      e2 = mean-r' over Q' of  T2(f · 1_{3Q0 ∖ 3Q'})
      e3 = mean-r' over Q' of  T1(1_{comp 3Q'} · T2(f · 1_{9Q0 ∖ 9Q'}))

    where f is already cut to 9Q0, u9 = T2 f, t1u9 = T1 u9 and [nz_lo, nz_hi)
    bounds the support of f.  Uses T2(f·1_{9Q0∖9Q'}) = u9 - T2(f·1_{9Q'}).
    """
    n = f.shape[0]
    m = lo_arr.shape[0]
    e2 = np.zeros(m)
    e3 = np.zeros(m)
    for ci in prange(m):
        lo = lo_arr[ci]
        s = side_arr[ci]
        hi = lo + s
        t3lo = lo - s
        t3hi = hi + s
        t9lo = lo - 4 * s
        t9hi = hi + 5 * s

        acc2 = 0.0
        ylo = max(q3_lo, 0)
        yhi = min(q3_hi, n)
        for x in range(lo, hi):
            acc = 0.0
            for y in range(ylo, yhi):
                if t3lo <= y < t3hi:
                    continue
                acc += k2[x - y + n - 1] * f[y]
            acc2 += abs(acc) ** rp
        e2[ci] = (acc2 / s) ** (1.0 / rp)

        zlo = max(max(t9lo, 0), nz_lo)
        zhi = min(min(t9hi, n), nz_hi)
        have_wq = zlo < zhi
        wq = np.zeros(n)
        if have_wq:
            for y in range(n):
                if t3lo <= y < t3hi:
                    continue
                acc = 0.0
                for z in range(zlo, zhi):
                    acc += k2[y - z + n - 1] * f[z]
                wq[y] = acc

        acc3 = 0.0
        y3lo = max(t3lo, 0)
        y3hi = min(t3hi, n)
        for x in range(lo, hi):
            acc = t1u9[x]
            for y in range(y3lo, y3hi):
                acc -= k1[x - y + n - 1] * u9[y]
            if have_wq:
                for y in range(n):
                    if t3lo <= y < t3hi:
                        continue
                    acc -= k1[x - y + n - 1] * wq[y]
            acc3 += abs(acc) ** rp
        e3[ci] = (acc3 / s) ** (1.0 / rp)
    return e2, e3


@njit(cache=True, parallel=True)
def node_values_2d(
    k1: np.ndarray,
    k2: np.ndarray,
    f: np.ndarray,
    u9: np.ndarray,
    t1u9: np.ndarray,
    q3_lo0: int,
    q3_hi0: int,
    q3_lo1: int,
    q3_hi1: int,
    lo0_arr: np.ndarray,
    lo1_arr: np.ndarray,
    side_arr: np.ndarray,
    rp: float,
    nz_lo0: int,
    nz_hi0: int,
    nz_lo1: int,
    nz_hi1: int,
):
    """2d analog of node_values_1d (see that docstring)."""
    n = f.shape[0]
    m = lo0_arr.shape[0]
    e2 = np.zeros(m)
    e3 = np.zeros(m)
    y0lo_a = max(q3_lo0, 0)
    y0hi_a = min(q3_hi0, n)
    y1lo_a = max(q3_lo1, 0)
    y1hi_a = min(q3_hi1, n)
    for ci in prange(m):
        lo0 = lo0_arr[ci]
        lo1 = lo1_arr[ci]
        s = side_arr[ci]
        hi0 = lo0 + s
        hi1 = lo1 + s
        t3lo0 = lo0 - s
        t3hi0 = hi0 + s
        t3lo1 = lo1 - s
        t3hi1 = hi1 + s
        t9lo0 = lo0 - 4 * s
        t9hi0 = hi0 + 5 * s
        t9lo1 = lo1 - 4 * s
        t9hi1 = hi1 + 5 * s

        acc2 = 0.0
        for x0 in range(lo0, hi0):
            for x1 in range(lo1, hi1):
                acc = 0.0
                for y0 in range(y0lo_a, y0hi_a):
                    in30 = t3lo0 <= y0 < t3hi0
                    for y1 in range(y1lo_a, y1hi_a):
                        if in30 and t3lo1 <= y1 < t3hi1:
                            continue
                        acc += k2[x0 - y0 + n - 1, x1 - y1 + n - 1] * f[y0, y1]
                acc2 += abs(acc) ** rp
        e2[ci] = (acc2 / (s * s)) ** (1.0 / rp)

        z0lo = max(max(t9lo0, 0), nz_lo0)
        z0hi = min(min(t9hi0, n), nz_hi0)
        z1lo = max(max(t9lo1, 0), nz_lo1)
        z1hi = min(min(t9hi1, n), nz_hi1)
        have_wq = (z0lo < z0hi) and (z1lo < z1hi)
        wq = np.zeros((n, n))
        if have_wq:
            for y0 in range(n):
                in30 = t3lo0 <= y0 < t3hi0
                for y1 in range(n):
                    if in30 and t3lo1 <= y1 < t3hi1:
                        continue
                    acc = 0.0
                    for z0 in range(z0lo, z0hi):
                        for z1 in range(z1lo, z1hi):
                            acc += k2[y0 - z0 + n - 1, y1 - z1 + n - 1] * f[z0, z1]
                    wq[y0, y1] = acc

        acc3 = 0.0
        y30lo = max(t3lo0, 0)
        y30hi = min(t3hi0, n)
        y31lo = max(t3lo1, 0)
        y31hi = min(t3hi1, n)
        for x0 in range(lo0, hi0):
            for x1 in range(lo1, hi1):
                acc = t1u9[x0, x1]
                for y0 in range(y30lo, y30hi):
                    in30 = t3lo0 <= y0 < t3hi0
                    for y1 in range(y31lo, y31hi):
                        if in30 and t3lo1 <= y1 < t3hi1:
                            acc -= k1[x0 - y0 + n - 1, x1 - y1 + n - 1] * u9[y0, y1]
                if have_wq:
                    for y0 in range(n):
                        in30 = t3lo0 <= y0 < t3hi0
                        for y1 in range(n):
                            if in30 and t3lo1 <= y1 < t3hi1:
                                continue
                            acc -= k1[x0 - y0 + n - 1, x1 - y1 + n - 1] * wq[y0, y1]
                acc3 += abs(acc) ** rp
        e3[ci] = (acc3 / (s * s)) ** (1.0 / rp)
    return e2, e3


@njit(cache=True, parallel=True)
def wilson_all_intervals_1d(w: np.ndarray) -> np.ndarray:
    """Per-left-endpoint maxima of the Wilson functional over all intervals.

    For every interval Q = [i, e) the functional is
    (1/w(Q)) * sum_{x in Q} max over subintervals of Q containing x of the
    w-average; subintervals of Q are exactly the collection cubes whose
    intersection with Q the global maximal operator sees.  Returns an array
    over i of the max over e; the caller takes the overall max.
    """
    n = w.shape[0]
    pref = np.zeros(n + 1)
    for i in range(n):
        pref[i + 1] = pref[i] + w[i]
    per_left = np.zeros(n)
    for i in prange(n):
        m = np.zeros(n)
        best = 0.0
        for e in range(i + 1, n + 1):
            run = -1.0e300
            msum = 0.0
            for x in range(i, e):
                cand = (pref[e] - pref[x]) / (e - x)
                if cand > run:
                    run = cand
                if run > m[x]:
                    m[x] = run
                msum += m[x]
            val = msum / (pref[e] - pref[i])
            if val > best:
                best = val
        per_left[i] = best
    return per_left


@njit(cache=True)
def cross_grid_paint_1d(
    prefw: np.ndarray,
    q_lo: int,
    q_s: int,
    n: int,
    sides: np.ndarray,
    shifts: np.ndarray,
    skip_grid: int,
    scratch: np.ndarray,
) -> None:
    """Paint max of w(R ∩ Q)/|R| over cross-grid cubes R onto Q's cells (1d).

    ``shifts[g, k]`` is the corner offset of grid g at side ``sides[k]``;
    only cubes fully inside [0, n) participate (collection convention).
    """
    for x in range(q_s):
        scratch[x] = 0.0
    q_hi = q_lo + q_s
    for g in range(shifts.shape[0]):
        if g == skip_grid:
            continue
        for k in range(sides.shape[0]):
            s = sides[k]
            t = shifts[g, k]
            a_lo = (q_lo - t - s + 1) // s
            a_hi = (q_hi - 1 - t) // s
            for a in range(a_lo, a_hi + 1):
                r_lo = a * s + t
                r_hi = r_lo + s
                if r_lo < 0 or r_hi > n:
                    continue
                c_lo = max(r_lo, q_lo)
                c_hi = min(r_hi, q_hi)
                if c_lo >= c_hi:
                    continue
                val = (prefw[c_hi] - prefw[c_lo]) / s
                for x in range(c_lo, c_hi):
                    if val > scratch[x - q_lo]:
                        scratch[x - q_lo] = val


@njit(cache=True)
def cross_grid_paint_2d(
    prefw: np.ndarray,
    q_lo0: int,
    q_lo1: int,
    q_s: int,
    n: int,
    sides: np.ndarray,
    shifts: np.ndarray,
    skip_grid: int,
    scratch: np.ndarray,
) -> None:
    """2d analog of cross_grid_paint_1d; prefw is the 2d inclusive prefix sum."""
    for x0 in range(q_s):
        for x1 in range(q_s):
            scratch[x0, x1] = 0.0
    q_hi0 = q_lo0 + q_s
    q_hi1 = q_lo1 + q_s
    for g in range(shifts.shape[0]):
        if g == skip_grid:
            continue
        for k in range(sides.shape[0]):
            s = sides[k]
            t0 = shifts[g, k, 0]
            t1 = shifts[g, k, 1]
            a0_lo = (q_lo0 - t0 - s + 1) // s
            a0_hi = (q_hi0 - 1 - t0) // s
            a1_lo = (q_lo1 - t1 - s + 1) // s
            a1_hi = (q_hi1 - 1 - t1) // s
            area = float(s * s)
            for a0 in range(a0_lo, a0_hi + 1):
                r_lo0 = a0 * s + t0
                r_hi0 = r_lo0 + s
                if r_lo0 < 0 or r_hi0 > n:
                    continue
                c_lo0 = max(r_lo0, q_lo0)
                c_hi0 = min(r_hi0, q_hi0)
                if c_lo0 >= c_hi0:
                    continue
                for a1 in range(a1_lo, a1_hi + 1):
                    r_lo1 = a1 * s + t1
                    r_hi1 = r_lo1 + s
                    if r_lo1 < 0 or r_hi1 > n:
                        continue
                    c_lo1 = max(r_lo1, q_lo1)
                    c_hi1 = min(r_hi1, q_hi1)
                    if c_lo1 >= c_hi1:
                        continue
                    wsum = (
                        prefw[c_hi0, c_hi1]
                        - prefw[c_lo0, c_hi1]
                        - prefw[c_hi0, c_lo1]
                        + prefw[c_lo0, c_lo1]
                    )
                    val = wsum / area
                    for x0 in range(c_lo0, c_hi0):
                        for x1 in range(c_lo1, c_hi1):
                            if val > scratch[x0 - q_lo0, x1 - q_lo1]:
                                scratch[x0 - q_lo0, x1 - q_lo1] = val
