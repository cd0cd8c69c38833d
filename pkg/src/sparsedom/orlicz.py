"""Local Orlicz averages for the Young functions t -> t log^beta(e + t).

``luxemburg_norm(g, Q, beta)`` is the normalized Luxemburg norm

    inf { lam > 0 : (1/|Q|) ∫_Q (|g|/lam) log^beta(e + |g|/lam) <= 1 },

computed by bisection (the modular is continuous and strictly decreasing in
lam wherever it is positive).  beta = 0 collapses to the plain average and is
special-cased so it is exact.  ``mean_r`` is the companion power average
(⟨|g|^r⟩_Q)^(1/r).  Cubes may overhang the domain; missing cells count as 0
in the integral but the normalization always uses the full geometric volume.
"""

from __future__ import annotations

from typing import Optional, Union

import numpy as np

from .grid import Cube, GridFunction, cube_slices

__all__ = [
    "young_phi",
    "orlicz_modular",
    "luxemburg_norm",
    "luxemburg_norm_batch",
    "mean_r",
]

#: bisection stops when the bracket is this tight (relative)
BISECTION_RTOL = 1e-13
_MAX_BISECTION_ITERS = 120


def young_phi(t: np.ndarray, beta: float) -> np.ndarray:
    """phi(t) = t * log^beta(e + t) for t >= 0."""
    t = np.asarray(t, dtype=np.float64)
    if beta == 0.0:
        return t
    return t * np.log(np.e + t) ** beta


def orlicz_modular(
    abs_values: np.ndarray, lam: float, beta: float, n_cells: int
) -> float:
    """(1/|Q|) ∫_Q phi(|g|/lam): mean of phi over n_cells geometric cells."""
    return float(young_phi(abs_values / lam, beta).sum() / n_cells)


def luxemburg_norm_batch(
    abs_rows: np.ndarray,
    beta: float,
    n_cells: Union[int, np.ndarray],
) -> np.ndarray:
    """Luxemburg norms for many cubes at once.

    ``abs_rows`` has one row of nonnegative in-domain cell values per cube
    (zero-padded rows are fine); ``n_cells`` is the geometric cell count per
    cube (scalar or per-row).  Rows that are identically zero get norm 0.
    """
    if beta < 0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    rows = np.asarray(abs_rows, dtype=np.float64)
    if rows.ndim == 1:
        rows = rows[None, :]
    if not np.isfinite(rows).all():
        raise ValueError("non-finite values in Orlicz norm input")
    k = rows.shape[0]
    counts = np.broadcast_to(np.asarray(n_cells, dtype=np.float64), (k,))
    sums = rows.sum(axis=1)
    means = sums / counts
    if beta == 0.0:
        return means  # exact: modular(lam) = mean/lam, norm = mean

    out = np.zeros(k)
    active = sums > 0.0
    if not active.any():
        return out
    sub = rows[active]
    cnt = counts[active]

    maxv = sub.max(axis=1)
    minnz = np.where(sub > 0, sub, np.inf).min(axis=1)
    lo = np.maximum(1e-300, minnz * 1e-6)
    hi = maxv * (1.0 + beta) * 4.0

    def modular(lam: np.ndarray) -> np.ndarray:
        return young_phi(sub / lam[:, None], beta).sum(axis=1) / cnt

    with np.errstate(over="ignore", divide="ignore"):
        # the upper bracket must have modular < 1; widen in the rare miss
        for _ in range(200):
            bad = modular(hi) >= 1.0
            if not bad.any():
                break
            hi[bad] *= 2.0
        # the lower bracket should have modular >= 1; shrink in the rare miss
        for _ in range(200):
            low_bad = modular(lo) < 1.0
            if not low_bad.any():
                break
            lo[low_bad] *= 0.5

        for _ in range(_MAX_BISECTION_ITERS):
            mid = np.sqrt(lo * hi)
            above = modular(mid) > 1.0
            lo = np.where(above, mid, lo)
            hi = np.where(above, hi, mid)
            if np.all((hi - lo) <= BISECTION_RTOL * hi):
                break
    out[active] = hi  # the modular(hi) <= 1 side of the bracket
    return out


def luxemburg_norm(g: GridFunction, cube: Cube, beta: float) -> float:
    """Normalized Luxemburg norm of g over one cube."""
    sl = cube_slices(g.domain, cube)
    if sl is None:
        return 0.0
    vals = np.abs(g.values[sl]).ravel()
    return float(luxemburg_norm_batch(vals, beta, cube.n_cells)[0])


def mean_r(g: GridFunction, cube: Cube, r: float) -> float:
    """(⟨|g|^r⟩_Q)^(1/r) with the full geometric cell count of Q."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    sl = cube_slices(g.domain, cube)
    if sl is None:
        return 0.0
    vals = np.abs(g.values[sl])
    if not np.isfinite(vals).all():
        raise ValueError("non-finite values in power mean input")
    return float(((vals ** r).sum() / cube.n_cells) ** (1.0 / r))
