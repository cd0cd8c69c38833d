"""Muckenhoupt weights on the grid: characteristics and algorithm bricks.

Constants are exact suprema over the cubes of a collection (see
``maximal.CubeCollection``): the A_p product characteristic, the maximal-
function form of A_1, and the Wilson form of A_infty,

    [w]_Ainfty = sup_Q (1/w(Q)) ∫_Q M(w 1_Q),

where the inner maximal operator runs over the same collection.  Also here:
power weights, the reverse Hölder exponent delta = 1 + 1/(2^(11+d) [w]_Ainfty)
with its doubling check, and the Rubio de Francia iteration
R h = sum_k 2^(-k) S^k h / ||S||^k for S h = v^(-1/p) M(h v^(1/p)).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from . import _kernels
from .grid import Domain, GridFunction, lp_norm
from .maximal import CubeCollection, default_policy, hl_maximal, _group_sums, _prefix

__all__ = [
    "Weight",
    "power_weight",
    "ap_constant",
    "a1_constant",
    "ainfty_constant",
    "reverse_holder_delta",
    "reverse_holder_check",
    "reverse_holder_sweep",
    "rubio_de_francia",
    "dual_exponent",
]


def dual_exponent(p: float) -> float:
    """p' = p/(p-1)."""
    if p <= 1:
        raise ValueError("p must exceed 1")
    return p / (p - 1.0)


@dataclass
class Weight:
    """Strictly positive grid function with cached characteristics."""

    func: GridFunction
    _cache: Dict[tuple, float] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        v = self.func.values
        if not np.isfinite(v).all():
            raise ValueError("weight has non-finite values")
        if (v <= 0).any():
            raise ValueError("weight must be strictly positive")

    @property
    def domain(self) -> Domain:
        return self.func.domain

    def sigma(self, p: float) -> "Weight":
        """Dual weight w^(-1/(p-1))."""
        if p <= 1:
            raise ValueError("p must exceed 1")
        return Weight(GridFunction(self.domain, self.func.values ** (-1.0 / (p - 1.0))))


def power_weight(domain: Domain, exponent: float, center: Optional[Tuple[float, ...]] = None) -> Weight:
    """w(x) = max(|x - c|, h/2)^a at cell centers (c defaults to the middle)."""
    if center is None:
        center = tuple(domain.corner[a] + domain.side / 2.0 for a in range(domain.dim))
    h = domain.cell_width
    if domain.dim == 1:
        dist = np.abs(domain.cell_centers(0) - center[0])
    else:
        dx0 = domain.cell_centers(0) - center[0]
        dx1 = domain.cell_centers(1) - center[1]
        dist = np.hypot(dx0[:, None], dx1[None, :])
    dist = np.maximum(dist, h / 2.0)
    return Weight(GridFunction(domain, dist ** exponent))


def _policy_key(policy: CubeCollection) -> tuple:
    return (policy.kind, policy.grid_index, policy.min_side, policy.max_side)


def ap_constant(w: Weight, p: float, policy: Optional[CubeCollection] = None) -> float:
    """[w]_{A_p} = sup_Q <w>_Q <w^(-1/(p-1))>_Q^(p-1)."""
    if p <= 1:
        raise ValueError("p must exceed 1 (use a1_constant for p = 1)")
    policy = policy or default_policy(w.domain)
    key = ("ap", p, _policy_key(policy))
    if key in w._cache:
        return w._cache[key]
    dim = w.domain.dim
    pw = _prefix(w.func.values)
    ps = _prefix(w.sigma(p).func.values)
    best = 0.0
    for grp in policy.groups():
        vol = float(grp.side ** dim)
        mw = _group_sums(pw, grp) / vol
        ms = _group_sums(ps, grp) / vol
        best = max(best, float((mw * ms ** (p - 1.0)).max()))
    w._cache[key] = best
    return best


def a1_constant(w: Weight, policy: Optional[CubeCollection] = None) -> float:
    """[w]_{A_1} = sup_x M w(x) / w(x) over the policy cubes."""
    policy = policy or default_policy(w.domain)
    key = ("a1", _policy_key(policy))
    if key in w._cache:
        return w._cache[key]
    m = hl_maximal(w.func, policy)
    best = float((m.values / w.func.values).max())
    w._cache[key] = best
    return best


def _wilson_dyadic(w: Weight, policy: CubeCollection) -> float:
    """Wilson functional over one shifted grid's contained dyadic cubes.

    Within a single grid the inner maximal reduces exactly to nested cubes:
    clipped coarser cubes are dominated by the cube itself, so a fine-to-
    coarse running max of per-level mean maps gives M(w 1_Q) on Q.
    """
    a = w.func.values
    pw = _prefix(a)
    groups = sorted(policy.groups(), key=lambda g: g.side)
    sup_map = np.full(a.shape, -np.inf)
    best = 0.0
    for grp in groups:
        s = grp.side
        vol = float(s ** w.domain.dim)
        sums = _group_sums(pw, grp)
        means = sums / vol
        if w.domain.dim == 1:
            c = grp.axis_corners[0]
            lo, hi = int(c[0]), int(c[-1]) + s
            view = sup_map[lo:hi].reshape(-1, s)
            np.maximum(view, means[:, None], out=view)
            cube_sums = sup_map[lo:hi].reshape(-1, s).sum(axis=1)
        else:
            c0, c1 = grp.axis_corners
            lo0, hi0 = int(c0[0]), int(c0[-1]) + s
            lo1, hi1 = int(c1[0]), int(c1[-1]) + s
            view = sup_map[lo0:hi0, lo1:hi1].reshape(len(c0), s, len(c1), s)
            np.maximum(view, means[:, None, :, None], out=view)
            cube_sums = view.sum(axis=(1, 3))
        best = max(best, float((cube_sums / sums).max()))
    return best


def _wilson_shifted(w: Weight, policy: CubeCollection) -> float:
    """Wilson functional over the union of all shifted grids (cross-grid
    intersections evaluated exactly via rectangle prefix sums)."""
    dom = w.domain
    n = dom.cells_per_side
    a = w.func.values
    pw = _prefix(a)
    sides = np.array([1 << j for j in range(dom.depth, -1, -1)], dtype=np.int64)
    from .grid import shifted_grids

    grids = shifted_grids(dom)
    if dom.dim == 1:
        shifts = np.zeros((len(grids), len(sides)), dtype=np.int64)
        for gi, g in enumerate(grids):
            for k, s in enumerate(sides):
                shifts[gi, k] = g.shift_for_side(int(s))[0]
    else:
        shifts = np.zeros((len(grids), len(sides), 2), dtype=np.int64)
        for gi, g in enumerate(grids):
            for k, s in enumerate(sides):
                shifts[gi, k, 0], shifts[gi, k, 1] = g.shift_for_side(int(s))
    best = 0.0
    for gi, g in enumerate(grids):
        sub = CubeCollection(dom, "dyadic", gi)
        groups = sorted(sub.groups(), key=lambda grp: grp.side)
        sup_map = np.full(a.shape, -np.inf)
        for grp in groups:
            s = grp.side
            vol = float(s ** dom.dim)
            sums = _group_sums(pw, grp)
            means = sums / vol
            if dom.dim == 1:
                c = grp.axis_corners[0]
                lo, hi = int(c[0]), int(c[-1]) + s
                view = sup_map[lo:hi].reshape(-1, s)
                np.maximum(view, means[:, None], out=view)
                scratch = np.zeros(s)
                for ci, corner in enumerate(c):
                    _kernels.cross_grid_paint_1d(
                        pw, int(corner), s, n, sides, shifts, gi, scratch
                    )
                    m = np.maximum(sup_map[corner : corner + s], scratch)
                    best = max(best, float(m.sum() / sums[ci]))
            else:
                c0, c1 = grp.axis_corners
                lo0, hi0 = int(c0[0]), int(c0[-1]) + s
                lo1, hi1 = int(c1[0]), int(c1[-1]) + s
                view = sup_map[lo0:hi0, lo1:hi1].reshape(len(c0), s, len(c1), s)
                np.maximum(view, means[:, None, :, None], out=view)
                scratch = np.zeros((s, s))
                for i0, corner0 in enumerate(c0):
                    for i1, corner1 in enumerate(c1):
                        _kernels.cross_grid_paint_2d(
                            pw, int(corner0), int(corner1), s, n, sides, shifts, gi, scratch
                        )
                        m = np.maximum(
                            sup_map[corner0 : corner0 + s, corner1 : corner1 + s],
                            scratch,
                        )
                        best = max(best, float(m.sum() / sums[i0, i1]))
    return best


def ainfty_constant(w: Weight, policy: Optional[CubeCollection] = None) -> float:
    """[w]_{A_infty}: Wilson functional, inner maximal over the same cubes."""
    policy = policy or default_policy(w.domain)
    key = ("ainfty", _policy_key(policy))
    if key in w._cache:
        return w._cache[key]
    if policy.kind == "all":
        if w.domain.dim != 1:
            raise ValueError(
                "the all-squares Wilson functional is quartic in resolution; "
                "use a dyadic or shifted policy in dim 2"
            )
        best = float(_kernels.wilson_all_intervals_1d(w.func.values).max())
    elif policy.kind == "dyadic":
        best = _wilson_dyadic(w, policy)
    else:
        best = _wilson_shifted(w, policy)
    w._cache[key] = best
    return best


def reverse_holder_delta(w: Weight, policy: Optional[CubeCollection] = None) -> float:
    """The proven-safe exponent 1 + 1/(2^(11+d) [w]_Ainfty)."""
    return 1.0 + 1.0 / (2.0 ** (11 + w.domain.dim) * ainfty_constant(w, policy))


def reverse_holder_check(
    w: Weight,
    cube,
    delta: Optional[float] = None,
    policy: Optional[CubeCollection] = None,
) -> Dict[str, float]:
    """Test (<w^delta>_Q)^(1/delta) <= 2 <w>_Q on one cube.

    Returns both sides and a pass flag; delta defaults to the proven-safe
    exponent (which requires the A_infty constant, computed on the policy).
    """
    from .grid import cube_slices

    if delta is None:
        delta = reverse_holder_delta(w, policy)
    if delta <= 1.0:
        raise ValueError("delta must exceed 1")
    sl = cube_slices(w.domain, cube)
    if sl is None:
        raise ValueError("cube does not meet the domain")
    vals = w.func.values[sl]
    vol = float(cube.n_cells)
    lhs = float((vals ** delta).sum() / vol) ** (1.0 / delta)
    rhs = 2.0 * float(vals.sum() / vol)
    return {"delta": float(delta), "lhs": lhs, "rhs": rhs, "passed": float(lhs <= rhs)}


def reverse_holder_sweep(
    w: Weight,
    delta: Optional[float] = None,
    policy: Optional[CubeCollection] = None,
) -> Dict[str, float]:
    """reverse_holder_check over every policy cube; worst ratio and failures."""
    policy = policy or default_policy(w.domain)
    if delta is None:
        delta = reverse_holder_delta(w, policy)
    if delta <= 1.0:
        raise ValueError("delta must exceed 1")
    dim = w.domain.dim
    pw = _prefix(w.func.values)
    pd = _prefix(w.func.values ** delta)
    worst = 0.0
    failures = 0
    n_cubes = 0
    for grp in policy.groups():
        vol = float(grp.side ** dim)
        mw = _group_sums(pw, grp) / vol
        md = (_group_sums(pd, grp) / vol) ** (1.0 / delta)
        ratio = md / (2.0 * mw)
        worst = max(worst, float(ratio.max()))
        failures += int((ratio > 1.0).sum())
        n_cubes += ratio.size
    return {
        "delta": float(delta),
        "max_ratio": worst,
        "failures": float(failures),
        "n_cubes": float(n_cubes),
    }


def rubio_de_francia(
    h: GridFunction,
    v: Weight,
    p: float,
    K: int = 40,
    policy: Optional[CubeCollection] = None,
    details: bool = False,
):
    """Iterated-maximal majorant R h = sum_{k<=K} 2^(-k) S^k h / mu_k.

    S h = v^(-1/p) M(h v^(1/p)) is the maximal operator conjugated into
    L^p(v).  Each term is normalized by the running maximum mu_k of the
    observed growth factors ||S^j h|| / ||S^(j-1) h|| for j <= k, so
    ||S^k h|| <= mu_k^k ||h|| holds by construction and the series obeys
    ||R h||_{L^p(v)} <= 2 ||h||_{L^p(v)} with no estimated operator norm.
    Prefix maxima leave earlier terms untouched, so R h only grows with K,
    and the whole construction is deterministic in h.

    With ``details`` the final growth bound and the norm of the last
    retained term (at most 2^-K ||h||) are returned alongside.
    """
    if p <= 1:
        raise ValueError("p must exceed 1")
    if (h.values < 0).any():
        raise ValueError("the majorant construction needs h >= 0")
    if K < 1:
        raise ValueError("K must be >= 1")
    policy = policy or default_policy(h.domain)
    vp = v.func.values ** (1.0 / p)
    vmp = v.func.values ** (-1.0 / p)

    def s_apply(x: np.ndarray) -> np.ndarray:
        return vmp * hl_maximal(GridFunction(h.domain, x * vp), policy).values

    def norm_pv(x: np.ndarray) -> float:
        return lp_norm(GridFunction(h.domain, x), p, v.func)

    acc = h.values.copy()
    norm_h = norm_pv(acc)
    mu = 0.0
    weight = 1.0
    if norm_h > 0.0:
        # iterate on unit-norm fields; S is positively homogeneous
        u = h.values / norm_h
        norm_u = 1.0
        for _ in range(K):
            y = s_apply(u)
            norm_y = norm_pv(y)
            mu = max(mu, norm_y / norm_u)
            weight *= norm_y / (2.0 * mu * norm_u)
            u, norm_u = y, norm_y
            acc += (weight * norm_h / norm_u) * u
    r = GridFunction(h.domain, acc)
    if not details:
        return r
    return r, {
        "s_norm": float(mu),
        "terms": int(K),
        "tail_term_norm": float(weight * norm_h),
    }
