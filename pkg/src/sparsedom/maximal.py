"""Maximal operators over configurable cube collections.

A ``CubeCollection`` names the cubes a maximal operator sups over: every
grid-aligned cube ("all"), the dyadic cubes of one shifted grid ("dyadic"),
or the dyadic cubes of all 3**dim one-third-shifted grids ("shifted").  Only
cubes fully contained in the domain participate; collections are lattice
products per (grid, side) group, which keeps every operator a dense
vectorized sweep.

Operators: the Hardy-Littlewood maximal function, its power variant
(M |f|^t)^(1/t), the Orlicz maximal function built from local Luxemburg
norms, stopping-time cube selection at a norm threshold, and the grand
maximal truncations sup_Q of T applied outside a dilate of Q (single
operator and composed pair).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy import ndimage

from .grid import (
    Cube,
    Domain,
    GridFunction,
    ShiftedDyadicGrid,
    cube_slices,
    shifted_grids,
)
from .orlicz import luxemburg_norm, luxemburg_norm_batch

__all__ = [
    "CubeCollection",
    "default_policy",
    "hl_maximal",
    "m_beta",
    "m_llogl",
    "stopping_cubes",
    "grand_maximal",
    "grand_maximal_composite",
]


class PolicyGroup(NamedTuple):
    grid_index: int
    side: int
    axis_corners: Tuple[np.ndarray, ...]


@dataclass(frozen=True)
class CubeCollection:
    """Enumeration policy for maximal-operator cube families."""

    domain: Domain
    kind: str = "all"
    grid_index: int = 0
    min_side: int = 1
    max_side: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in ("all", "dyadic", "shifted"):
            raise ValueError(f"unknown cube collection kind {self.kind!r}")
        if self.kind == "dyadic" and not (
            0 <= self.grid_index < 3 ** self.domain.dim
        ):
            raise ValueError("grid_index out of range")

    def _side_ok(self, side: int) -> bool:
        hi = self.max_side if self.max_side is not None else self.domain.cells_per_side
        return self.min_side <= side <= hi

    def groups(self) -> List[PolicyGroup]:
        n = self.domain.cells_per_side
        dim = self.domain.dim
        out: List[PolicyGroup] = []
        if self.kind == "all":
            for side in range(1, n + 1):
                if not self._side_ok(side):
                    continue
                corners = np.arange(n - side + 1, dtype=np.int64)
                out.append(PolicyGroup(0, side, (corners,) * dim))
            return out
        grids = shifted_grids(self.domain)
        chosen = [grids[self.grid_index]] if self.kind == "dyadic" else grids
        for g in chosen:
            for j in range(self.domain.depth + 1):
                side = 1 << j
                if not self._side_ok(side):
                    continue
                t = g.shift_for_side(side)
                axes = []
                for a in range(dim):
                    lo = -(t[a] // side)  # first k with k*side + t >= 0
                    hi = (n - side - t[a]) // side  # last fully contained
                    if hi < lo:
                        axes = []
                        break
                    axes.append(
                        (np.arange(lo, hi + 1, dtype=np.int64) * side + t[a])
                    )
                if axes:
                    out.append(PolicyGroup(g.index, side, tuple(axes)))
        return out

    def cubes(self) -> List[Cube]:
        out: List[Cube] = []
        for grp in self.groups():
            if self.domain.dim == 1:
                for c0 in grp.axis_corners[0]:
                    out.append(Cube((int(c0),), grp.side, grp.grid_index))
            else:
                for c0 in grp.axis_corners[0]:
                    for c1 in grp.axis_corners[1]:
                        out.append(Cube((int(c0), int(c1)), grp.side, grp.grid_index))
        return out


def default_policy(domain: Domain) -> CubeCollection:
    """All grid-aligned cubes in dim 1, shifted dyadic cubes in dim 2."""
    return CubeCollection(domain, "all" if domain.dim == 1 else "shifted")


def _prefix(values: np.ndarray) -> np.ndarray:
    """Inclusive-exclusive prefix sums with a leading zero per axis."""
    if values.ndim == 1:
        out = np.zeros(values.shape[0] + 1)
        np.cumsum(values, out=out[1:])
        return out
    out = np.zeros((values.shape[0] + 1, values.shape[1] + 1))
    out[1:, 1:] = values.cumsum(axis=0).cumsum(axis=1)
    return out


def _group_sums(pref: np.ndarray, grp: PolicyGroup) -> np.ndarray:
    """Cube sums for one lattice-product group via prefix lookups."""
    s = grp.side
    if pref.ndim == 1:
        c = grp.axis_corners[0]
        return pref[c + s] - pref[c]
    c0, c1 = grp.axis_corners
    return (
        pref[np.ix_(c0 + s, c1 + s)]
        - pref[np.ix_(c0, c1 + s)]
        - pref[np.ix_(c0 + s, c1)]
        + pref[np.ix_(c0, c1)]
    )


def _paint_group_max(acc: np.ndarray, grp: PolicyGroup, vals: np.ndarray) -> None:
    """acc <- max(acc, cube value) on each cube's cells for one group.

    "all" groups have dense corner lattices and use a trailing-window maximum
    filter; dyadic groups tile their span and paint by block repetition.
    """
    s = grp.side
    n = acc.shape[0]
    dense = len(grp.axis_corners[0]) == n - s + 1 and (
        n - s == 0 or grp.axis_corners[0][0] == 0
    )
    if dense and s > 1:
        # positive origin moves the window toward smaller indices, giving the
        # trailing range [i-s+1, i] over cube corners
        if acc.ndim == 1:
            padded = np.full(n, -np.inf)
            padded[: n - s + 1] = vals
            filt = ndimage.maximum_filter1d(
                padded, size=s, mode="constant", cval=-np.inf, origin=(s - 1) // 2
            )
        else:
            padded = np.full((n, n), -np.inf)
            padded[: n - s + 1, : n - s + 1] = vals
            filt = ndimage.maximum_filter(
                padded, size=s, mode="constant", cval=-np.inf, origin=(s - 1) // 2
            )
        np.maximum(acc, filt, out=acc)
        return
    if dense and s == 1:
        np.maximum(acc, vals, out=acc)
        return
    if acc.ndim == 1:
        c = grp.axis_corners[0]
        lo, hi = int(c[0]), int(c[-1]) + s
        np.maximum(acc[lo:hi], np.repeat(vals, s), out=acc[lo:hi])
    else:
        c0, c1 = grp.axis_corners
        lo0, hi0 = int(c0[0]), int(c0[-1]) + s
        lo1, hi1 = int(c1[0]), int(c1[-1]) + s
        block = np.repeat(np.repeat(vals, s, axis=0), s, axis=1)
        np.maximum(acc[lo0:hi0, lo1:hi1], block, out=acc[lo0:hi0, lo1:hi1])


def hl_maximal(f: GridFunction, policy: Optional[CubeCollection] = None) -> GridFunction:
    """Hardy-Littlewood maximal function over the policy cubes."""
    policy = policy or default_policy(f.domain)
    a = np.abs(f.values)
    pref = _prefix(a)
    acc = np.zeros_like(a)
    for grp in policy.groups():
        vals = _group_sums(pref, grp) / float(grp.side ** f.domain.dim)
        _paint_group_max(acc, grp, vals)
    return GridFunction(f.domain, acc)


def m_beta(
    f: GridFunction, beta: float, policy: Optional[CubeCollection] = None
) -> GridFunction:
    """(M |f|^beta)^(1/beta) for beta >= 1."""
    if beta < 1:
        raise ValueError("beta must be >= 1")
    powered = GridFunction(f.domain, np.abs(f.values) ** beta)
    m = hl_maximal(powered, policy)
    return GridFunction(f.domain, m.values ** (1.0 / beta))


def m_llogl(
    f: GridFunction, beta: float, policy: Optional[CubeCollection] = None
) -> GridFunction:
    """Pointwise sup of local Luxemburg norms ||f||_{L(log L)^beta, Q}."""
    policy = policy or default_policy(f.domain)
    dom = f.domain
    if dom.dim == 2 and policy.kind == "all":
        raise ValueError(
            "the Orlicz maximal over all squares is quartic in resolution; "
            "use a dyadic or shifted policy in dim 2"
        )
    if beta == 0.0:
        return hl_maximal(f, policy)
    a = np.abs(f.values)
    acc = np.zeros_like(a)
    for grp in policy.groups():
        s = grp.side
        if dom.dim == 1:
            rows = np.lib.stride_tricks.sliding_window_view(a, s)[grp.axis_corners[0]]
        else:
            wins = np.lib.stride_tricks.sliding_window_view(a, (s, s))
            rows = wins[np.ix_(grp.axis_corners[0], grp.axis_corners[1])].reshape(
                len(grp.axis_corners[0]) * len(grp.axis_corners[1]), s * s
            )
        norms = luxemburg_norm_batch(rows.reshape(-1, s ** dom.dim), beta, s ** dom.dim)
        if dom.dim == 2:
            norms = norms.reshape(len(grp.axis_corners[0]), len(grp.axis_corners[1]))
        _paint_group_max(acc, grp, norms)
    return GridFunction(f.domain, acc)


def _forest_roots(grid: ShiftedDyadicGrid) -> List[Cube]:
    """Maximal domain-contained cubes of one shifted grid."""
    n = grid.domain.cells_per_side
    roots: List[Cube] = []
    for j in range(grid.domain.depth, -1, -1):
        side = 1 << j
        for cube in grid.cubes_at_side(side):
            lo_ok = all(c >= 0 for c in cube.corner)
            hi_ok = all(c + side <= n for c in cube.corner)
            if not (lo_ok and hi_ok):
                continue
            if any(r.contains_cube(cube) for r in roots):
                continue
            roots.append(cube)
    return roots


def stopping_cubes(
    f: GridFunction,
    beta: float,
    grid: Optional[ShiftedDyadicGrid] = None,
    threshold: float = 1.0,
) -> List[Cube]:
    """Maximal dyadic cubes with local Luxemburg norm above the threshold.

    Descends each tree of the grid's domain-contained forest; the forest
    roots themselves must sit at or below the threshold, otherwise the
    selection cannot start and a ``decomposition saturated`` error is raised.
    """
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    grid = grid or shifted_grids(f.domain)[0]
    selected: List[Cube] = []

    def descend(cube: Cube) -> None:
        if cube.side_cells == 1:
            return
        half = cube.side_cells // 2
        for bits in range(1 << f.domain.dim):
            off = tuple(half * ((bits >> a) & 1) for a in range(f.domain.dim))
            child = Cube(
                tuple(cube.corner[a] + off[a] for a in range(f.domain.dim)),
                half,
                cube.grid_index,
            )
            if luxemburg_norm(f, child, beta) > threshold:
                selected.append(child)
            else:
                descend(child)

    for root in _forest_roots(grid):
        if luxemburg_norm(f, root, beta) > threshold:
            raise ValueError(
                "decomposition saturated: a forest root already exceeds the threshold"
            )
        descend(root)
    return selected


def _op_apply_box(op, values: np.ndarray, src_excl, out_box) -> np.ndarray:
    """T(values restricted off src_excl) on out_box, via the fast path if any."""
    if hasattr(op, "apply_box"):
        return op.apply_box(values, None, src_excl, out_box)
    dom = op.domain
    masked = values.copy()
    if src_excl is not None:
        sl = tuple(
            slice(max(lo, 0), min(hi, dom.cells_per_side)) for lo, hi in src_excl
        )
        if all(s.start < s.stop for s in sl):
            masked[sl] = 0.0
    full = op.apply(GridFunction(dom, masked)).values
    return full[tuple(slice(lo, hi) for lo, hi in out_box)]


def _cube_boxes(cube: Cube) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
    """(Q, 3Q, 9Q) as per-axis [lo, hi) boxes."""
    s = cube.side_cells
    q = tuple((c, c + s) for c in cube.corner)
    q3 = tuple((c - s, c + 2 * s) for c in cube.corner)
    q9 = tuple((c - 4 * s, c + 5 * s) for c in cube.corner)
    return q, q3, q9


def grand_maximal(
    op,
    f: GridFunction,
    r: float,
    policy: Optional[CubeCollection] = None,
) -> GridFunction:
    """sup over policy cubes Q of the r-mean on Q of T(f off 3Q).

    Cubes wider than a quarter of the domain are skipped: their triple
    dilate swallows the whole domain and contributes zero.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    dom = f.domain
    policy = policy or default_policy(dom)
    quarter = max(1, dom.cells_per_side // 4)
    policy = CubeCollection(
        dom,
        policy.kind,
        policy.grid_index,
        policy.min_side,
        min(policy.max_side or quarter, quarter),
    )
    acc = np.zeros(dom.shape)
    for cube in policy.cubes():
        q, q3, _ = _cube_boxes(cube)
        piece = _op_apply_box(op, f.values, q3, q)
        val = float((np.abs(piece) ** r).sum() / cube.n_cells) ** (1.0 / r)
        sl = cube_slices(dom, cube)
        np.maximum(acc[sl], val, out=acc[sl])
    return GridFunction(dom, acc)


def grand_maximal_composite(
    op1,
    op2,
    f: GridFunction,
    r: float,
    policy: Optional[CubeCollection] = None,
) -> GridFunction:
    """sup over Q of the r-mean on Q of T1(1_{off 3Q} T2(f off 9Q))."""
    if r < 1:
        raise ValueError("r must be >= 1")
    dom = f.domain
    policy = policy or default_policy(dom)
    quarter = max(1, dom.cells_per_side // 4)
    policy = CubeCollection(
        dom,
        policy.kind,
        policy.grid_index,
        policy.min_side,
        min(policy.max_side or quarter, quarter),
    )
    n = dom.cells_per_side
    full = ((0, n),) * dom.dim
    acc = np.zeros(dom.shape)
    for cube in policy.cubes():
        q, q3, q9 = _cube_boxes(cube)
        inner = _op_apply_box(op2, f.values, q9, full)
        piece = _op_apply_box(op1, inner, q3, q)
        val = float((np.abs(piece) ** r).sum() / cube.n_cells) ** (1.0 / r)
        sl = cube_slices(dom, cube)
        np.maximum(acc[sl], val, out=acc[sl])
    return GridFunction(dom, acc)
