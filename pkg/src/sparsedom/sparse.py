"""Recursive sparse decomposition of composed singular integrals.

The engine splits T1(T2 f) into two grid functions H1 + H2 indexed by a
laminar forest of dyadic cubes: at each node Q the exceptional set where the
composition or its localized truncation maximals are large (relative to the
Luxemburg norm of f on 9Q) is covered by Calderon-Zygmund cubes of total
measure at most |Q|/2, the complement keeps the full composition, the cut
cubes keep near/far splits of the operator applied off their 9-dilates, and
the recursion continues on f cut to each 9P.  Each node keeps at least half
of its own cells, which certifies sparseness of the family.

Also here: the Calderon-Zygmund set decomposition, greedy sparsity
certification for arbitrary cube families, the bilinear sparse forms, and a
line-oriented text serialization with bit-exact round-trip.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import _kernels
from .grid import (
    Cube,
    Domain,
    GridFunction,
    clip_cube,
    cube_mask,
    cube_slices,
    dilate,
    dyadic_children,
)
from .orlicz import luxemburg_norm, mean_r
from .singular import KernelOmega, TOmegaOperator

__all__ = [
    "SparseFamily",
    "DecompositionResult",
    "CertifyResult",
    "cz_decompose_set",
    "exceptional_sets",
    "sparse_decompose",
    "certify_sparsity",
    "bilinear_form_orlicz",
    "bilinear_form_lr",
    "corollary51_split",
    "serialize_family",
    "parse_family",
]

#: density level of the Calderon-Zygmund stopping per dimension: 2^-(d+1)
def _cz_level(dim: int) -> float:
    return 0.5 ** (dim + 1)


@dataclass
class SparseFamily:
    """Cube family with a disjoint-cell certificate of eta-sparseness."""

    domain: Domain
    eta: float
    cubes: List[Cube]
    cert_cells: List[np.ndarray] = field(default_factory=list)

    def validate(self) -> None:
        if not 0.0 < self.eta <= 1.0:
            raise ValueError("eta must lie in (0, 1]")
        if len(self.cert_cells) != len(self.cubes):
            raise ValueError("certificate length does not match cube count")
        total = 0
        for cube, cells in zip(self.cubes, self.cert_cells):
            if cells.size and not np.all(np.diff(cells) > 0):
                raise ValueError("certificate cells must be sorted and unique")
            if cells.size < self.eta * cube.n_cells:
                raise ValueError(
                    f"certificate too small on cube {cube.corner}/{cube.side_cells}"
                )
            mask = cube_mask(self.domain, cube).ravel()
            if cells.size and not mask[cells].all():
                raise ValueError("certificate cell outside its cube")
            total += cells.size
        if self.cubes:
            joined = np.concatenate([c for c in self.cert_cells]) if total else np.empty(0)
            if np.unique(joined).size != total:
                raise ValueError("certificate cells overlap between cubes")


@dataclass
class DecompositionResult:
    """Output of the recursive decomposition."""

    family: SparseFamily
    h1: GridFunction
    h2: GridFunction
    d_constant: float
    depth: int
    level_counts: Dict[int, int]


@dataclass
class CertifyResult:
    ok: bool
    family: Optional[SparseFamily]
    violating_cube: Optional[Cube]
    min_fraction: float


def _count_prefix(e: np.ndarray) -> np.ndarray:
    ints = e.astype(np.int64)
    if e.ndim == 1:
        out = np.zeros(e.shape[0] + 1, dtype=np.int64)
        np.cumsum(ints, out=out[1:])
        return out
    out = np.zeros((e.shape[0] + 1, e.shape[1] + 1), dtype=np.int64)
    out[1:, 1:] = ints.cumsum(axis=0).cumsum(axis=1)
    return out


def _box_count(pref: np.ndarray, cube: Cube) -> int:
    s = cube.side_cells
    if pref.ndim == 1:
        (c,) = cube.corner
        return int(pref[c + s] - pref[c])
    c0, c1 = cube.corner
    return int(
        pref[c0 + s, c1 + s] - pref[c0, c1 + s] - pref[c0 + s, c1] + pref[c0, c1]
    )


def cz_decompose_set(e: np.ndarray, q0: Cube, level: Optional[float] = None) -> List[Cube]:
    """Maximal dyadic subcubes of q0 where the density of the set exceeds level.

    ``e`` is a boolean cell mask of the full domain shape.  The selected
    cubes are pairwise disjoint, satisfy level*|P| < |P ∩ E| <= |P|/2 (the
    upper bound for level = 2^-(d+1) via parent non-selection), and cover E
    within q0 exactly.
    """
    e = np.asarray(e, dtype=bool)
    dim = e.ndim
    if level is None:
        level = _cz_level(dim)
    if not 0.0 < level < 1.0:
        raise ValueError("level must lie in (0, 1)")
    pref = _count_prefix(e)
    root_count = _box_count(pref, q0)
    if root_count > level * q0.n_cells:
        raise ValueError("exceptional set too large for the stopping level")
    if root_count == 0:
        return []
    selected: List[Cube] = []

    def descend(cube: Cube) -> None:
        for child in dyadic_children(cube):
            cnt = _box_count(pref, child)
            if cnt == 0:
                continue
            if cnt > level * child.n_cells:
                selected.append(child)
            elif child.side_cells > 1:
                descend(child)

    descend(q0)
    return selected


def _descendant_arrays(q: Cube) -> Tuple[np.ndarray, ...]:
    """Corner/side arrays of all proper dyadic descendants, coarse to fine."""
    dim = q.dim
    lo_axes: List[List[int]] = [[] for _ in range(dim)]
    sides: List[int] = []
    s = q.side_cells // 2
    while s >= 1:
        k = q.side_cells // s
        for i0 in range(k):
            if dim == 1:
                lo_axes[0].append(q.corner[0] + i0 * s)
                sides.append(s)
            else:
                for i1 in range(k):
                    lo_axes[0].append(q.corner[0] + i0 * s)
                    lo_axes[1].append(q.corner[1] + i1 * s)
                    sides.append(s)
        s //= 2
    arrs = tuple(np.asarray(a, dtype=np.int64) for a in lo_axes)
    return arrs + (np.asarray(sides, dtype=np.int64),)


def _paint_level_max(acc: np.ndarray, q: Cube, side: int, vals: np.ndarray) -> None:
    """acc <- max(acc, value of the side-cube covering each cell), node-local."""
    k = q.side_cells // side
    if acc.ndim == 1:
        view = acc.reshape(k, side)
        np.maximum(view, vals[:, None], out=view)
    else:
        view = acc.reshape(k, side, k, side)
        np.maximum(view, vals[:, None, :, None], out=view)


class _NodeData:
    """Functionals of one decomposition node, reusable across thresholds."""

    __slots__ = ("norm1", "norm0", "abs_t", "me2", "me3", "u9", "t1u9", "is_zero")

    def __init__(self, t1, t2, f: GridFunction, q0: Cube, r: float,
                 beta1: float, beta2: float):
        dom = f.domain
        n = dom.cells_per_side
        q9 = dilate(q0, 9)
        sl9 = cube_slices(dom, q9)
        fq = np.zeros(dom.shape)
        if sl9 is not None:
            fq[sl9] = f.values[sl9]
        self.is_zero = not fq.any()
        qsl = cube_slices(dom, q0)
        shape_q = (q0.side_cells,) * dom.dim
        if self.is_zero:
            self.norm1 = self.norm0 = 0.0
            self.abs_t = np.zeros(shape_q)
            self.me2 = np.zeros(shape_q)
            self.me3 = np.zeros(shape_q)
            self.u9 = np.zeros(dom.shape)
            self.t1u9 = np.zeros(dom.shape)
            return
        self.norm1 = luxemburg_norm(f, q9, beta1)
        self.norm0 = luxemburg_norm(f, q9, beta2)
        box9 = tuple((c, c + q9.side_cells) for c in q9.corner)
        full = ((0, n),) * dom.dim
        self.u9 = t2.apply_box(fq, box9, None, full)
        self.t1u9 = t1.apply_box(self.u9, None, None, full)
        self.abs_t = np.abs(self.t1u9[qsl])
        self.me2 = np.zeros(shape_q)
        self.me3 = np.zeros(shape_q)
        if q0.side_cells == 1:
            return
        arrs = _descendant_arrays(q0)
        rp = r / (r - 1.0)
        nz = np.nonzero(fq)
        box3 = tuple((c - q0.side_cells, c + 2 * q0.side_cells) for c in q0.corner)
        if dom.dim == 1:
            e2, e3 = _kernels.node_values_1d(
                t1.table, t2.table, fq, self.u9, self.t1u9,
                box3[0][0], box3[0][1],
                arrs[0], arrs[1], rp,
                int(nz[0].min()), int(nz[0].max()) + 1,
            )
        else:
            e2, e3 = _kernels.node_values_2d(
                t1.table, t2.table, fq, self.u9, self.t1u9,
                box3[0][0], box3[0][1], box3[1][0], box3[1][1],
                arrs[0], arrs[1], arrs[2], rp,
                int(nz[0].min()), int(nz[0].max()) + 1,
                int(nz[1].min()), int(nz[1].max()) + 1,
            )
        sides = arrs[-1]
        pos = 0
        s = q0.side_cells // 2
        while s >= 1:
            cnt = (q0.side_cells // s) ** dom.dim
            block = slice(pos, pos + cnt)
            if dom.dim == 1:
                shape = (q0.side_cells // s,)
            else:
                shape = (q0.side_cells // s, q0.side_cells // s)
            _paint_level_max(self.me2, q0, s, e2[block].reshape(shape))
            _paint_level_max(self.me3, q0, s, e3[block].reshape(shape))
            assert int(sides[pos]) == s
            pos += cnt
            s //= 2

    def exceptional(self, d: float) -> np.ndarray:
        return (
            (self.abs_t > d * self.norm1)
            | (self.me2 > d * self.norm0)
            | (self.me3 > d * self.norm1)
        )


def exceptional_sets(
    t1,
    t2,
    f: GridFunction,
    q0: Cube,
    r: float,
    d: float,
    beta1: float = 1.0,
    beta2: float = 0.0,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Level sets E1, E2, E3 and their union E for one node at threshold d.

    E1 compares the composition applied to f cut to 9Q0 against d times the
    Luxemburg norm of f on 9Q0; E2 and E3 do the same for the localized
    truncation maximals of T2 and of the composition.  Returned as boolean
    masks of the domain shape, supported inside Q0.
    """
    if not 1.0 < r:
        raise ValueError("r must exceed 1")
    data = _NodeData(t1, t2, f, q0, r, beta1, beta2)
    dom = f.domain
    qsl = cube_slices(dom, q0)
    out = []
    for local in (
        data.abs_t > d * data.norm1,
        data.me2 > d * data.norm0,
        data.me3 > d * data.norm1,
        data.exceptional(d),
    ):
        full = np.zeros(dom.shape, dtype=bool)
        if qsl is not None and not data.is_zero:
            full[qsl] = local
        out.append(full)
    return out[0], out[1], out[2], out[3]


def _calibrate(data: _NodeData, q: Cube, dim: int) -> Tuple[float, np.ndarray]:
    """Smallest D = 2^k with |E(D)| <= |Q|/2^(d+2); caps at 40 doublings."""
    limit = q.n_cells / float(2 ** (dim + 2))
    d = 1.0
    for _ in range(41):
        e = data.exceptional(d)
        if e.sum() <= limit:
            return d, e
        d *= 2.0
    raise RuntimeError("calibration divergence: exceptional set stays too large")


def sparse_decompose(
    t1,
    t2,
    f: GridFunction,
    r: float,
    root: Optional[Cube] = None,
    beta1: float = 1.0,
    beta2: float = 0.0,
) -> DecompositionResult:
    """Decompose T1(T2 f) into H1 + H2 over a certified sparse cube forest.

    ``r`` sets the r'-means in the truncation maximals; the engine starts at
    the domain root (functions vanish outside the domain, so the single root
    plays the role of a support tiling) and recurses on the cut functions
    f·1_{9P} over the Calderon-Zygmund cubes P of each node's exceptional
    set, with the stopping threshold D calibrated per node by doubling.
    """
    if not 1.0 < r:
        raise ValueError("r must exceed 1")
    dom = f.domain
    n = dom.cells_per_side
    root = root or dom.root
    h1 = np.zeros(dom.shape)
    h2 = np.zeros(dom.shape)
    cubes: List[Cube] = []
    certs: List[np.ndarray] = []
    level_counts: Dict[int, int] = {}
    flat_index = np.arange(int(np.prod(dom.shape)), dtype=np.int64).reshape(dom.shape)
    state = {"d": 0.0, "depth": 0}
    eta = 0.5 * 9.0 ** (-dom.dim)
    if not f.values.any():
        return DecompositionResult(
            SparseFamily(dom, eta, [], []),
            GridFunction(dom, h1),
            GridFunction(dom, h2),
            0.0,
            0,
            {},
        )
    full = ((0, n),) * dom.dim

    def process(q: Cube, depth: int) -> None:
        level_counts[depth] = level_counts.get(depth, 0) + 1
        state["depth"] = max(state["depth"], depth)
        cubes.append(q)
        cert_slot = len(certs)
        certs.append(np.empty(0, dtype=np.int64))
        qsl = cube_slices(dom, q)
        q9 = dilate(q, 9)
        sl9 = cube_slices(dom, q9)
        fq = np.zeros(dom.shape)
        if sl9 is not None:
            fq[sl9] = f.values[sl9]
        if not fq.any():
            certs[cert_slot] = np.sort(flat_index[qsl].ravel())
            return
        if q.side_cells == 1:
            box9 = tuple((c, c + q9.side_cells) for c in q9.corner)
            inner = t2.apply_box(fq, box9, None, full)
            qbox = tuple((c, c + q.side_cells) for c in q.corner)
            h1[qsl] += t1.apply_box(inner, None, None, qbox)
            certs[cert_slot] = np.sort(flat_index[qsl].ravel())
            return
        data = _NodeData(t1, t2, f, q, r, beta1, beta2)
        d, e_local = _calibrate(data, q, dom.dim)
        state["d"] = max(state["d"], d)
        e_full = np.zeros(dom.shape, dtype=bool)
        e_full[qsl] = e_local
        children = cz_decompose_set(e_full, q, _cz_level(dom.dim))
        covered = np.zeros(dom.shape, dtype=bool)
        for p in children:
            covered[cube_slices(dom, p)] = True
        own = ~covered[qsl]
        h1[qsl] += np.where(own, data.t1u9[qsl], 0.0)
        certs[cert_slot] = np.sort(flat_index[qsl][own].ravel())
        for p in children:
            p9 = dilate(p, 9)
            box9p = tuple((c, c + p9.side_cells) for c in p9.corner)
            wp = t2.apply_box(fq, box9p, None, full)
            g_field = data.u9 - wp
            pbox = tuple((c, c + p.side_cells) for c in p.corner)
            box3p = tuple((c - p.side_cells, c + 2 * p.side_cells) for c in p.corner)
            psl = cube_slices(dom, p)
            h2[psl] += t1.apply_box(g_field, box3p, None, pbox)
            h1[psl] += t1.apply_box(g_field, None, box3p, pbox)
            process(p, depth + 1)

    process(root, 0)
    family = SparseFamily(dom, eta, cubes, certs)
    family.validate()
    return DecompositionResult(
        family,
        GridFunction(dom, h1),
        GridFunction(dom, h2),
        state["d"],
        state["depth"],
        level_counts,
    )


def _sort_key(cube: Cube) -> tuple:
    return (-cube.side_cells, cube.grid_index) + cube.corner


def certify_sparsity(
    family: Union[SparseFamily, Sequence[Cube]],
    eta: float,
    domain: Optional[Domain] = None,
) -> CertifyResult:
    """Greedy certificate construction for an arbitrary cube family.

    Cubes are processed in decreasing size; each receives its cells minus
    every strictly smaller family cube minus cells already claimed.  The
    certificate succeeds iff every cube keeps at least eta times its cell
    count.  Failure reports the first violating cube (not an exception).
    """
    if isinstance(family, SparseFamily):
        domain = family.domain
        cube_list = list(family.cubes)
    else:
        cube_list = list(family)
        if domain is None:
            raise ValueError("domain required when passing a bare cube list")
    if not 0.0 < eta <= 1.0:
        raise ValueError("eta must lie in (0, 1]")
    order = sorted(cube_list, key=_sort_key)
    sizes = sorted({c.side_cells for c in order})
    smaller_union: Dict[int, np.ndarray] = {}
    cum = np.zeros(domain.shape, dtype=bool)
    for s in sizes:
        smaller_union[s] = cum.copy()
        for c in cube_list:
            if c.side_cells == s:
                sl = cube_slices(domain, c)
                if sl is not None:
                    cum[sl] = True
    claimed = np.zeros(domain.shape, dtype=bool)
    flat_index = np.arange(int(np.prod(domain.shape)), dtype=np.int64).reshape(
        domain.shape
    )
    certs: List[np.ndarray] = []
    min_fraction = 1.0
    for cube in order:
        own = cube_mask(domain, cube) & ~smaller_union[cube.side_cells] & ~claimed
        count = int(own.sum())
        frac = count / cube.n_cells
        min_fraction = min(min_fraction, frac)
        if count < eta * cube.n_cells:
            return CertifyResult(False, None, cube, min_fraction)
        claimed |= own
        certs.append(np.sort(flat_index[own].ravel()))
    out = SparseFamily(domain, eta, order, certs)
    out.validate()
    return CertifyResult(True, out, None, min_fraction)


def _form_cubes(family: Union[SparseFamily, Sequence[Cube]]) -> List[Cube]:
    if isinstance(family, SparseFamily):
        return family.cubes
    return list(family)


def bilinear_form_orlicz(
    family: Union[SparseFamily, Sequence[Cube]],
    f: GridFunction,
    g: GridFunction,
    beta: float,
    r: float,
) -> float:
    """Sum over the family of |Q| ||f||_{L(log L)^beta,Q} <|g|>_{Q,r}."""
    dom = f.domain
    total = 0.0
    for cube in _form_cubes(family):
        vol = (cube.side_cells * dom.cell_width) ** dom.dim
        total += vol * luxemburg_norm(f, cube, beta) * mean_r(g, cube, r)
    return total


def bilinear_form_lr(
    family: Union[SparseFamily, Sequence[Cube]],
    f: GridFunction,
    g: GridFunction,
    r1: float,
    r2: float,
) -> float:
    """Sum over the family of |Q| <|f|>_{Q,r1} <|g|>_{Q,r2}."""
    if r1 < 1 or r2 < 1:
        raise ValueError("r1 and r2 must be >= 1")
    dom = f.domain
    total = 0.0
    for cube in _form_cubes(family):
        vol = (cube.side_cells * dom.cell_width) ** dom.dim
        total += vol * mean_r(f, cube, r1) * mean_r(g, cube, r2)
    return total


def corollary51_split(
    omega1: KernelOmega,
    omega2: KernelOmega,
    f: GridFunction,
    r: float,
) -> Tuple[GridFunction, GridFunction, SparseFamily]:
    """Split T_{Omega1} T_{Omega2} f = J1 + J2 over a sparse family.

    The L log L piece J1 collects the complement and far-field terms, J2 the
    near-field terms; r is restricted to (1, 3/2] as in the underlying
    estimates.
    """
    if not 1.0 < r <= 1.5:
        raise ValueError("r must lie in (1, 3/2]")
    t1 = TOmegaOperator(f.domain, omega1)
    t2 = TOmegaOperator(f.domain, omega2)
    res = sparse_decompose(t1, t2, f, r, beta1=1.0, beta2=0.0)
    return res.h1, res.h2, res.family


def _runs(cells: np.ndarray) -> List[Tuple[int, int]]:
    if cells.size == 0:
        return []
    breaks = np.flatnonzero(np.diff(cells) != 1)
    starts = np.concatenate(([0], breaks + 1))
    ends = np.concatenate((breaks, [cells.size - 1]))
    return [(int(cells[a]), int(cells[b] - cells[a] + 1)) for a, b in zip(starts, ends)]


def serialize_family(family: SparseFamily) -> str:
    """Line-oriented text form; floats as hex for bit-exact round-trips."""
    dom = family.domain
    lines = ["sparse-family v1"]
    corner = " ".join(float(c).hex() for c in dom.corner)
    lines.append(f"domain {dom.dim} {dom.depth} {float(dom.side).hex()} {corner}")
    lines.append(f"eta {float(family.eta).hex()}")
    lines.append(f"ncubes {len(family.cubes)}")
    for cube, cells in zip(family.cubes, family.cert_cells):
        s = cube.side_cells
        level = s.bit_length() - 1 if s & (s - 1) == 0 else -1
        corner_txt = " ".join(str(c) for c in cube.corner)
        lines.append(f"cube {cube.grid_index} {level} {corner_txt} {s}")
        spans = _runs(cells)
        span_txt = " ".join(f"{a}:{b}" for a, b in spans)
        lines.append(f"cert {len(spans)}" + (" " + span_txt if spans else ""))
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> SparseFamily:
    """Inverse of serialize_family; validates the certificate."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "sparse-family v1":
        raise ValueError("not a sparse-family v1 file")
    dom_parts = lines[1].split()
    if dom_parts[0] != "domain":
        raise ValueError("missing domain line")
    dim = int(dom_parts[1])
    depth = int(dom_parts[2])
    side = float.fromhex(dom_parts[3])
    corner = tuple(float.fromhex(t) for t in dom_parts[4 : 4 + dim])
    domain = Domain(dim, side, depth, corner)
    eta_parts = lines[2].split()
    if eta_parts[0] != "eta":
        raise ValueError("missing eta line")
    eta = float.fromhex(eta_parts[1])
    n_parts = lines[3].split()
    if n_parts[0] != "ncubes":
        raise ValueError("missing ncubes line")
    ncubes = int(n_parts[1])
    cubes: List[Cube] = []
    certs: List[np.ndarray] = []
    idx = 4
    for _ in range(ncubes):
        cparts = lines[idx].split()
        if cparts[0] != "cube":
            raise ValueError(f"expected cube line at {idx}")
        grid_id = int(cparts[1])
        corner_cells = tuple(int(t) for t in cparts[3 : 3 + dim])
        side_cells = int(cparts[3 + dim])
        cubes.append(Cube(corner_cells, side_cells, grid_id))
        idx += 1
        sparts = lines[idx].split()
        if sparts[0] != "cert":
            raise ValueError(f"expected cert line at {idx}")
        nspans = int(sparts[1])
        cells: List[np.ndarray] = []
        for tok in sparts[2 : 2 + nspans]:
            a, b = tok.split(":")
            start, length = int(a), int(b)
            cells.append(np.arange(start, start + length, dtype=np.int64))
        certs.append(
            np.concatenate(cells) if cells else np.empty(0, dtype=np.int64)
        )
        idx += 1
    fam = SparseFamily(domain, eta, cubes, certs)
    fam.validate()
    return fam
