"""Dyadic grids, cubes and grid functions on a discretized cube domain.

The domain is an axis-aligned cube of side ``L`` split into ``N = 2**depth``
cells per axis.  Everything downstream (maximal operators, singular integral
quadratures, sparse decompositions) works on whole cells: a cube is a lattice
box measured in cells, a grid function is a dense array of cell values, and
functions vanish outside the domain by convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

__all__ = [
    "Domain",
    "Cube",
    "GridFunction",
    "ShiftedDyadicGrid",
    "dyadic_children",
    "dilate",
    "dilate_outward",
    "cube_slices",
    "cube_mask",
    "clip_cube",
    "integral",
    "lp_norm",
    "pairing",
    "shifted_grids",
    "covering_cube",
]


@dataclass(frozen=True)
class Domain:
    """Discretized cube [x0, x0+L)^dim with 2**depth cells per axis."""

    dim: int
    side: float
    depth: int
    corner: Tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.dim not in (1, 2):
            raise ValueError(f"dim must be 1 or 2, got {self.dim}")
        if self.side <= 0:
            raise ValueError("side must be positive")
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        if not self.corner:
            object.__setattr__(self, "corner", (0.0,) * self.dim)
        elif len(self.corner) != self.dim:
            raise ValueError("corner length must match dim")

    @property
    def cells_per_side(self) -> int:
        return 1 << self.depth

    @property
    def cell_width(self) -> float:
        return self.side / self.cells_per_side

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.cells_per_side,) * self.dim

    @property
    def cell_volume(self) -> float:
        return self.cell_width ** self.dim

    @property
    def root(self) -> "Cube":
        return Cube((0,) * self.dim, self.cells_per_side)

    def cell_centers(self, axis: int = 0) -> np.ndarray:
        n = self.cells_per_side
        h = self.cell_width
        return self.corner[axis] + (np.arange(n) + 0.5) * h

    def zeros(self) -> "GridFunction":
        return GridFunction(self, np.zeros(self.shape))


@dataclass(frozen=True)
class Cube:
    """Lattice box: cells [corner, corner+side_cells) per axis.

    ``corner`` may be negative or exceed the domain (dilates and shifted-grid
    cubes overhang); cells outside the domain always carry value 0.
    ``rounded`` records that the cube came from a dilation whose geometric
    boundary fell between cell boundaries (cells kept by the center-in rule).
    """

    corner: Tuple[int, ...]
    side_cells: int
    grid_index: int = 0
    rounded: bool = False

    def __post_init__(self) -> None:
        if self.side_cells < 1:
            raise ValueError("side_cells must be >= 1")

    @property
    def dim(self) -> int:
        return len(self.corner)

    @property
    def n_cells(self) -> int:
        return self.side_cells ** self.dim

    def center_half_cells(self) -> Tuple[int, ...]:
        """Cube center in half-cell units (exact integer arithmetic)."""
        return tuple(2 * c + self.side_cells for c in self.corner)

    def contains_cube(self, other: "Cube") -> bool:
        return all(
            self.corner[a] <= other.corner[a]
            and other.corner[a] + other.side_cells <= self.corner[a] + self.side_cells
            for a in range(self.dim)
        )

    def contains_cell(self, cell: Sequence[int]) -> bool:
        return all(
            self.corner[a] <= cell[a] < self.corner[a] + self.side_cells
            for a in range(self.dim)
        )

    def intersects(self, other: "Cube") -> bool:
        return all(
            self.corner[a] < other.corner[a] + other.side_cells
            and other.corner[a] < self.corner[a] + self.side_cells
            for a in range(self.dim)
        )


@dataclass
class GridFunction:
    """Dense real-valued function on the cells of a domain (0 outside)."""

    domain: Domain
    values: np.ndarray

    def __post_init__(self) -> None:
        self.values = np.ascontiguousarray(self.values, dtype=np.float64)
        if self.values.shape != self.domain.shape:
            raise ValueError(
                f"values shape {self.values.shape} != domain shape {self.domain.shape}"
            )

    def copy_with(self, values: np.ndarray) -> "GridFunction":
        return GridFunction(self.domain, values)

    def restrict(self, cube: Cube) -> "GridFunction":
        """Zero out values outside the cube (cube may overhang the domain)."""
        out = np.zeros_like(self.values)
        sl = cube_slices(self.domain, cube)
        if sl is not None:
            out[sl] = self.values[sl]
        return GridFunction(self.domain, out)

    def __add__(self, other: "GridFunction") -> "GridFunction":
        return GridFunction(self.domain, self.values + other.values)

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        return GridFunction(self.domain, self.values - other.values)

    def __mul__(self, scalar: float) -> "GridFunction":
        return GridFunction(self.domain, self.values * float(scalar))

    __rmul__ = __mul__


def dyadic_children(cube: Cube) -> List[Cube]:
    """The 2**dim half-side subcubes of a cube with even side."""
    s = cube.side_cells
    if s == 1:
        raise ValueError("cube of side 1 cell has no dyadic children")
    if s % 2 != 0:
        raise ValueError(f"side_cells {s} is not even")
    half = s // 2
    kids = []
    for bits in range(1 << cube.dim):
        off = tuple(half * ((bits >> a) & 1) for a in range(cube.dim))
        kids.append(
            Cube(
                tuple(cube.corner[a] + off[a] for a in range(cube.dim)),
                half,
                cube.grid_index,
            )
        )
    return kids


def dilate(cube: Cube, factor: int) -> Cube:
    """Concentric dilate by an odd integer factor (exact on the lattice)."""
    if factor < 1 or factor % 2 == 0:
        raise ValueError(f"dilate requires an odd factor >= 1, got {factor}")
    shift = (factor - 1) // 2 * cube.side_cells
    return Cube(
        tuple(c - shift for c in cube.corner),
        factor * cube.side_cells,
        cube.grid_index,
    )


def dilate_outward(cube: Cube, factor: int) -> Cube:
    """Concentric dilate by any integer factor >= 1.

    When the geometric boundary of the dilated cube falls mid-cell (even
    factor with odd side), cells are kept iff their centers lie inside; the
    result carries ``rounded=True``.
    """
    if factor < 1:
        raise ValueError(f"factor must be >= 1, got {factor}")
    if factor % 2 == 1:
        return dilate(cube, factor)
    s = cube.side_cells
    corner = []
    for c in cube.corner:
        lo2 = 2 * c + s - factor * s  # geometric low edge in half-cells
        corner.append(-((1 - lo2) // 2))  # ceil((lo2 - 1) / 2): center-in rule
    return Cube(tuple(corner), factor * s, cube.grid_index, rounded=(s % 2 == 1))


def clip_cube(domain: Domain, cube: Cube) -> Optional[Tuple[Tuple[int, int], ...]]:
    """Per-axis [lo, hi) cell ranges of the cube clipped to the domain."""
    n = domain.cells_per_side
    ranges = []
    for a in range(domain.dim):
        lo = max(0, cube.corner[a])
        hi = min(n, cube.corner[a] + cube.side_cells)
        if lo >= hi:
            return None
        ranges.append((lo, hi))
    return tuple(ranges)


def cube_slices(domain: Domain, cube: Cube) -> Optional[Tuple[slice, ...]]:
    ranges = clip_cube(domain, cube)
    if ranges is None:
        return None
    return tuple(slice(lo, hi) for lo, hi in ranges)


def cube_mask(domain: Domain, cube: Cube) -> np.ndarray:
    mask = np.zeros(domain.shape, dtype=bool)
    sl = cube_slices(domain, cube)
    if sl is not None:
        mask[sl] = True
    return mask


def integral(f: GridFunction, cube: Optional[Cube] = None) -> float:
    """Integral of f over a cube (default: whole domain), cells outside = 0."""
    if cube is None:
        return float(f.values.sum() * f.domain.cell_volume)
    sl = cube_slices(f.domain, cube)
    if sl is None:
        return 0.0
    return float(f.values[sl].sum() * f.domain.cell_volume)


def lp_norm(f: GridFunction, p: float, weight: Optional[GridFunction] = None) -> float:
    """(∫ |f|^p w)^(1/p) over the domain (w ≡ 1 when omitted)."""
    if p <= 0:
        raise ValueError("p must be positive")
    a = np.abs(f.values) ** p
    if weight is not None:
        a = a * weight.values
    return float((a.sum() * f.domain.cell_volume) ** (1.0 / p))


def pairing(f: GridFunction, g: GridFunction) -> float:
    """∫ f g over the domain."""
    return float((f.values * g.values).sum() * f.domain.cell_volume)


def _third_shift(sigma: int, log_side: int) -> int:
    """Integer shift ≈ sigma * (±side/3) preserving dyadic nesting.

    With side = 2**j the exact value sigma*((-1)**j * 2**j - 1)/3 is an
    integer, lies within one cell of a true one-third shift of alternating
    sign, and consecutive levels differ by a multiple of the child side, so
    cubes of one shifted grid are nested or disjoint.
    """
    sj = (1 << log_side) if log_side % 2 == 0 else -(1 << log_side)
    return sigma * (sj - 1) // 3


@dataclass(frozen=True)
class ShiftedDyadicGrid:
    """One of the 3**dim one-third-shifted dyadic grids over the domain.

    ``sigma`` holds the per-axis shift selector in {0, 1, 2}; sigma = 0 on
    every axis reproduces the base dyadic grid of the domain.  Cubes of the
    grid tile all of space level by level; enumeration clips to cubes that
    meet the domain (they may overhang it).
    """

    domain: Domain
    sigma: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.sigma) != self.domain.dim:
            raise ValueError("sigma length must match domain dim")
        if any(s not in (0, 1, 2) for s in self.sigma):
            raise ValueError("sigma entries must be in {0, 1, 2}")

    @property
    def index(self) -> int:
        idx = 0
        for s in self.sigma:
            idx = idx * 3 + s
        return idx

    def shift_for_side(self, side_cells: int) -> Tuple[int, ...]:
        j = side_cells.bit_length() - 1
        if (1 << j) != side_cells:
            raise ValueError(f"side_cells {side_cells} is not a power of two")
        return tuple(_third_shift(s, j) for s in self.sigma)

    def cubes_at_side(self, side_cells: int) -> List[Cube]:
        """All cubes of this side intersecting the domain, row-major order."""
        n = self.domain.cells_per_side
        t = self.shift_for_side(side_cells)
        axis_corners = []
        for a in range(self.domain.dim):
            a_lo = -((side_cells + t[a] - 1) // side_cells)
            a_hi = (n - 1 - t[a]) // side_cells
            axis_corners.append([k * side_cells + t[a] for k in range(a_lo, a_hi + 1)])
        cubes = []
        if self.domain.dim == 1:
            for c0 in axis_corners[0]:
                cubes.append(Cube((c0,), side_cells, self.index))
        else:
            for c0 in axis_corners[0]:
                for c1 in axis_corners[1]:
                    cubes.append(Cube((c0, c1), side_cells, self.index))
        return cubes

    def cube_containing(self, cube: Cube, side_cells: int) -> Optional[Cube]:
        """The unique grid cube of the given side containing ``cube``, if any."""
        if side_cells < cube.side_cells:
            return None
        t = self.shift_for_side(side_cells)
        corner = []
        for a in range(self.domain.dim):
            k = (cube.corner[a] - t[a]) // side_cells
            c = k * side_cells + t[a]
            if not (c <= cube.corner[a] and cube.corner[a] + cube.side_cells <= c + side_cells):
                return None
            corner.append(c)
        return Cube(tuple(corner), side_cells, self.index)


def shifted_grids(domain: Domain) -> List[ShiftedDyadicGrid]:
    """The 3**dim one-third-shifted grids, base grid first."""
    grids = []
    if domain.dim == 1:
        combos: List[Tuple[int, ...]] = [(0,), (1,), (2,)]
    else:
        combos = [(s0, s1) for s0 in (0, 1, 2) for s1 in (0, 1, 2)]
    for sigma in combos:
        grids.append(ShiftedDyadicGrid(domain, sigma))
    return grids


def covering_cube(
    domain: Domain, cube: Cube, max_factor: int = 6
) -> Optional[Cube]:
    """A shifted-grid cube containing ``cube`` with side <= max_factor * side.

    Searches the 3**dim shifted grids over dyadic sides in increasing order
    and returns the first hit (deterministic).
    """
    grids = shifted_grids(domain)
    s = 1
    while s < cube.side_cells:
        s <<= 1
    while s <= max_factor * cube.side_cells:
        for g in grids:
            hit = g.cube_containing(cube, s)
            if hit is not None:
                return hit
        s <<= 1
    return None
