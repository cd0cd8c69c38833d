"""
Grids, cubes, and the one-third trick
=====================================

The whole toolkit lives on a uniform grid over a cube: a Domain fixes the
dimension, the side length, and a dyadic depth (2^depth cells per side).
Cubes are grid-aligned blocks addressed by corner cell and side in cells,
and every cube of the domain is covered, up to a bounded dilation, by a
cube from one of 3^d shifted dyadic grids.
"""

import numpy as np

from sparsedom import (
    Cube,
    Domain,
    GridFunction,
    covering_cube,
    dilate,
    dyadic_children,
    integral,
    lp_norm,
    shifted_grids,
)

# a one-dimensional domain: [0, 1) split into 64 cells
dom = Domain(1, 1.0, 6)
print(f"domain: dim={dom.dim} side={dom.side} cells={dom.cells_per_side}")
print(f"cell width h = {dom.cell_width}, root cube = {dom.root}")

# grid functions are dense cell tables; calculus is exact cell arithmetic
x = dom.cell_centers()
f = GridFunction(dom, np.sin(2 * np.pi * x))
print(f"\nintegral of sin over the period: {integral(f):+.2e} (cancels)")
print(f"L2 norm: {lp_norm(f, 2.0):.6f} (midpoint value of 1/sqrt(2))")

# dyadic children partition a cube; dilation keeps the center
q = Cube((16,), 16)
print(f"\ncube {q}: children {[c.corner for c in dyadic_children(q)]}")
q3 = dilate(q, 3)
print(f"3Q has corner {q3.corner} and side {q3.side_cells} cells")

# the one-third trick: three shifted grids in d=1, nine in d=2
grids = shifted_grids(dom)
print(f"\nshifted grids in d=1: {len(grids)}")
for g in grids:
    print(f"  grid {g.index}: sigma {g.sigma}, shift at side 16 = {g.shift_for_side(16)}")

# any grid cube is contained in a shifted-grid cube of comparable size
arbitrary = Cube((21,), 11)
cover = covering_cube(dom, arbitrary)
print(
    f"\ncube corner={arbitrary.corner} side={arbitrary.side_cells} is covered by"
    f" grid-{cover.grid_index} cube corner={cover.corner} side={cover.side_cells}"
)
print(f"size ratio {cover.side_cells / arbitrary.side_cells:.2f} (never above 6)")
