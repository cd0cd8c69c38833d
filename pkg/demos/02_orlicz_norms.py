"""
Local Orlicz norms with logarithmic bumps
=========================================

The scale of spaces L(log L)^beta sits between L^1 and every L^r, r > 1.
The local Luxemburg norm on a cube Q is the smallest lambda for which the
cell average of phi(|g|/lambda) drops to 1, with the Young function
phi(t) = t log^beta(e + t); beta = 0 recovers the plain average.
"""

import numpy as np

from sparsedom import (
    Domain,
    GridFunction,
    luxemburg_norm,
    mean_r,
    orlicz_modular,
    young_phi,
)

# the Young function at a few points
for beta in (0.0, 1.0, 2.0):
    vals = young_phi(np.array([0.5, 1.0, 4.0]), beta)
    print(f"phi(t) at beta={beta}: {np.round(vals, 4)}")

dom = Domain(1, 1.0, 6)
rng = np.random.default_rng(7)
g = GridFunction(dom, rng.lognormal(0.0, 1.0, 64))
root = dom.root

# beta = 0 is the mean; raising beta inflates the norm toward higher means
print(f"\nmean of |g|:        {float(np.mean(g.values)):.6f}")
for beta in (0.0, 0.5, 1.0, 2.0):
    print(f"beta={beta}: Luxemburg norm {luxemburg_norm(g, root, beta):.6f}")
print(f"power mean r=2:     {mean_r(g, root, 2.0):.6f}")

# the defining equation: the modular at the returned norm is exactly 1
lam = luxemburg_norm(g, root, 1.0)
mod = orlicz_modular(np.abs(g.values), lam, 1.0, root.n_cells)
print(f"\nmodular at the computed norm: {mod:.12f} (bisection residual)")

# homogeneity: the norm scales linearly with the data
scaled = GridFunction(dom, 100.0 * g.values)
print(
    f"norm of 100 g = {luxemburg_norm(scaled, root, 1.0):.6f}"
    f" vs 100 * norm = {100.0 * lam:.6f}"
)

# locality: only the cells inside the cube contribute
from sparsedom import dyadic_children

left, right = dyadic_children(root)
print(
    f"\nnorms on the two halves: {luxemburg_norm(g, left, 1.0):.4f}"
    f" / {luxemburg_norm(g, right, 1.0):.4f}"
)
