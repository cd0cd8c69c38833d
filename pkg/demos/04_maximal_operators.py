"""
Maximal operators and stopping cubes
====================================

The Hardy-Littlewood maximal function takes the largest local average over
cubes containing each cell; power and log-bumped variants replace the
average by stronger local norms.  Stopping-time selection of the maximal
dyadic cubes where a local norm exceeds a threshold is the skeleton of
every decomposition in the toolkit.
"""

import numpy as np

from sparsedom import (
    CubeCollection,
    Domain,
    GridFunction,
    grand_maximal,
    hl_maximal,
    m_beta,
    m_llogl,
    stopping_cubes,
)

dom = Domain(1, 1.0, 7)
vals = np.zeros(128)
vals[40] = 1.0  # a single spike
f = GridFunction(dom, vals)

# the maximal function of a spike decays like the reciprocal distance
mf = hl_maximal(f)
cells = [40, 41, 45, 60, 100]
print("M(spike) samples:", {c: round(float(mf.values[c]), 4) for c in cells})

# stronger local means dominate pointwise: M <= M_{LlogL} <= 2 M_2
rng = np.random.default_rng(11)
g = GridFunction(dom, rng.lognormal(0.0, 1.0, 128))
m1 = hl_maximal(g).values
mll = m_llogl(g, 1.0).values
m2 = m_beta(g, 2.0).values
print(
    f"\nordering on a random field: "
    f"M <= M_LlogL everywhere: {bool((m1 <= mll + 1e-12).all())}, "
    f"M_LlogL <= 2 M_2 everywhere: {bool((mll <= 2.0 * m2 + 1e-12).all())}"
)

# stopping cubes: maximal dyadic cubes whose local log-bumped norm exceeds
# the threshold; raising it localizes the selection onto the bump
spiky = np.ones(128)
spiky[96:104] = 6.0
h = GridFunction(dom, spiky)
for thr in (3.0, 4.0):
    cubes = stopping_cubes(h, beta=1.0, threshold=thr)
    picks = [(q.corner, q.side_cells) for q in cubes]
    print(f"\nstopping cubes at threshold {thr}: {picks}")

# the grand maximal measures how a singular integral acts off a 3-dilate;
# for the identity the off-support contribution vanishes
from sparsedom import IdentityOperator

gm = grand_maximal(IdentityOperator(dom), h, r=1.25)
print(f"\ngrand maximal of the identity: max = {float(gm.values.max()):.2e}")

# cube policies trade sharpness for cost: every policy is within a constant
all_cubes = hl_maximal(g, CubeCollection(dom, "all"))
dyadic = hl_maximal(g, CubeCollection(dom, "dyadic"))
ratio = float((all_cubes.values / dyadic.values).max())
print(f"all-cubes vs dyadic policy: worst ratio {ratio:.3f}")
