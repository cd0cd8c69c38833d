import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparsedom import (
    Cube,
    Domain,
    GridFunction,
    covering_cube,
    cube_mask,
    cube_slices,
    dilate,
    dilate_outward,
    dyadic_children,
    integral,
    lp_norm,
    pairing,
    shifted_grids,
)
from conftest import rand_gf


def test_domain_geometry():
    dom = Domain(1, 2.0, 3)
    assert dom.cells_per_side == 8
    assert dom.cell_width == 0.25
    assert dom.shape == (8,)
    assert dom.cell_volume == 0.25
    assert dom.corner == (0.0,)
    centers = dom.cell_centers(0)
    assert centers[0] == pytest.approx(0.125)
    assert centers[-1] == pytest.approx(2.0 - 0.125)

    dom2 = Domain(2, 1.0, 4)
    assert dom2.shape == (16, 16)
    assert dom2.cell_volume == pytest.approx(dom2.cell_width**2)
    assert dom2.root.side_cells == 16


def test_domain_validation():
    with pytest.raises(ValueError):
        Domain(3, 1.0, 2)
    with pytest.raises(ValueError):
        Domain(1, 1.0, 0)
    with pytest.raises(ValueError):
        Domain(1, -1.0, 2)


def test_cube_containment():
    c = Cube((4, 4), 4)
    assert c.n_cells == 16
    assert c.contains_cell((4, 4))
    assert c.contains_cell((7, 7))
    assert not c.contains_cell((8, 4))
    inner = Cube((5, 5), 2)
    assert c.contains_cube(inner)
    assert not inner.contains_cube(c)
    assert c.intersects(Cube((7, 7), 4))
    assert not c.intersects(Cube((8, 8), 4))
    # intersects is symmetric
    a, b = Cube((0,), 4), Cube((3,), 2)
    assert a.intersects(b) == b.intersects(a)


def test_dyadic_children_partition(dom2_16):
    parent = Cube((4, 8), 4)
    kids = dyadic_children(parent)
    assert len(kids) == 4
    masks = [cube_mask(dom2_16, k) for k in kids]
    total = np.zeros(dom2_16.shape, dtype=int)
    for m in masks:
        total += m.astype(int)
    pm = cube_mask(dom2_16, parent)
    assert (total == pm.astype(int)).all()
    for k in kids:
        assert k.side_cells == 2
        assert parent.contains_cube(k)


def test_dilate_center_preserved():
    c = Cube((4,), 2)
    d3 = dilate(c, 3)
    assert d3.side_cells == 6
    assert d3.center_half_cells() == c.center_half_cells()
    d9 = dilate(c, 9)
    assert d9.side_cells == 18
    assert d9.center_half_cells() == c.center_half_cells()
    # dyadic child's 9-fold dilate stays inside the parent's 9-fold dilate
    parent = Cube((8,), 8)
    for kid in dyadic_children(parent):
        assert dilate(parent, 9).contains_cube(dilate(kid, 9))


def test_dilate_outward_contains():
    for side in (1, 2, 3, 4):
        c = Cube((5,), side)
        grown = dilate_outward(c, 3)
        assert grown.contains_cube(c)
        assert grown.side_cells >= 3 * side


def test_cube_slices_and_mask_agree(dom64):
    cases = [Cube((0,), 8), Cube((60,), 8), Cube((-4,), 8), Cube((63,), 4)]
    for c in cases:
        m = cube_mask(dom64, c)
        sl = cube_slices(dom64, c)
        if sl is None:
            assert m.sum() == 0
        else:
            ref = np.zeros(dom64.shape, dtype=bool)
            ref[sl] = True
            assert (m == ref).all()


def test_integral_oracle(dom32):
    f = rand_gf(dom32, 7)
    h = dom32.cell_width
    assert integral(f) == pytest.approx(h * f.values.sum(), rel=1e-13)
    c = Cube((8,), 4)
    assert integral(f, c) == pytest.approx(h * f.values[8:12].sum(), rel=1e-13)
    # cube clipped to the domain: only the inside part counts
    c2 = Cube((30,), 8)
    assert integral(f, c2) == pytest.approx(h * f.values[30:].sum(), rel=1e-13)


def test_lp_norm_and_pairing_oracle(dom32):
    f = rand_gf(dom32, 1)
    g = rand_gf(dom32, 2)
    h = dom32.cell_width
    assert lp_norm(f, 2.0) == pytest.approx(
        np.sqrt(h * (f.values**2).sum()), rel=1e-13
    )
    assert lp_norm(f, 1.0) == pytest.approx(h * np.abs(f.values).sum(), rel=1e-13)
    w = GridFunction(dom32, np.abs(g.values) + 0.5)
    assert lp_norm(f, 3.0, weight=w) == pytest.approx(
        (h * (np.abs(f.values) ** 3 * w.values).sum()) ** (1 / 3), rel=1e-12
    )
    assert pairing(f, g) == pytest.approx(h * (f.values * g.values).sum(), rel=1e-13)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10_000), corner=st.integers(0, 24), side=st.integers(1, 4))
def test_integral_additive_over_children(seed, corner, side):
    dom = Domain(1, 1.0, 5)
    f = rand_gf(dom, seed)
    parent = Cube((2 * corner % 24,), 2 * side)
    kids = dyadic_children(parent)
    assert integral(f, parent) == pytest.approx(
        sum(integral(f, k) for k in kids), abs=1e-14
    )


def test_shifted_grid_counts():
    assert len(shifted_grids(Domain(1, 1.0, 4))) == 3
    assert len(shifted_grids(Domain(2, 1.0, 4))) == 9


def test_shifted_grid_cube_containing(dom64):
    for grid in shifted_grids(dom64):
        for side in (1, 2, 4, 8, 16):
            for cell in (0, 17, 40, 63):
                c = grid.cube_containing(Cube((cell,), 1), side)
                assert c is not None
                assert c.side_cells == side
                assert c.contains_cell((cell,))
                assert c.grid_index == grid.index


def test_covering_property_exhaustive_1d(dom64):
    """Every generic cube has a shifted-dyadic cover of at most 6x the side."""
    n = dom64.cells_per_side
    for side in range(1, 11):
        for corner in range(0, n - side + 1):
            q = Cube((corner,), side)
            cov = covering_cube(dom64, q)
            assert cov is not None, (corner, side)
            assert cov.contains_cube(q)
            assert cov.side_cells <= 6 * side


def test_covering_property_2d_sample(dom2_16):
    rng = np.random.default_rng(3)
    for _ in range(40):
        side = int(rng.integers(1, 4))
        cx, cy = rng.integers(0, 16 - side, size=2)
        q = Cube((int(cx), int(cy)), side)
        cov = covering_cube(dom2_16, q)
        assert cov is not None
        assert cov.contains_cube(q)
        assert cov.side_cells <= 6 * side


def test_gridfunction_shape_validation(dom16):
    with pytest.raises(ValueError):
        GridFunction(dom16, np.ones(17))
