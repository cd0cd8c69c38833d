import numpy as np
import pytest

from sparsedom import (
    Cube,
    CubeCollection,
    Domain,
    GridFunction,
    Weight,
    a1_constant,
    ainfty_constant,
    ap_constant,
    dual_exponent,
    lp_norm,
    power_weight,
    reverse_holder_check,
    reverse_holder_delta,
    reverse_holder_sweep,
    rubio_de_francia,
)
from conftest import rand_gf


def brute_ap(vals: np.ndarray, p: float) -> float:
    """Direct double loop over all intervals."""
    n = vals.size
    best = 0.0
    for lo in range(n):
        for hi in range(lo + 1, n + 1):
            seg = vals[lo:hi]
            avg = seg.mean()
            dual = (seg ** (-1.0 / (p - 1.0))).mean() ** (p - 1.0)
            best = max(best, avg * dual)
    return best


def brute_a1(vals: np.ndarray) -> float:
    """sup_x Mw(x)/w(x) over all intervals containing x."""
    n = vals.size
    mw = np.zeros(n)
    for lo in range(n):
        for hi in range(lo + 1, n + 1):
            avg = vals[lo:hi].mean()
            mw[lo:hi] = np.maximum(mw[lo:hi], avg)
    return float((mw / vals).max())


def brute_ainfty(vals: np.ndarray) -> float:
    """Wilson functional: sup_Q (1/w(Q)) * sum_Q M(w chi_Q)."""
    n = vals.size
    best = 0.0
    for lo in range(n):
        for hi in range(lo + 1, n + 1):
            local = np.zeros(hi - lo)
            seg = vals[lo:hi]
            for a in range(hi - lo):
                for b in range(a + 1, hi - lo + 1):
                    avg = seg[a:b].mean()
                    local[a:b] = np.maximum(local[a:b], avg)
            best = max(best, local.sum() / seg.sum())
    return best


@pytest.fixture
def w_random():
    dom = Domain(1, 1.0, 5)
    rng = np.random.default_rng(17)
    vals = np.exp(rng.standard_normal(32) * 0.7)
    return Weight(GridFunction(dom, vals))


def test_dual_exponent():
    assert dual_exponent(2.0) == pytest.approx(2.0)
    assert dual_exponent(4.0) == pytest.approx(4.0 / 3.0)
    with pytest.raises(ValueError):
        dual_exponent(1.0)


def test_weight_positivity_enforced(dom16):
    vals = np.ones(16)
    vals[3] = 0.0
    with pytest.raises(ValueError):
        Weight(GridFunction(dom16, vals))
    vals[3] = -1.0
    with pytest.raises(ValueError):
        Weight(GridFunction(dom16, vals))


def test_ap_constant_brute_force(w_random):
    for p in (1.5, 2.0, 3.0):
        got = ap_constant(w_random, p)
        expect = brute_ap(w_random.func.values, p)
        assert got == pytest.approx(expect, rel=1e-10)


def test_a1_constant_brute_force(w_random):
    got = a1_constant(w_random)
    expect = brute_a1(w_random.func.values)
    assert got == pytest.approx(expect, rel=1e-10)


def test_ainfty_constant_brute_force():
    dom = Domain(1, 1.0, 4)
    rng = np.random.default_rng(5)
    vals = np.exp(rng.standard_normal(16) * 0.8)
    w = Weight(GridFunction(dom, vals))
    got = ainfty_constant(w)
    expect = brute_ainfty(vals)
    assert got == pytest.approx(expect, rel=1e-10)


def test_constant_weight_all_constants_one(dom32):
    w = Weight(GridFunction(dom32, np.ones(32)))
    assert ap_constant(w, 2.0) == 1.0
    assert a1_constant(w) == 1.0
    assert ainfty_constant(w) == 1.0
    # a non-unit constant only agrees up to roundoff in the dual mean
    w2 = Weight(GridFunction(dom32, np.full(32, 2.5)))
    assert ap_constant(w2, 2.0) == pytest.approx(1.0, rel=1e-14)
    assert ainfty_constant(w2) == pytest.approx(1.0, rel=1e-14)


def test_ap_duality(w_random):
    """[sigma]_{A_p'}^{1/p'} equals [w]_{A_p}^{1/p} with sigma = w^{1-p'}."""
    for p in (1.5, 2.0, 3.0):
        pp = dual_exponent(p)
        sigma = w_random.sigma(p)
        lhs = ap_constant(sigma, pp) ** (1.0 / pp)
        rhs = ap_constant(w_random, p) ** (1.0 / p)
        assert lhs == pytest.approx(rhs, rel=1e-9)


def test_ainfty_below_ap(w_random):
    """The Wilson constant is dominated by [w]_{A_p} up to a dimensional factor."""
    ainf = ainfty_constant(w_random)
    ap = ap_constant(w_random, 2.0)
    assert ainf <= 4.0 * ap


def test_ainfty_2d_all_policy_rejected():
    dom = Domain(2, 1.0, 3)
    w = power_weight(dom, 0.5)
    with pytest.raises(ValueError):
        ainfty_constant(w, CubeCollection(dom, "all"))


def test_power_weight_properties():
    dom = Domain(1, 1.0, 6)
    w = power_weight(dom, 0.5)
    assert (w.func.values > 0).all()
    flat = power_weight(dom, 0.0)
    assert (flat.func.values == 1.0).all()
    # the clamp keeps the singular exponent finite at the center cell
    neg = power_weight(dom, -0.8)
    assert np.isfinite(neg.func.values).all()
    x = dom.cell_centers(0)
    far = np.abs(x - 0.5) > 0.1
    expect = np.abs(x[far] - 0.5) ** -0.8
    assert neg.func.values[far] == pytest.approx(expect, rel=1e-12)


def test_reverse_holder_delta_formula(w_random):
    delta = reverse_holder_delta(w_random)
    ainf = ainfty_constant(w_random)
    assert delta == pytest.approx(1.0 + 1.0 / (2.0 ** (11 + 1) * ainf), rel=1e-12)


def test_reverse_holder_check_constant(dom32):
    w = Weight(GridFunction(dom32, np.ones(32)))
    res = reverse_holder_check(w, dom32.root)
    assert res["passed"] == 1.0
    assert res["lhs"] == pytest.approx(1.0, rel=1e-12)
    assert res["rhs"] == pytest.approx(2.0, rel=1e-12)


def test_reverse_holder_sweep_power_weights():
    dom = Domain(1, 1.0, 6)
    for a in (-0.5, 0.0, 0.5, 1.0):
        w = power_weight(dom, a)
        out = reverse_holder_sweep(w)
        assert out["failures"] == 0
        assert out["max_ratio"] <= 1.0
        assert out["n_cubes"] > 0


def test_reverse_holder_fails_for_large_delta(w_random):
    """The inequality is sharp in delta: a crude oversized delta breaks it."""
    out = reverse_holder_sweep(w_random, delta=3.0)
    assert out["failures"] > 0


def test_rubio_majorant_and_norm(dom64):
    rng = np.random.default_rng(23)
    h = GridFunction(dom64, np.abs(rng.standard_normal(64)) + 1e-3)
    v = power_weight(dom64, 0.5)
    p = 2.0
    r = rubio_de_francia(h, v, p)
    assert (r.values >= h.values).all()
    assert lp_norm(r, p, weight=v.func) <= 2.0 * (1 + 1e-6) * lp_norm(
        h, p, weight=v.func
    )


def test_rubio_monotone_in_terms(dom64):
    """Prefix normalization: adding terms only raises the majorant."""
    rng = np.random.default_rng(47)
    h = GridFunction(dom64, np.abs(rng.standard_normal(64)))
    v = power_weight(dom64, 0.5)
    prev = rubio_de_francia(h, v, 1.5, K=1)
    for k in (2, 5, 10, 25):
        cur = rubio_de_francia(h, v, 1.5, K=k)
        assert (cur.values >= prev.values).all()
        prev = cur


def test_rubio_deterministic(dom64):
    rng = np.random.default_rng(48)
    h = GridFunction(dom64, np.abs(rng.standard_normal(64)))
    v = power_weight(dom64, -0.5)
    a = rubio_de_francia(h, v, 3.0)
    b = rubio_de_francia(h, v, 3.0)
    assert (a.values == b.values).all()


def test_rubio_details_and_a1(dom64):
    rng = np.random.default_rng(31)
    h = GridFunction(dom64, np.abs(rng.standard_normal(64)) + 1e-3)
    v = power_weight(dom64, -0.3)
    p = 2.0
    r, info = rubio_de_francia(h, v, p, details=True)
    assert info["terms"] == 40
    assert info["tail_term_norm"] <= 1e-10
    # the majorant has a controlled A1 constant
    a1 = a1_constant(Weight(GridFunction(dom64, r.values)))
    assert np.isfinite(a1)
    assert a1 <= 4.0 * info["s_norm"]


def test_rubio_zero_function(dom16):
    z = GridFunction(dom16, np.zeros(16))
    v = power_weight(dom16, 0.0)
    r = rubio_de_francia(z, v, 2.0)
    assert (r.values == 0).all()
