"""Bound formulas, inequality ratio checks, and the experiment suites.

The quantitative estimates implemented by this package come as products of
weight characteristics and conjugate-exponent factors.  This module evaluates
those products on concrete weights, measures how close the corresponding
inequalities run to saturation on seeded ensembles, and packages the results
as machine-readable reports (JSON for tooling, CSV for plots).

Every "less-than-up-to-a-constant" statement is turned into a reported
max-ratio over a declared ensemble; acceptance asserts finiteness and
stability under grid refinement, never an absolute constant.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .grid import Cube, Domain, GridFunction, cube_slices, lp_norm, pairing
from .maximal import (
    CubeCollection,
    grand_maximal,
    grand_maximal_composite,
    hl_maximal,
    m_llogl,
)
from .orlicz import luxemburg_norm, young_phi
from .singular import (
    KernelOmega,
    TOmegaOperator,
    compose,
    make_kernel,
    spectral_oracle,
    t_omega,
)
from .sparse import (
    SparseFamily,
    bilinear_form_lr,
    bilinear_form_orlicz,
    certify_sparsity,
    corollary51_split,
    cz_decompose_set,
    sparse_decompose,
)
from .weights import (
    Weight,
    a1_constant,
    ainfty_constant,
    ap_constant,
    dual_exponent,
    power_weight,
    reverse_holder_delta,
    reverse_holder_sweep,
    rubio_de_francia,
)

__all__ = [
    "BoundFormulas",
    "ExperimentReport",
    "SuiteSpec",
    "SUITES",
    "thm11_bound",
    "eq13_bound",
    "thm12_bound",
    "lemma31_bound",
    "cor31_bound",
    "thm31_constant",
    "remark11_check",
    "weak_type_modular_ratio",
    "strong_type_ratio",
    "sparse_domination_ratio",
    "eq34_ratio",
    "orlicz_vs_lr_ratio",
    "lemma21_ratio",
    "local_orlicz_ratio",
    "composite_shape_ratio",
    "ensemble_function",
    "ensemble_kernels",
    "resolve_config",
    "run_suite",
    "run_experiments",
    "DEFAULT_CONFIG",
]


def _conj(x: float) -> float:
    """Conjugate exponent x' = x/(x-1)."""
    if not x > 1.0:
        raise ValueError("conjugate exponent requires x > 1")
    return x / (x - 1.0)


# ---------------------------------------------------------------------------
# bound formulas
# ---------------------------------------------------------------------------


@dataclass
class BoundFormulas:
    """Weight characteristics and the derived tuning parameters.

    Collects everything the bound formulas need: the A_p/A_1/A_infty
    constants of a weight and its dual, the epsilon exponents used by the
    two-index sparse form comparison, and the (t, r, p1) choices used by the
    endpoint constant.
    """

    dim: int
    p: float
    p_prime: float
    ap: float
    a1: float
    ainf_w: float
    ainf_sigma: float
    tau_w: float
    tau_sigma: float
    eps1: float
    eps2: float
    t: float
    r: float
    p1: float

    @classmethod
    def from_weight(
        cls, w: Weight, p: float, policy: Optional[CubeCollection] = None
    ) -> "BoundFormulas":
        if p <= 1.0:
            raise ValueError("p must exceed 1")
        dim = w.domain.dim
        q = dual_exponent(p)
        ap = ap_constant(w, p, policy)
        a1 = a1_constant(w, policy)
        ainf_w = ainfty_constant(w, policy)
        ainf_sigma = ainfty_constant(w.sigma(p), policy)
        scale = 2.0 ** (11 + dim)
        tau_w = scale * ainf_w
        tau_sigma = scale * ainf_sigma
        eps1 = (p - 1.0) / (2.0 * p * tau_sigma + 1.0)
        eps2 = (q - 1.0) / (2.0 * q * tau_w + 1.0)
        t = 1.0 + 1.0 / (scale * ainf_w)
        r = (1.0 + t) / 2.0
        p1 = 1.0 + 1.0 / math.log(math.e + ainf_w)
        out = cls(
            dim=dim,
            p=p,
            p_prime=q,
            ap=ap,
            a1=a1,
            ainf_w=ainf_w,
            ainf_sigma=ainf_sigma,
            tau_w=tau_w,
            tau_sigma=tau_sigma,
            eps1=eps1,
            eps2=eps2,
            t=t,
            r=r,
            p1=p1,
        )
        out.validate()
        return out

    def validate(self) -> None:
        if not 0.0 < self.eps1 < self.p - 1.0:
            raise ValueError("eps1 outside (0, p-1)")
        if not 0.0 < self.eps2 < self.p_prime - 1.0:
            raise ValueError("eps2 outside (0, p'-1)")
        if not 1.0 < self.r <= 1.5:
            raise ValueError("r outside (1, 3/2]")
        q1 = _conj(self.p1)
        if not self.t * (q1 / self.r - 1.0) / (q1 - 1.0) > 1.0:
            raise ValueError("t (p1'/r - 1)/(p1' - 1) must exceed 1")

    # -- the formula products -------------------------------------------

    def thm11(self) -> float:
        mix = self.ainf_w ** (1.0 / self.p_prime) + self.ainf_sigma ** (1.0 / self.p)
        return (
            self.ap ** (1.0 / self.p)
            * mix
            * (self.ainf_sigma + self.ainf_w)
            * min(self.ainf_sigma, self.ainf_w)
        )

    def eq13(self) -> float:
        mix = self.ainf_w ** (1.0 / self.p_prime) + self.ainf_sigma ** (1.0 / self.p)
        return self.ap ** (1.0 / self.p) * mix * min(self.ainf_sigma, self.ainf_w)

    def thm12(self) -> float:
        return self.a1 * self.ainf_w**2 * math.log(math.e + self.ainf_w)

    def cor31(self, alpha: float, beta: float) -> float:
        return (
            self.ainf_w**alpha
            * math.log(math.e + self.ainf_w) ** (1.0 + beta)
            * self.a1
        )


def thm11_bound(w: Weight, p: float, policy: Optional[CubeCollection] = None) -> float:
    """Two-operator strong-type constant at exponent p."""
    return BoundFormulas.from_weight(w, p, policy).thm11()


def eq13_bound(w: Weight, p: float, policy: Optional[CubeCollection] = None) -> float:
    """Single-operator strong-type constant used for comparison."""
    return BoundFormulas.from_weight(w, p, policy).eq13()


def thm12_bound(w: Weight, policy: Optional[CubeCollection] = None) -> float:
    """Endpoint modular constant for the composition under an A_1 weight."""
    a1 = a1_constant(w, policy)
    ainf = ainfty_constant(w, policy)
    return a1 * ainf**2 * math.log(math.e + ainf)


def lemma31_bound(p: float, r: float, t: float, beta: float) -> float:
    """Sparse-form dual bound p'^(1+beta) (p'/r)' (t(p'/r-1)/(p'-1))'^(1/p')."""
    if p <= 1.0:
        raise ValueError("p must exceed 1")
    if r < 1.0:
        raise ValueError("r must be >= 1")
    if beta < 0.0:
        raise ValueError("beta must be >= 0")
    r_prime = math.inf if r == 1.0 else _conj(r)
    if not p < r_prime:
        raise ValueError("p must lie in (1, r')")
    q = _conj(p)
    inner = t * (q / r - 1.0) / (q - 1.0)
    if not inner > 1.0:
        raise ValueError("t (p'/r - 1)/(p' - 1) must exceed 1")
    return q ** (1.0 + beta) * _conj(q / r) * _conj(inner) ** (1.0 / q)


def cor31_bound(
    w: Weight, alpha: float, beta: float, policy: Optional[CubeCollection] = None
) -> float:
    """Weighted endpoint constant [w]_Ainf^alpha log^(1+beta)(e+[w]_Ainf) [w]_A1."""
    a1 = a1_constant(w, policy)
    ainf = ainfty_constant(w, policy)
    return ainf**alpha * math.log(math.e + ainf) ** (1.0 + beta) * a1


def thm31_constant(d_bound: float, p1: float, r: float, t: float, beta: float) -> float:
    """Endpoint level-set constant 1 + (D * lemma31_bound)^p1."""
    if d_bound <= 0.0:
        raise ValueError("sparse domination bound must be positive")
    return 1.0 + (d_bound * lemma31_bound(p1, r, t, beta)) ** p1


def remark11_check(
    w: Weight, p: float, policy: Optional[CubeCollection] = None
) -> Dict[str, Any]:
    """Compare the composite constant against the square of the one-operator one.

    Returns the two constants plus the two comparison verdicts: composite
    <= single^2, and max of the A_infty constants <= the shared prefactor.
    """
    bf = BoundFormulas.from_weight(w, p, policy)
    composite = bf.thm11()
    single = bf.eq13()
    prefactor = bf.ap ** (1.0 / bf.p) * (
        bf.ainf_w ** (1.0 / bf.p_prime) + bf.ainf_sigma ** (1.0 / bf.p)
    )
    return {
        "thm11": composite,
        "eq13": single,
        "product_ok": composite <= single**2,
        "prefactor_ok": max(bf.ainf_w, bf.ainf_sigma) <= prefactor,
    }


# ---------------------------------------------------------------------------
# ratio checks
# ---------------------------------------------------------------------------


def _apply_black_box(u: Any, f: GridFunction) -> GridFunction:
    if callable(u):
        return u(f)
    return u.apply(f)


def weak_type_modular_ratio(
    u: Any,
    f: GridFunction,
    w: Weight,
    beta: float,
    lambda_grid: Sequence[float],
    bound_value: float = 1.0,
) -> float:
    """Max over the level grid of w({|Uf| > lam}) / (bound * weighted modular).

    Level sets are strict, weighted by cell volume; the modular integrand is
    (|f|/lam) log^beta(e + |f|/lam).  A vanishing denominator (f identically
    zero) yields 0 by convention.
    """
    for lam in lambda_grid:
        if not lam > 0.0 or not math.isfinite(lam):
            raise ValueError("level grid must be positive and finite")
    uf = _apply_black_box(u, f)
    absf = np.abs(f.values)
    absu = np.abs(uf.values)
    wv = w.func.values
    vol = f.domain.cell_volume
    best = 0.0
    for lam in lambda_grid:
        lhs = vol * float(wv[absu > lam].sum())
        rhs = bound_value * vol * float((young_phi(absf / lam, beta) * wv).sum())
        if rhs > 0.0:
            best = max(best, lhs / rhs)
    return float(best)


def strong_type_ratio(
    omega1: KernelOmega,
    omega2: KernelOmega,
    f: GridFunction,
    w: Weight,
    p: float,
    policy: Optional[CubeCollection] = None,
) -> float:
    """||T1 T2 f||_{L^p(w)} over the formula bound times ||f||_{L^p(w)}."""
    if p <= 1.0:
        raise ValueError("p must exceed 1")
    den_norm = lp_norm(f, p, w.func)
    if den_norm == 0.0:
        return 0.0
    num = lp_norm(compose(omega1, omega2, f), p, w.func)
    return num / (thm11_bound(w, p, policy) * den_norm)


def _safe_ratio(num: float, den: float) -> float:
    if den == 0.0:
        if num != 0.0:
            raise RuntimeError(
                "pairing is nonzero but the sparse form vanished; "
                "the family is missing charge cubes"
            )
        return 0.0
    return num / den


def sparse_domination_ratio(
    f: GridFunction,
    g: GridFunction,
    omega1: KernelOmega,
    omega2: KernelOmega,
    r: float,
) -> Tuple[float, float]:
    """Pairing-to-form ratios for the two pieces of the composition split.

    ratio1 tests |<J1, g>| against r' times the log-bumped form, ratio2
    tests |<J2, g>| against r'^2 times the plain (1, r) form.
    """
    j1, j2, family = corollary51_split(omega1, omega2, f, r)
    rp = _conj(r)
    num1 = abs(pairing(j1, g))
    num2 = abs(pairing(j2, g))
    form1 = bilinear_form_orlicz(family, f, g, 1.0, r)
    form2 = bilinear_form_lr(family, f, g, 1.0, r)
    return _safe_ratio(num1, rp * form1), _safe_ratio(num2, rp * rp * form2)


def eq34_ratio(
    family: SparseFamily,
    f: GridFunction,
    g: GridFunction,
    w: Weight,
    p: float,
    policy: Optional[CubeCollection] = None,
    bf: Optional[BoundFormulas] = None,
) -> float:
    """Two-index sparse form against its weighted-norm product bound.

    The form indices 1+eps1, 1+eps2 come from the weight's characteristics;
    the comparison constant is [w]_Ap^(1/p) ([sigma]_Ainf^(1/p) +
    [w]_Ainf^(1/p')).
    """
    if bf is None:
        bf = BoundFormulas.from_weight(w, p, policy)
    lhs = bilinear_form_lr(family, f, g, 1.0 + bf.eps1, 1.0 + bf.eps2)
    sigma = w.sigma(p)
    prefactor = bf.ap ** (1.0 / bf.p) * (
        bf.ainf_sigma ** (1.0 / bf.p) + bf.ainf_w ** (1.0 / bf.p_prime)
    )
    rhs = prefactor * lp_norm(f, p, w.func) * lp_norm(g, bf.p_prime, sigma.func)
    return _safe_ratio(lhs, rhs)


def orlicz_vs_lr_ratio(
    family: SparseFamily,
    f: GridFunction,
    g: GridFunction,
    bf: BoundFormulas,
) -> float:
    """Log-bumped form against (1/eps1) times the (1+eps1, 1+eps2) form."""
    lhs = bilinear_form_orlicz(family, f, g, 1.0, 1.0 + bf.eps2)
    rhs = (1.0 / bf.eps1) * bilinear_form_lr(family, f, g, 1.0 + bf.eps1, 1.0 + bf.eps2)
    return _safe_ratio(lhs, rhs)


def _power_maximal(
    f: GridFunction, beta: float, policy: Optional[CubeCollection] = None
) -> GridFunction:
    # (M |f|^beta)^(1/beta) for any beta > 0; used with beta < 1 in checks
    if beta <= 0.0:
        raise ValueError("beta must be positive")
    mv = hl_maximal(GridFunction(f.domain, np.abs(f.values) ** beta), policy)
    return GridFunction(f.domain, mv.values ** (1.0 / beta))


def lemma21_ratio(
    f: GridFunction,
    w: Weight,
    p: float,
    t: float,
    policy: Optional[CubeCollection] = None,
) -> float:
    """Dual-weight maximal bound ratio ||Mf|| / (p t'^(1/p') ||f||).

    Both norms are L^{p'} norms: the numerator against (M_t w)^(1-p'), the
    denominator against w^(1-p').
    """
    if p <= 1.0:
        raise ValueError("p must exceed 1")
    if t <= 1.0:
        raise ValueError("t must exceed 1")
    q = dual_exponent(p)
    mtw = _power_maximal(w.func, t, policy)
    num_weight = GridFunction(f.domain, mtw.values ** (1.0 - q))
    den_weight = GridFunction(f.domain, w.func.values ** (1.0 - q))
    den = p * _conj(t) ** (1.0 / q) * lp_norm(f, q, den_weight)
    if den == 0.0:
        return 0.0
    num = lp_norm(hl_maximal(f, policy), q, num_weight)
    return num / den


def local_orlicz_ratio(
    s_op: Any,
    f: GridFunction,
    cubes: Sequence[Cube],
    s_param: float,
    a_value: float = 1.0,
    rho: float = 0.5,
) -> float:
    """Max over cubes of the local rho-mean of S(f 1_Q) against the f norm.

    Tests (<|S(f 1_Q)|^rho>_Q)^(1/rho) <= C * A * ||f||_{L(log L)^s, Q} for a
    weak-type black box S; returns the fitted C over the given cubes.
    """
    if not 0.0 < rho < 1.0:
        raise ValueError("rho must lie in (0, 1)")
    dom = f.domain
    best = 0.0
    for q in cubes:
        sl = cube_slices(dom, q)
        if sl is None:
            continue
        cut = np.zeros(dom.shape)
        cut[sl] = f.values[sl]
        sf = _apply_black_box(s_op, GridFunction(dom, cut))
        local = float(np.mean(np.abs(sf.values[sl]) ** rho)) ** (1.0 / rho)
        den = a_value * luxemburg_norm(f, q, s_param)
        if den > 0.0:
            best = max(best, local / den)
        elif local > 0.0:
            raise RuntimeError("local mean is nonzero on a cube where f vanishes")
    return best


def composite_shape_ratio(
    t1: TOmegaOperator,
    t2: TOmegaOperator,
    f: GridFunction,
    r: float,
    alpha: float = 1.0,
    beta: float = 0.0,
    tau: float = 0.5,
    policy: Optional[CubeCollection] = None,
) -> float:
    """Fitted C in the pointwise composite grand-maximal domination.

    Checks that the composite grand maximal of (T1, T2) is controlled by
    M_tau applied to the grand maximal of T1 at T2 f plus r^alpha times the
    log-bumped maximal of f, cell by cell.
    """
    lhs = grand_maximal_composite(t1, t2, f, r, policy).values
    inner = grand_maximal(t1, t2.apply(f), r, policy)
    rhs = (
        _power_maximal(inner, tau, policy).values
        + r**alpha * m_llogl(f, beta, policy).values
    )
    mask = rhs > 0.0
    if not mask.any():
        return 0.0
    if (lhs[~mask] != 0.0).any():
        raise RuntimeError("composite maximal is nonzero where the majorant vanishes")
    return float((lhs[mask] / rhs[mask]).max())


# ---------------------------------------------------------------------------
# ensembles
# ---------------------------------------------------------------------------

_F_KINDS = ("bump", "dyadic_indicator", "pm_indicator")
_G_KINDS = ("random_signs", "shifted_bump")

_KIND_TAG = {
    "bump": 11,
    "dyadic_indicator": 12,
    "pm_indicator": 13,
    "random_signs": 21,
    "shifted_bump": 22,
}


def _central_third(domain: Domain) -> Tuple[int, int]:
    n = domain.cells_per_side
    lo = (n + 2) // 3
    hi = (2 * n) // 3
    return lo, max(hi, lo + 1)


def _bump_values(domain: Domain, center: np.ndarray, width: float) -> np.ndarray:
    if domain.dim == 1:
        u = (domain.cell_centers(0) - center[0]) / width
        dist2 = u * u
    else:
        u0 = (domain.cell_centers(0) - center[0]) / width
        u1 = (domain.cell_centers(1) - center[1]) / width
        dist2 = u0[:, None] ** 2 + u1[None, :] ** 2
    vals = np.zeros(domain.shape)
    inside = dist2 < 1.0
    vals[inside] = np.exp(1.0 - 1.0 / (1.0 - dist2[inside]))
    return vals


def _oracle_bump(domain: Domain) -> GridFunction:
    """Centered raised-cosine bump used for the quadrature-vs-oracle check.

    Half-width 0.04 of the side keeps the support well inside the central
    quarter, so the zero-extension quadrature and the periodic oracle see
    (almost) the same function.  The raised cosine concentrates the spectrum
    at low frequencies, where the discrete kernel sum and the exact symbol
    agree best.
    """
    width = 0.04 * domain.side
    u = (domain.cell_centers(0) - (domain.corner[0] + domain.side / 2.0)) / width
    vals = np.zeros_like(u)
    inside = np.abs(u) < 1.0
    vals[inside] = np.cos(np.pi * u[inside] / 2.0) ** 2
    return GridFunction(domain, vals)


def ensemble_function(domain: Domain, kind: str, seed: int) -> GridFunction:
    """Seeded test function of the named kind, supported in the central third."""
    if kind not in _KIND_TAG:
        raise ValueError(f"unknown ensemble kind {kind!r}")
    rng = np.random.default_rng([seed, _KIND_TAG[kind]])
    n = domain.cells_per_side
    lo, hi = _central_third(domain)
    h = domain.cell_width
    mid = np.array(
        [domain.corner[a] + domain.side / 2.0 for a in range(domain.dim)]
    )
    if kind == "bump":
        jitter = rng.uniform(-domain.side / 12.0, domain.side / 12.0, domain.dim)
        width = rng.uniform(domain.side / 32.0, domain.side / 12.0)
        amp = rng.uniform(0.5, 2.0)
        return GridFunction(domain, amp * _bump_values(domain, mid + jitter, width))
    if kind == "shifted_bump":
        shift = rng.choice([-1.0, 1.0], domain.dim) * domain.side / 8.0
        width = rng.uniform(domain.side / 24.0, domain.side / 10.0)
        amp = rng.uniform(0.5, 2.0)
        return GridFunction(domain, amp * _bump_values(domain, mid + shift, width))
    if kind == "random_signs":
        vals = rng.choice([-1.0, 1.0], domain.shape)
        return GridFunction(domain, vals)
    # the remaining kinds are indicator-shaped, on a dyadic cube inside the
    # central third
    depth_max = max(domain.depth - 2, 1)
    level = int(rng.integers(min(2, depth_max), depth_max + 1))
    side = n >> level
    span = hi - lo - side
    corner = []
    for _ in range(domain.dim):
        offset = int(rng.integers(0, max(span, 0) + 1))
        corner.append(lo + offset)
    cube = Cube(tuple(corner), side)
    sl = cube_slices(domain, cube)
    vals = np.zeros(domain.shape)
    if kind == "dyadic_indicator":
        vals[sl] = rng.uniform(0.5, 2.0)
    else:  # pm_indicator
        shape = tuple(s.stop - s.start for s in sl)
        vals[sl] = rng.choice([-1.0, 1.0], shape)
    return GridFunction(domain, vals)


def ensemble_kernels(
    dim: int, seed: int, spec1: Optional[dict] = None, spec2: Optional[dict] = None
) -> Tuple[KernelOmega, KernelOmega]:
    """Kernel pair for a seeded case; "auto" specs cycle through the roster."""

    def resolve(spec: Optional[dict], slot: int) -> KernelOmega:
        spec = spec or {"kind": "auto"}
        kind = spec.get("kind", "auto")
        if kind != "auto":
            return make_kernel(
                kind, dim, axis=spec.get("axis", 0), seed=spec.get("seed")
            )
        roster = seed % 3
        if roster == 0 or (roster == 1 and slot == 0):
            axis = (seed + slot) % 2 if dim == 2 else 0
            return make_kernel("riesz", dim, axis=axis)
        return make_kernel("random", dim, seed=1000 * seed + slot)

    return resolve(spec1, 0), resolve(spec2, 1)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

CSV_COLUMNS = (
    "case_id",
    "seed",
    "N",
    "p",
    "r",
    "a_exponent",
    "ratio",
    "fitted_C",
    "verdict",
)


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


@dataclass
class ExperimentReport:
    """One suite's outcome: per-case rows plus summary statistics."""

    experiment: str
    config: Dict[str, Any]
    cases: List[Dict[str, Any]]
    summary: Dict[str, Any]
    passed: bool
    wall_time: float

    def to_json(self) -> str:
        payload = {
            "experiment": self.experiment,
            "config": self.config,
            "cases": self.cases,
            "summary": self.summary,
            "passed": self.passed,
            "wall_time_s": self.wall_time,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        lines = [",".join(CSV_COLUMNS)]
        for case in self.cases:
            lines.append(",".join(_csv_cell(case.get(col)) for col in CSV_COLUMNS))
        return "\n".join(lines) + "\n"


def _case_row(
    case_id: str,
    verdict: bool,
    *,
    seed: Optional[int] = None,
    n: Optional[int] = None,
    p: Optional[float] = None,
    r: Optional[float] = None,
    a_exponent: Optional[float] = None,
    ratio: Optional[float] = None,
    fitted_c: Optional[float] = None,
    **extra: Any,
) -> Dict[str, Any]:
    row: Dict[str, Any] = {
        "case_id": case_id,
        "seed": seed,
        "N": n,
        "p": p,
        "r": r,
        "a_exponent": a_exponent,
        "ratio": ratio,
        "fitted_C": fitted_c,
        "verdict": "pass" if verdict else "fail",
    }
    row.update(extra)
    return row


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

DEFAULT_CONFIG: Dict[str, Any] = {
    "dimension": 1,
    "resolution": 128,
    "side": 1.0,
    "kernel1": {"kind": "auto"},
    "kernel2": {"kind": "auto"},
    "weight": {"type": "constant"},
    "p": 2.0,
    "r": 1.25,
    "beta": 1.0,
    "lambda_grid": {"lo": 0.05, "hi": 5.0, "points": 10},
    "seeds": list(range(20)),
    "experiments": [],
    "output_dir": "reports",
    "threads": None,
}


def resolve_config(partial: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """Fill in defaults; reject unknown keys.  Returns a fresh dict."""
    cfg = json.loads(json.dumps(DEFAULT_CONFIG))
    if partial:
        unknown = set(partial) - set(DEFAULT_CONFIG)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        for key, value in partial.items():
            cfg[key] = json.loads(json.dumps(value))
    n = cfg["resolution"]
    if not (isinstance(n, int) and n >= 4 and (n & (n - 1)) == 0):
        raise ValueError("resolution must be a power of two, at least 4")
    if cfg["dimension"] not in (1, 2):
        raise ValueError("dimension must be 1 or 2")
    if not 1.0 < cfg["r"] <= 1.5:
        raise ValueError("r outside (1, 3/2]")
    if not cfg["p"] > 1.0:
        raise ValueError("p must exceed 1")
    return cfg


def _domain_from_config(cfg: Dict[str, Any]) -> Domain:
    depth = int(cfg["resolution"]).bit_length() - 1
    return Domain(cfg["dimension"], float(cfg["side"]), depth)


def _weight_from_config(domain: Domain, spec: Dict[str, Any]) -> Weight:
    kind = spec.get("type", "constant")
    if kind == "constant":
        return Weight(GridFunction(domain, np.ones(domain.shape)))
    if kind == "power":
        center = spec.get("center")
        if center is not None:
            center = tuple(float(c) for c in center)
        return power_weight(domain, float(spec["exponent"]), center)
    raise ValueError(f"unknown weight type {spec.get('type')!r}")


def _lambda_grid_from_config(spec: Dict[str, Any]) -> np.ndarray:
    lo = float(spec.get("lo", 0.05))
    hi = float(spec.get("hi", 5.0))
    points = int(spec.get("points", 10))
    if not (0.0 < lo < hi and points >= 2):
        raise ValueError("lambda grid needs 0 < lo < hi and at least 2 points")
    return np.geomspace(lo, hi, points)


def _weight_a_exponent(cfg: Dict[str, Any]) -> Optional[float]:
    spec = cfg["weight"]
    if spec.get("type") == "power":
        return float(spec["exponent"])
    return None


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def _suite_reconstruction(cfg: Dict[str, Any]) -> ExperimentReport:
    t0 = time.perf_counter()
    dom = _domain_from_config(cfg)
    cases = []
    for seed in cfg["seeds"]:
        k1, k2 = ensemble_kernels(dom.dim, seed, cfg["kernel1"], cfg["kernel2"])
        t1 = TOmegaOperator(dom, k1)
        t2 = TOmegaOperator(dom, k2)
        f = ensemble_function(dom, _F_KINDS[seed % len(_F_KINDS)], seed)
        res = sparse_decompose(t1, t2, f, cfg["r"])
        ref = t1.apply(t2.apply(f)).values
        scale = float(np.abs(ref).max())
        err = float(np.abs(res.h1.values + res.h2.values - ref).max())
        if scale > 0.0:
            err /= scale
        ok = err <= 1e-9
        cases.append(
            _case_row(
                f"recon-s{seed:02d}",
                ok,
                seed=seed,
                n=dom.cells_per_side,
                r=cfg["r"],
                ratio=err,
                d_constant=res.d_constant,
                cubes=len(res.family.cubes),
            )
        )
    err_max = max((c["ratio"] for c in cases), default=0.0)
    passed = all(c["verdict"] == "pass" for c in cases)
    return ExperimentReport(
        "reconstruction",
        cfg,
        cases,
        {"max_rel_error": err_max},
        passed,
        time.perf_counter() - t0,
    )


def _suite_sparsity(cfg: Dict[str, Any]) -> ExperimentReport:
    t0 = time.perf_counter()
    dom = _domain_from_config(cfg)
    cases = []
    for seed in cfg["seeds"]:
        k1, k2 = ensemble_kernels(dom.dim, seed, cfg["kernel1"], cfg["kernel2"])
        t1 = TOmegaOperator(dom, k1)
        t2 = TOmegaOperator(dom, k2)
        f = ensemble_function(dom, _F_KINDS[seed % len(_F_KINDS)], seed)
        res = sparse_decompose(t1, t2, f, cfg["r"])
        fam = res.family
        outcome = certify_sparsity(fam.cubes, fam.eta, dom)
        # stored certificates carry the per-tree guarantee: each cube keeps
        # at least half of its own cells
        tree_ok = all(
            2 * len(cells) >= cube.n_cells
            for cube, cells in zip(fam.cubes, fam.cert_cells)
        )
        frac = min(
            (len(cells) / cube.n_cells for cube, cells in zip(fam.cubes, fam.cert_cells)),
            default=1.0,
        )
        ok = outcome.ok and tree_ok
        cases.append(
            _case_row(
                f"sparse-s{seed:02d}",
                ok,
                seed=seed,
                n=dom.cells_per_side,
                r=cfg["r"],
                ratio=frac,
                fitted_c=fam.eta,
                cubes=len(fam.cubes),
            )
        )
    passed = all(c["verdict"] == "pass" for c in cases)
    return ExperimentReport(
        "sparsity",
        cfg,
        cases,
        {"eta_global": 0.5 * 9.0 ** (-dom.dim), "eta_tree": 0.5},
        passed,
        time.perf_counter() - t0,
    )


def cz_check(e_mask: np.ndarray, q0: Cube, domain: Domain) -> Dict[str, Any]:
    """Exact stopping-cube properties for one selected-set decomposition."""
    cubes = cz_decompose_set(e_mask, q0)
    covered = np.zeros(domain.shape, dtype=bool)
    sandwich_ok = True
    total = 0
    dim = domain.dim
    for p_cube in cubes:
        sl = cube_slices(domain, p_cube)
        if covered[sl].any():
            raise RuntimeError("stopping cubes overlap")
        covered[sl] = True
        cnt = int(e_mask[sl].sum())
        n_cells = p_cube.n_cells
        if not (2 ** (dim + 1) * cnt >= n_cells and 2 * cnt <= n_cells):
            sandwich_ok = False
        total += n_cells
    coverage_ok = not (e_mask & ~covered).any()
    sum_ok = 2 * total <= q0.n_cells
    return {
        "n_cubes": len(cubes),
        "sandwich_ok": sandwich_ok,
        "coverage_ok": coverage_ok,
        "sum_ok": sum_ok,
        "fraction": total / q0.n_cells,
    }


def _suite_cz_sandwich(cfg: Dict[str, Any]) -> ExperimentReport:
    t0 = time.perf_counter()
    dom = _domain_from_config(cfg)
    root = dom.root
    n_cells = root.n_cells
    cases = []
    for seed in cfg["seeds"]:
        rng = np.random.default_rng([seed, 31])
        density = rng.uniform(0.3, 1.0) / 2 ** (dom.dim + 2)
        count = int(n_cells * density)
        mask = np.zeros(n_cells, dtype=bool)
        mask[rng.choice(n_cells, size=count, replace=False)] = True
        mask = mask.reshape(dom.shape)
        info = cz_check(mask, root, dom)
        ok = info["sandwich_ok"] and info["coverage_ok"] and info["sum_ok"]
        cases.append(
            _case_row(
                f"cz-s{seed:02d}",
                ok,
                seed=seed,
                n=dom.cells_per_side,
                ratio=info["fraction"],
                cubes=info["n_cubes"],
            )
        )
    passed = all(c["verdict"] == "pass" for c in cases)
    return ExperimentReport(
        "cz_sandwich",
        cfg,
        cases,
        {"level": 0.5 ** (dom.dim + 1)},
        passed,
        time.perf_counter() - t0,
    )


def _suite_rubio(cfg: Dict[str, Any]) -> ExperimentReport:
    t0 = time.perf_counter()
    dom = _domain_from_config(cfg)
    a_values = (None, -0.5, 0.5)
    p_values = (1.5, 2.0, 3.0)
    cases = []
    for seed in cfg["seeds"]:
        a = a_values[seed % len(a_values)]
        p = p_values[seed % len(p_values)]
        v = (
            _weight_from_config(dom, {"type": "constant"})
            if a is None
            else power_weight(dom, a)
        )
        f = ensemble_function(dom, _F_KINDS[seed % len(_F_KINDS)], seed)
        h = GridFunction(dom, np.abs(f.values))
        maj, info = rubio_de_francia(h, v, p, K=40, details=True)
        pointwise_ok = bool((maj.values >= h.values).all())
        base = lp_norm(h, p, v.func)
        norm_ratio = lp_norm(maj, p, v.func) / base if base > 0 else 0.0
        a1_ratio = a1_constant(
            Weight(GridFunction(dom, maj.values * v.func.values ** (1.0 / p)))
        ) / dual_exponent(p)
        ok = pointwise_ok and norm_ratio <= 2.0 * (1.0 + 1e-6)
        cases.append(
            _case_row(
                f"rubio-s{seed:02d}",
                ok,
                seed=seed,
                n=dom.cells_per_side,
                p=p,
                a_exponent=a,
                ratio=norm_ratio,
                fitted_c=a1_ratio,
                s_norm=info["s_norm"],
            )
        )
    passed = all(c["verdict"] == "pass" for c in cases)
    max_a1 = max((c["fitted_C"] for c in cases), default=0.0)
    return ExperimentReport(
        "rubio",
        cfg,
        cases,
        {"max_a1_over_pprime": max_a1, "terms": 40},
        passed,
        time.perf_counter() - t0,
    )


def _suite_reverse_holder(cfg: Dict[str, Any]) -> ExperimentReport:
    t0 = time.perf_counter()
    dom = _domain_from_config(cfg)
    cases = []
    for a in (-0.5, 0.0, 0.5, 1.0):
        w = (
            _weight_from_config(dom, {"type": "constant"})
            if a == 0.0
            else power_weight(dom, a)
        )
        delta = reverse_holder_delta(w)
        sweep = reverse_holder_sweep(
            w, delta=delta, policy=CubeCollection(dom, "dyadic")
        )
        ok = sweep["failures"] == 0
        cases.append(
            _case_row(
                f"rh-a{a:+.1f}",
                ok,
                n=dom.cells_per_side,
                a_exponent=a,
                ratio=sweep["max_ratio"],
                fitted_c=delta,
                cubes=sweep["n_cubes"],
            )
        )
    passed = all(c["verdict"] == "pass" for c in cases)
    return ExperimentReport(
        "reverse_holder",
        cfg,
        cases,
        {"rule": "delta = 1 + 1/(2^(11+d) [w]_Ainf)"},
        passed,
        time.perf_counter() - t0,
    )


def _suite_quadrature(cfg: Dict[str, Any]) -> ExperimentReport:
    t0 = time.perf_counter()
    if cfg["dimension"] != 1:
        raise ValueError("the quadrature suite runs in dimension 1")
    kernel = make_kernel("hilbert", 1)
    errors = []
    cases = []
    resolutions = [64, 128, 256]
    if cfg["resolution"] not in resolutions:
        resolutions.append(cfg["resolution"])
        resolutions.sort()
    for n in resolutions:
        dom = Domain(1, float(cfg["side"]), n.bit_length() - 1)
        f = _oracle_bump(dom)
        approx = t_omega(kernel, f).values
        oracle = spectral_oracle(kernel, f).values
        err = float(
            np.sqrt(np.sum((approx - oracle) ** 2) / np.sum(oracle**2))
        )
        errors.append(err)
        cases.append(_case_row(f"quad-n{n}", True, n=n, ratio=err))
    decreasing = all(errors[i + 1] < errors[i] for i in range(len(errors) - 1))
    final_ok = errors[-1] <= 0.10
    for case in cases:
        case["verdict"] = "pass" if (decreasing and final_ok) else "fail"
    return ExperimentReport(
        "quadrature",
        cfg,
        cases,
        {"errors": errors, "decreasing": decreasing},
        decreasing and final_ok,
        time.perf_counter() - t0,
    )


def _suite_sparse_domination(cfg: Dict[str, Any]) -> ExperimentReport:
    t0 = time.perf_counter()
    dom = _domain_from_config(cfg)
    cases = []
    for seed in cfg["seeds"]:
        k1, k2 = ensemble_kernels(dom.dim, seed, cfg["kernel1"], cfg["kernel2"])
        f = ensemble_function(dom, _F_KINDS[seed % len(_F_KINDS)], seed)
        g = ensemble_function(dom, _G_KINDS[seed % len(_G_KINDS)], seed)
        ratio1, ratio2 = sparse_domination_ratio(f, g, k1, k2, cfg["r"])
        ok = math.isfinite(ratio1) and math.isfinite(ratio2)
        cases.append(
            _case_row(
                f"dom-s{seed:02d}",
                ok,
                seed=seed,
                n=dom.cells_per_side,
                r=cfg["r"],
                ratio=ratio1,
                fitted_c=ratio2,
            )
        )
    max1 = max((c["ratio"] for c in cases), default=0.0)
    max2 = max((c["fitted_C"] for c in cases), default=0.0)
    passed = all(c["verdict"] == "pass" for c in cases)
    return ExperimentReport(
        "sparse_domination",
        cfg,
        cases,
        {"max_ratio1": max1, "max_ratio2": max2},
        passed,
        time.perf_counter() - t0,
    )


_RESCALE_DECADES = tuple(float(10.0**k) for k in range(-3, 4))


def _suite_weak_type(cfg: Dict[str, Any]) -> ExperimentReport:
    t0 = time.perf_counter()
    dom = _domain_from_config(cfg)
    lam_grid = _lambda_grid_from_config(cfg["lambda_grid"])
    k1, k2 = ensemble_kernels(dom.dim, 0, cfg["kernel1"], cfg["kernel2"])
    u_comp = lambda f: compose(k1, k2, f)  # noqa: E731
    ones = Weight(GridFunction(dom, np.ones(dom.shape)))
    cases = []
    seeds = cfg["seeds"][: max(4, len(cfg["seeds"]) // 4)]
    # weighted endpoint: power weights in the integrable range
    for a in (0.0, -0.3, -0.6, -0.85):
        w = ones if a == 0.0 else power_weight(dom, a)
        bound = thm12_bound(w)
        worst = 0.0
        for seed in seeds:
            f = ensemble_function(dom, _F_KINDS[seed % len(_F_KINDS)], seed)
            for c in _RESCALE_DECADES:
                scaled = GridFunction(dom, c * f.values)
                worst = max(
                    worst,
                    weak_type_modular_ratio(
                        u_comp, scaled, w, 1.0, lam_grid, bound
                    ),
                )
        cases.append(
            _case_row(
                f"wt-weighted-a{a:+.2f}",
                math.isfinite(worst),
                n=dom.cells_per_side,
                a_exponent=a,
                ratio=worst,
                fitted_c=bound,
            )
        )
    # unweighted endpoint for the same composition
    worst = 0.0
    for seed in seeds:
        f = ensemble_function(dom, _F_KINDS[seed % len(_F_KINDS)], seed)
        for c in _RESCALE_DECADES:
            scaled = GridFunction(dom, c * f.values)
            worst = max(
                worst,
                weak_type_modular_ratio(u_comp, scaled, ones, 1.0, lam_grid, 1.0),
            )
    cases.append(
        _case_row(
            "wt-unweighted",
            math.isfinite(worst),
            n=dom.cells_per_side,
            ratio=worst,
            fitted_c=1.0,
        )
    )
    passed = all(c["verdict"] == "pass" for c in cases)
    max_ratio = max((c["ratio"] for c in cases), default=0.0)
    return ExperimentReport(
        "weak_type",
        cfg,
        cases,
        {"max_ratio": max_ratio, "rescale_decades": 6},
        passed,
        time.perf_counter() - t0,
    )


def _suite_strong_type(cfg: Dict[str, Any]) -> ExperimentReport:
    t0 = time.perf_counter()
    dom = _domain_from_config(cfg)
    k1, k2 = ensemble_kernels(dom.dim, 0, cfg["kernel1"], cfg["kernel2"])
    ones = Weight(GridFunction(dom, np.ones(dom.shape)))
    p = cfg["p"]
    cases = []
    seeds = cfg["seeds"][: max(4, len(cfg["seeds"]) // 4)]
    for a in (0.0, -0.5, 0.5, 1.0):
        w = ones if a == 0.0 else power_weight(dom, a)
        worst = 0.0
        for seed in seeds:
            f = ensemble_function(dom, _F_KINDS[seed % len(_F_KINDS)], seed)
            worst = max(worst, strong_type_ratio(k1, k2, f, w, p))
        cases.append(
            _case_row(
                f"st-a{a:+.1f}",
                math.isfinite(worst),
                n=dom.cells_per_side,
                p=p,
                a_exponent=a,
                ratio=worst,
            )
        )
    passed = all(c["verdict"] == "pass" for c in cases)
    return ExperimentReport(
        "strong_type",
        cfg,
        cases,
        {"max_ratio": max((c["ratio"] for c in cases), default=0.0)},
        passed,
        time.perf_counter() - t0,
    )


def _suite_formula_checks(cfg: Dict[str, Any]) -> ExperimentReport:
    t0 = time.perf_counter()
    dom = _domain_from_config(cfg)
    ones = Weight(GridFunction(dom, np.ones(dom.shape)))
    cases = []
    exact = thm11_bound(ones, 2.0)
    cases.append(
        _case_row(
            "formula-unit",
            exact == 4.0,
            n=dom.cells_per_side,
            p=2.0,
            a_exponent=0.0,
            ratio=exact,
            fitted_c=4.0,
        )
    )
    p = cfg["p"]
    for a in (-0.5, 0.0, 0.5, 1.0):
        w = ones if a == 0.0 else power_weight(dom, a)
        chk = remark11_check(w, p)
        ok = chk["product_ok"] and chk["prefactor_ok"]
        cases.append(
            _case_row(
                f"formula-a{a:+.1f}",
                ok,
                n=dom.cells_per_side,
                p=p,
                a_exponent=a,
                ratio=chk["thm11"] / chk["eq13"] ** 2,
                fitted_c=chk["thm11"],
            )
        )
    passed = all(c["verdict"] == "pass" for c in cases)
    return ExperimentReport(
        "formula_checks",
        cfg,
        cases,
        {"unit_value": exact},
        passed,
        time.perf_counter() - t0,
    )


def _suite_eq34(cfg: Dict[str, Any]) -> ExperimentReport:
    t0 = time.perf_counter()
    dom = _domain_from_config(cfg)
    w = _weight_from_config(dom, cfg["weight"])
    p = cfg["p"]
    bf = BoundFormulas.from_weight(w, p)
    cases = []
    for seed in cfg["seeds"]:
        k1, k2 = ensemble_kernels(dom.dim, seed, cfg["kernel1"], cfg["kernel2"])
        f = ensemble_function(dom, _F_KINDS[seed % len(_F_KINDS)], seed)
        g = ensemble_function(dom, _G_KINDS[seed % len(_G_KINDS)], seed)
        _, _, family = corollary51_split(k1, k2, f, cfg["r"])
        ratio = eq34_ratio(family, f, g, w, p, bf=bf)
        comparison = orlicz_vs_lr_ratio(family, f, g, bf)
        ok = math.isfinite(ratio) and math.isfinite(comparison)
        cases.append(
            _case_row(
                f"eq34-s{seed:02d}",
                ok,
                seed=seed,
                n=dom.cells_per_side,
                p=p,
                r=cfg["r"],
                a_exponent=_weight_a_exponent(cfg),
                ratio=ratio,
                fitted_c=comparison,
            )
        )
    passed = all(c["verdict"] == "pass" for c in cases)
    return ExperimentReport(
        "eq34",
        cfg,
        cases,
        {
            "eps1": bf.eps1,
            "eps2": bf.eps2,
            "fitted_C": max((c["ratio"] for c in cases), default=0.0),
        },
        passed,
        time.perf_counter() - t0,
    )


def _suite_lemma_shapes(cfg: Dict[str, Any]) -> ExperimentReport:
    t0 = time.perf_counter()
    dom = _domain_from_config(cfg)
    k1, k2 = ensemble_kernels(dom.dim, 0, cfg["kernel1"], cfg["kernel2"])
    t1 = TOmegaOperator(dom, k1)
    t2 = TOmegaOperator(dom, k2)
    w = _weight_from_config(dom, cfg["weight"])
    bf = BoundFormulas.from_weight(w, cfg["p"])
    cases = []
    seeds = cfg["seeds"][:4]
    # dual-weight maximal inequality
    worst = 0.0
    for seed in seeds:
        f = ensemble_function(dom, _F_KINDS[seed % len(_F_KINDS)], seed)
        worst = max(worst, lemma21_ratio(f, w, cfg["p"], bf.t))
    cases.append(
        _case_row(
            "shape-maximal-dual",
            math.isfinite(worst),
            n=dom.cells_per_side,
            p=cfg["p"],
            a_exponent=_weight_a_exponent(cfg),
            ratio=worst,
        )
    )
    # local mean of a weak-type operator against the local norm
    cubes = CubeCollection(
        dom, "dyadic", min_side=max(dom.cells_per_side // 8, 2)
    ).cubes()
    worst = 0.0
    for seed in seeds:
        f = ensemble_function(dom, _F_KINDS[seed % len(_F_KINDS)], seed)
        worst = max(worst, local_orlicz_ratio(t1.apply, f, cubes, 0.0))
    cases.append(
        _case_row(
            "shape-local-mean",
            math.isfinite(worst),
            n=dom.cells_per_side,
            ratio=worst,
        )
    )
    # composite grand maximal controlled by its one-operator majorant
    worst = 0.0
    for seed in seeds[:2]:
        f = ensemble_function(dom, _F_KINDS[seed % len(_F_KINDS)], seed)
        worst = max(worst, composite_shape_ratio(t1, t2, f, cfg["r"]))
    cases.append(
        _case_row(
            "shape-composite-maximal",
            math.isfinite(worst),
            n=dom.cells_per_side,
            r=cfg["r"],
            ratio=worst,
        )
    )
    passed = all(c["verdict"] == "pass" for c in cases)
    return ExperimentReport(
        "lemma_shapes",
        cfg,
        cases,
        {"max_ratio": max((c["ratio"] for c in cases), default=0.0)},
        passed,
        time.perf_counter() - t0,
    )


@dataclass(frozen=True)
class SuiteSpec:
    name: str
    description: str
    runner: Callable[[Dict[str, Any]], ExperimentReport]


SUITES: Dict[str, SuiteSpec] = {
    spec.name: spec
    for spec in (
        SuiteSpec(
            "reconstruction",
            "split a composed singular integral into local pieces and check the sum reproduces it exactly",
            _suite_reconstruction,
        ),
        SuiteSpec(
            "sparsity",
            "certify the decomposition family at its stated density, globally and per tree",
            _suite_sparsity,
        ),
        SuiteSpec(
            "cz_sandwich",
            "stopping cubes of a selected set: measure sandwich, coverage, and total-size bounds",
            _suite_cz_sandwich,
        ),
        SuiteSpec(
            "rubio",
            "iterated-maximal majorant: pointwise lower bound, norm doubling, and its A1 ratio",
            _suite_rubio,
        ),
        SuiteSpec(
            "reverse_holder",
            "self-improvement of weight averages at the prescribed exponent on every dyadic cube",
            _suite_reverse_holder,
        ),
        SuiteSpec(
            "quadrature",
            "singular quadrature against the spectral evaluation on a smooth bump, across resolutions",
            _suite_quadrature,
        ),
        SuiteSpec(
            "sparse_domination",
            "pairing-to-form ratios for the two pieces of the composition split",
            _suite_sparse_domination,
        ),
        SuiteSpec(
            "weak_type",
            "weighted and unweighted modular level-set ratios over a level grid and rescalings",
            _suite_weak_type,
        ),
        SuiteSpec(
            "strong_type",
            "weighted norm of the composition against the formula bound",
            _suite_strong_type,
        ),
        SuiteSpec(
            "formula_checks",
            "closed-form constants: unit-weight value and the two comparison inequalities",
            _suite_formula_checks,
        ),
        SuiteSpec(
            "eq34",
            "two-index sparse form against the weighted norm product, with the Orlicz comparison",
            _suite_eq34,
        ),
        SuiteSpec(
            "lemma_shapes",
            "fitted constants for the maximal-dual, local-mean, and composite-maximal inequalities",
            _suite_lemma_shapes,
        ),
    )
}


def run_suite(name: str, config: Optional[Dict[str, Any]] = None) -> ExperimentReport:
    """Run one named suite on a (partial) configuration."""
    if name not in SUITES:
        raise ValueError(f"unknown experiment {name!r}")
    return SUITES[name].runner(resolve_config(config))


def run_experiments(config: Optional[Dict[str, Any]] = None) -> List[ExperimentReport]:
    """Run every experiment listed in the configuration, in order."""
    cfg = resolve_config(config)
    return [run_suite(name, cfg) for name in cfg["experiments"]]
