"""Numerical toolkit for sparse domination of composed rough singular integrals.

The package discretizes cubes in dimension 1 or 2, evaluates rough
convolution operators and their compositions, decomposes a composition into
sparse local pieces with certified density, and measures how the resulting
bilinear forms and weighted bound formulas behave on seeded ensembles.
"""

from .grid import (
    Cube,
    Domain,
    GridFunction,
    ShiftedDyadicGrid,
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
from .orlicz import luxemburg_norm, mean_r, orlicz_modular, young_phi
from .maximal import (
    CubeCollection,
    default_policy,
    grand_maximal,
    grand_maximal_composite,
    hl_maximal,
    m_beta,
    m_llogl,
    stopping_cubes,
)
from .weights import (
    Weight,
    a1_constant,
    ainfty_constant,
    ap_constant,
    dual_exponent,
    power_weight,
    reverse_holder_check,
    reverse_holder_delta,
    reverse_holder_sweep,
    rubio_de_francia,
)
from .singular import (
    RIESZ_SYMBOL_SCALE,
    IdentityOperator,
    KernelOmega,
    TOmegaOperator,
    compose,
    make_kernel,
    spectral_oracle,
    t_omega,
)
from .sparse import (
    CertifyResult,
    DecompositionResult,
    SparseFamily,
    bilinear_form_lr,
    bilinear_form_orlicz,
    certify_sparsity,
    corollary51_split,
    cz_decompose_set,
    exceptional_sets,
    parse_family,
    serialize_family,
    sparse_decompose,
)
from .verify import (
    SUITES,
    BoundFormulas,
    ExperimentReport,
    cor31_bound,
    eq13_bound,
    eq34_ratio,
    ensemble_function,
    ensemble_kernels,
    lemma21_ratio,
    lemma31_bound,
    local_orlicz_ratio,
    composite_shape_ratio,
    orlicz_vs_lr_ratio,
    remark11_check,
    resolve_config,
    run_experiments,
    run_suite,
    sparse_domination_ratio,
    strong_type_ratio,
    thm11_bound,
    thm12_bound,
    thm31_constant,
    weak_type_modular_ratio,
)

__version__ = "0.1.0"
