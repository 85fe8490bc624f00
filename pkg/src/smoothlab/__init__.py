"""smoothlab: a spectral laboratory for nonlinear smoothing of random
Gaussian Fourier data under the periodic KdV and cubic Szego flows."""

from .spectral import (
    ANALYTIC_NONNEG,
    GENERAL,
    REAL_MEAN_ZERO,
    LatticeSpec,
    ModeVector,
    NormParams,
    bracket,
    convolve,
    derivative,
    fl_norm,
    from_physical,
    project_szego,
    remove_mean,
    sobolev_norm,
    sup_fourier,
    to_physical,
)
from .sampling import (
    GaussianDraw,
    derive_trial_seed,
    dyadic_average,
    mode_gaussian,
    sample_kdv_data,
    sample_szego_data,
    tail_statistic,
)
from .kdv import (
    KdvConstants,
    expected_paired_sum,
    kdv_constants,
    kdv_nonlinearity,
    l2_bound_scan,
    linear_flow,
    paired_sum_divergence,
    power_law_data,
    second_iterate_closed_form,
    second_iterate_quadrature,
    truncation_convergence,
)
from .szego import (
    WickReport,
    hs_growth_curve,
    szego_second_iterate,
    szego_trilinear,
    wick_expectation_exact,
    wick_expectation_mc,
)
from .evolution import (
    IntegratorConfig,
    Trajectory,
    evolve_kdv,
    evolve_szego,
    smoothing_profile,
)
from .bourgain import (
    SpaceTimeField,
    TimeWindow,
    cutoff_eta,
    region_decompose,
    restricted_bilinear_masses,
    restricted_bilinear_norm,
    strichartz_ratio,
    type_one_field,
    xsb_norm,
    ysb_norm,
    zsb_norm,
)
from .statsum import FitResult, RungStats, StatSummary
from .experiments import ExperimentConfig, list_experiments, run

__version__ = "0.1.0"
