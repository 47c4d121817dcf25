"""Collapse-model bound-state excitation rates and coupling exclusion bounds.

The package computes first-order collapse-induced dissociation rates for
the deuteron, propagates asymmetric counting uncertainties for a
heavy-water exposure, and inverts count limits into coupling-constant
exclusion curves over the lambda/a^2 parameter space.
"""

from .config import (
    ConfigError,
    ModelSpec,
    RunConfig,
    build_model,
    config_to_dict,
    default_config,
    load_config,
    parse_config,
    serialize_config,
)
from .constants import (
    CODATA,
    GRW_A_LENGTH,
    GRW_LAMBDA_OVER_A2,
    GRW_LAMBDA_RATE,
    CollapseParams,
    PhysicalConstants,
    RateDensity,
    grw_defaults,
    lambda_over_a2,
)
from .deuteron import (
    BoundStateModel,
    ModelKind,
    SpectrumDensity,
    binding_wavenumber,
    build_hulthen,
    build_zero_range,
    default_k_grid,
    dipole_radial_integral,
    legendre_dipole_weight,
    mean_square_radius,
    partial_wave_matrix_element,
    spectrum_density,
)
from .limits import (
    RADIATION_CEILING,
    AnalysisReport,
    CouplingBound,
    ElectronBound,
    ExclusionCurve,
    ExclusionPoint,
    ExperimentConfig,
    ObservedCounts,
    ScanSpec,
    SphereVisibilityConfig,
    electron_coupling_bound,
    net_csl_counts,
    neutron_coupling_bound,
    round_up_one_significant,
    run_full_analysis,
    scan_exclusion,
    small_a_floor_coefficient,
    theoretical_floor,
    visibility_floor_large_a,
    visibility_floor_small_a,
)
from .quadrature import DEFAULT_QUAD, QuadratureError, QuadratureSpec, integrate_radial
from .rates import (
    CountPrediction,
    ExcitationRate,
    MatrixElementSq,
    com_reduction_coefficients,
    count_coefficient,
    deuteron_rate,
    deuteron_spectrum,
    expected_count,
    general_rate,
    relative_coupling_weight,
)
from .uncertainty import (
    AsymmetricValue,
    add,
    combine_quadrature,
    from_rate_per_day,
    one_sided_upper_limit,
    scale,
    subtract,
)

__version__ = "0.1.0"
