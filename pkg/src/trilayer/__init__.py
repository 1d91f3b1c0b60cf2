"""Linear stability of three-layer constant-viscosity Hele-Shaw displacement."""
from .analysis import GrowthCurve, max_growth, optimize_mu, param_scan, sweep
from .compat import (
    CompatibilityReport,
    branch_limit_report,
    feasible_mu,
    r9_identity_residuals,
    tension_ratio_residual,
)
from .dispersion import (
    SpectralPoint,
    asymptotic_growth_rates,
    collapsed_layer_rate,
    determinant_residual,
    growth_rates,
    mobility_terms,
    quadratic_coefficients,
)
from .eigen import (
    EigenPair,
    NumericalError,
    amplitude_at,
    amplitude_ratio,
    boundary_residuals,
    eigenpair,
    interface_ratio,
    null_vector,
    perturbation_velocity,
)
from .model import ConfigError, FlowConfig, ValidatedConfig, parse_config, validate, viscosity_at

__version__ = "0.1.0"
