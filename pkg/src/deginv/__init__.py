"""deginv: theta functions, Siegel modular forms, and the invariants of
degenerating genus-two period-matrix families.

The library computes, with certified truncation error, the Dedekind eta
function, genus-1/2 theta functions with half-integer characteristics, the
weight-10 Siegel cusp form chi10 and its Petersson norm, the canonical
Green's function on a complex torus, and the Faltings delta, Kawazumi-Zhang
phi and Hain-Reed beta invariants in the cases where closed formulas exist.
On top of that it sweeps two degenerating families of genus-2 period
matrices and verifies the closed-form limits of the regularized
beta-invariant, reporting extrapolated limits and convergence diagnostics.
"""

from .errors import (
    AccuracyError,
    DeginvError,
    DomainError,
    FitError,
    NonTerminationError,
    VanishingError,
)
from .theta import (
    DEFAULT_ACCURACY,
    AccuracyTarget,
    SiegelPoint2,
    ThetaChar2,
    UpperHalfPoint,
    eta,
    even_characteristics,
    log_abs_eta,
    log_abs_theta_odd,
    odd_characteristics,
    theta_char_genus2,
    theta_odd_genus1,
    truncation_radius,
)
from .modular import (
    PeterssonValue,
    chi10,
    log_petersson_chi10,
    log_petersson_eta,
    reduce_fundamental_domain,
)
from .invariants import (
    EllipticCurveData,
    GenusSplit,
    LimitLaw,
    PhiLimit,
    RegularizedLimit,
    TorusDisplacement,
    arakelov_d_torus,
    beta_from_lambda,
    beta_genus2,
    beta_limit,
    beta_limit_law,
    combine_phi_delta_laws,
    delta_elliptic,
    delta_limit,
    delta_limit_law,
    green_torus,
    lambda_invariant,
    phi_genus1,
    phi_limit,
    phi_limit_law,
)
from .degeneration import (
    NonSeparatingFamily,
    SeparatingFamily,
    SweepGrid,
    SweepReport,
    chi10_leading_ratio,
    log_q_from_log_tau,
    nonsep_det_deficit,
    nonsep_period_matrix,
    regularized_beta_nonseparating_q,
    regularized_beta_separating,
    rhs_nonseparating_q,
    rhs_nonseparating_tau,
    rhs_separating,
    run_sweep,
    sep_period_matrix,
)

__version__ = "0.1.0"
