"""Copula-based worst/best-case outage probability bounds for slow fading."""

from .bounds import (
    PRODUCT,
    SUM,
    BinaryOp,
    BoundResult,
    bound_result,
    closed_form_sum_exponential,
    closed_form_sum_uniform,
    custom_op,
    numerical_bounds,
    phi_upper,
    tau_lower,
)
from .copulas import M, PI, W, Copula, check_copula, custom, sklar_joint_cdf
from .errors import (
    ConstructionUnverified,
    CopulaOutageError,
    DomainError,
    InvalidInterval,
    MaxIterExceeded,
    NoBracket,
    TypeMismatch,
)
from .marginals import Exponential, Marginal, Uniform, parse_marginal
from .numerics import (
    DEFAULT_TOL,
    RandomSource,
    Tolerance,
    bessel_k1,
    find_root,
    maximize_scalar,
    minimize_scalar,
)
from .outage import (
    CorrelationModel,
    MacThresholds,
    RateConfig,
    correlated_rayleigh_outage_mc,
    mac_bruteforce_lower,
    mac_bruteforce_upper,
    mac_outage_lower,
    mac_outage_upper,
    p2p_outage_bounds,
    ris_independent_outage,
    ris_outage_bounds,
    snr_from_db,
)
from .worstcase import (
    AttainingJoint,
    attainment_audit,
    lower_attaining,
    marginal_audit,
    sample_lower_attaining,
    sample_upper_attaining,
    upper_attaining,
)

__version__ = "0.1.0"
