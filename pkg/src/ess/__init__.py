"""Effective support size of discrete and continuous distributions."""

from .conditional import (
    ChainReport,
    JointPmf,
    chain_identity_rhs,
    conditional_entropy,
    conditional_y_given_x,
    flatten,
    make_joint,
    marginal_x,
    marginal_y,
    mean_conditional_ess,
    product_joint,
    verify_chain_identity,
)
from .continuous import (
    DensitySpec,
    Exponential,
    Gaussian,
    Grid,
    Uniform,
    ess_continuous_closed_form,
    ess_continuous_quadrature,
    make_density,
)
from .core import (
    INF,
    ONE,
    TABLE1_ALPHAS,
    AlphaKind,
    AlphaParam,
    EssProfile,
    Pmf,
    delta,
    ess,
    ess_profile,
    make_pmf,
    product_pmf,
    renyi_entropy,
    shannon_entropy,
    support_size,
    uniform,
)
from .errors import (
    ConditioningError,
    DomainError,
    EssError,
    NormalizationError,
    ParseError,
    QuadratureError,
    UnsupportedFamily,
)

__version__ = "0.1.0"
