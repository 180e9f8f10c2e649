"""High-precision central values of Dedekind zeta functions and quadratic
Dirichlet L-functions, with rigorous error radii and non-vanishing
certification."""

from .arith import (
    FactoredInteger,
    factorize,
    fundamental_discriminant,
    is_fundamental_discriminant,
    is_squarefree,
    kronecker,
    multiplicatively_independent,
)
from .dedekind import (
    ABELIAN_DEGREE_BOUND,
    Certificate,
    FieldSignature,
    a_factor,
    a_prime_half,
    abelian_lower_bound_check,
    certify,
    certify_abelian,
    corollary7_constant,
    exceptional_interval,
    remark_degree,
    theorem1_gap,
    theorem6_condition1,
    theorem6_gap,
    threshold_constants,
)
from .hurwitz import HurwitzParams, hurwitz_zeta, hurwitz_zeta_ds
from .lfunc import (
    CentralValues,
    QuadraticCharacter,
    RouteDisagreement,
    l_value,
    l_value_ds,
    quad_central,
    riemann_zeta,
    riemann_zeta_ds,
)
from .mpreal import (
    BoundedReal,
    DomainError,
    PrecisionContext,
    PrecisionExhausted,
    bernoulli,
    constant_gamma,
    constant_log,
    constant_pi,
    digamma_half,
    gamma,
    power,
    render,
)
from .survey import SurveyReport, enumerate_odd_squarefree, run_survey

__version__ = "0.1.0"

__all__ = [
    "ABELIAN_DEGREE_BOUND",
    "BoundedReal",
    "CentralValues",
    "Certificate",
    "DomainError",
    "FactoredInteger",
    "FieldSignature",
    "HurwitzParams",
    "PrecisionContext",
    "PrecisionExhausted",
    "QuadraticCharacter",
    "RouteDisagreement",
    "SurveyReport",
    "a_factor",
    "a_prime_half",
    "abelian_lower_bound_check",
    "bernoulli",
    "certify",
    "certify_abelian",
    "constant_gamma",
    "constant_log",
    "constant_pi",
    "corollary7_constant",
    "digamma_half",
    "enumerate_odd_squarefree",
    "exceptional_interval",
    "factorize",
    "fundamental_discriminant",
    "gamma",
    "hurwitz_zeta",
    "hurwitz_zeta_ds",
    "is_fundamental_discriminant",
    "is_squarefree",
    "kronecker",
    "l_value",
    "l_value_ds",
    "multiplicatively_independent",
    "power",
    "quad_central",
    "remark_degree",
    "render",
    "riemann_zeta",
    "riemann_zeta_ds",
    "run_survey",
    "theorem1_gap",
    "theorem6_condition1",
    "theorem6_gap",
    "threshold_constants",
]
