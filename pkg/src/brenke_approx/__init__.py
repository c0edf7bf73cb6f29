"""Stancu-type positive linear operators from generalized Brenke families.

The package builds the weight polynomials pi_k of a family (A1, A2, h)
via A1(h(t)) A2(x h(t)) = sum_k pi_k(x) t^k, applies the operators

    L_n f(x) = sum_k w_k(n, x) f((k + nu1)/(n + nu2)),

computes their moments in closed form, and verifies the first-modulus,
Lipschitz, K-functional and second-modulus error bounds numerically.
"""

from .bounds import (
    BoundReport,
    k_functional_bound,
    lipschitz_bound,
    modulus_bound,
    second_modulus_bound,
    verify,
)
from .families import (
    BUILTIN_NAMES,
    FamilySpec,
    StancuParams,
    ValidationReport,
    builtin_family,
    make_appell,
    make_appell_exp,
    make_custom,
    make_gould_hopper,
    make_miller_lee,
    make_szasz,
    validate,
)
from .functions import REGISTRY as FUNCTION_REGISTRY
from .functions import TestFunction
from .moments import (
    MomentReport,
    central_moments,
    derived_quantities,
    moment_report,
    power_sums,
    raw_moments,
)
from .operators import (
    MassDeficitError,
    NonFiniteSampleError,
    PositivityError,
    TruncationPolicy,
    WeightVector,
    apply,
    jakimovski_leviatan_apply,
    szasz_apply,
    weights,
)
from .series import (
    DEFAULT_K_MAX,
    BrenkeTable,
    as_series,
    brenke_table,
    eval_pi,
    exp_series,
    geometric_series,
    identity_series,
    one_series,
    series_compose,
    series_mul,
)
from .smoothness import (
    GridTooCoarseError,
    SmoothnessEstimate,
    WindowGrid,
    WindowTooSmallError,
    k_functional_upper,
    lipschitz_constant,
    modulus,
    second_modulus,
    steklov_mean,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "BrenkeTable",
    "BUILTIN_NAMES",
    "DEFAULT_K_MAX",
    "FamilySpec",
    "FUNCTION_REGISTRY",
    "GridTooCoarseError",
    "MassDeficitError",
    "MomentReport",
    "NonFiniteSampleError",
    "PositivityError",
    "SmoothnessEstimate",
    "StancuParams",
    "TestFunction",
    "TruncationPolicy",
    "ValidationReport",
    "WeightVector",
    "WindowGrid",
    "WindowTooSmallError",
    "apply",
    "as_series",
    "brenke_table",
    "builtin_family",
    "central_moments",
    "derived_quantities",
    "eval_pi",
    "exp_series",
    "geometric_series",
    "identity_series",
    "jakimovski_leviatan_apply",
    "k_functional_bound",
    "k_functional_upper",
    "lipschitz_bound",
    "lipschitz_constant",
    "make_appell",
    "make_appell_exp",
    "make_custom",
    "make_gould_hopper",
    "make_miller_lee",
    "make_szasz",
    "modulus",
    "modulus_bound",
    "moment_report",
    "one_series",
    "power_sums",
    "raw_moments",
    "second_modulus",
    "second_modulus_bound",
    "series_compose",
    "series_mul",
    "steklov_mean",
    "szasz_apply",
    "validate",
    "verify",
    "weights",
]
