"""Approximation-error bounds and the domination sweep.

Four bounds on |L_n f(x) - f(x)| are computed per cell:

  b22 = 2 omega(f; delta_n(x))           (first-modulus bound)
  b23 = M delta_n(x)^alpha               (Lipschitz bound, when (alpha, M)
                                          is registered for f)
  b24 = 2 K(f; lambda_n(x))              (K-functional bound, via the
                                          Steklov upper estimate)
  b25 = C omega2(f; sqrt(mu_n(x)))
        + omega(f; |D1_n(x)|)            (second-modulus bound)

Two textual gaps are resolved by policy: lambda_n and D1_n can be
negative, but a K-functional argument must be >= 0 and a modulus argument
must be >= 0, so lambda_n is clamped at zero (and flagged) and the
modulus in b25 is taken at |D1_n|.  The constant C in b25 is a
configuration parameter (default 4); it is recorded in every report.
Only the first-modulus and Lipschitz bounds are fully determined, so only
they participate in acceptance; b24/b25 are reported and sanity-checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .families import FamilySpec, StancuParams
from .functions import TestFunction
from .moments import central_moments, derived_quantities
from .operators import TruncationPolicy, WeightVector, apply, weights
from .smoothness import WindowGrid, k_functional_upper, modulus, second_modulus

DOMINATION_SLACK = 1e-10
DEFAULT_C_SECOND_MODULUS = 4.0


@dataclass(frozen=True)
class BoundReport:
    family: str
    f_name: str
    n: int
    x: float
    s: StancuParams
    err_emp: float
    b22: float
    b23: float | None
    b24: float | None
    b25: float | None
    dom22: bool
    dom23: bool | None
    dom24: bool | None
    dom25: bool | None
    c_thm25: float
    lambda_clamped: bool
    status: str = "ok"


def rate_quantities(
    f: FamilySpec, n: int, x: float, s: StancuParams
) -> tuple[float, float, float, float, float]:
    """(d1, d2, delta_n, lambda_n, mu_n) for one cell."""
    d1, d2 = central_moments(f, n, x, s)
    delta_n, lambda_n, mu_n = derived_quantities(d1, d2)
    return d1, d2, delta_n, lambda_n, mu_n


def modulus_bound(
    func,
    family: FamilySpec,
    n: int,
    x: float,
    s: StancuParams,
    grid: WindowGrid,
) -> float:
    """First-modulus bound 2 omega(f; delta_n(x))."""
    _, _, delta_n, _, _ = rate_quantities(family, n, x, s)
    return 2.0 * modulus(func, delta_n, grid).value


def lipschitz_bound(
    alpha: float,
    m_const: float,
    family: FamilySpec,
    n: int,
    x: float,
    s: StancuParams,
) -> float:
    """Lipschitz bound M delta_n(x)^alpha for f of Lipschitz order alpha."""
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must be in (0, 1], got {alpha}")
    _, _, delta_n, _, _ = rate_quantities(family, n, x, s)
    return m_const * delta_n**alpha


def k_functional_bound(
    func,
    family: FamilySpec,
    n: int,
    x: float,
    s: StancuParams,
    grid: WindowGrid,
    h_candidates: list[float] | None = None,
) -> tuple[float, bool]:
    """K-functional bound 2 K(f; lambda_n(x)) and a clamped-lambda flag."""
    _, _, _, lambda_n, _ = rate_quantities(family, n, x, s)
    clamped = lambda_n < 0.0
    lam = max(lambda_n, 0.0)
    est = k_functional_upper(func, lam, grid, h_candidates)
    return 2.0 * est.value, clamped


def second_modulus_bound(
    func,
    family: FamilySpec,
    n: int,
    x: float,
    s: StancuParams,
    c_const: float,
    grid: WindowGrid,
) -> float:
    """Second-modulus bound C omega2(f; sqrt(mu_n)) + omega(f; |d1_n|)."""
    if not c_const > 0.0:
        raise ValueError(f"the constant must be > 0, got {c_const}")
    d1, _, _, _, mu_n = rate_quantities(family, n, x, s)
    return (
        c_const * second_modulus(func, math.sqrt(mu_n), grid).value
        + modulus(func, abs(d1), grid).value
    )


def _dominated(err: float, bound: float | None) -> bool | None:
    if bound is None:
        return None
    return err <= bound + DOMINATION_SLACK


def verify(
    family_list: list[FamilySpec],
    function_list: list[TestFunction],
    n_list: list[int],
    x_grid: list[float],
    s_list: list[StancuParams],
    c_const: float = DEFAULT_C_SECOND_MODULUS,
    policy: TruncationPolicy | None = None,
    t_window_max: float = 4.0,
    window_step: float = 2.0**-10,
    include_k_bound: bool = True,
) -> list[BoundReport]:
    """Full domination sweep; one report per cell, failures annotated.

    Weight vectors are shared across functions and Stancu parameters for
    each (family, n, x), and window grids across all cells per function.
    Cell failures land in the report's status instead of aborting.
    """
    grids = {
        fn.name: WindowGrid.from_function(fn.fn, t_max=t_window_max, step=window_step)
        for fn in function_list
    }
    reports: list[BoundReport] = []
    for fam in family_list:
        weight_cache: dict[tuple[int, float], WeightVector] = {}
        for fn in function_list:
            grid = grids[fn.name]
            for s in s_list:
                for n in sorted(n_list):
                    for x in sorted(x_grid):
                        try:
                            key = (n, x)
                            if key not in weight_cache:
                                weight_cache[key] = weights(fam, n, x, policy)
                            wv = weight_cache[key]
                            fx = float(fn.fn(x))
                            err = abs(apply(fam, fn.fn, n, x, s, weight_vec=wv) - fx)
                            b22 = modulus_bound(fn, fam, n, x, s, grid)
                            if fn.lipschitz is not None:
                                alpha, m_const = fn.lipschitz
                                b23 = lipschitz_bound(alpha, m_const, fam, n, x, s)
                            else:
                                b23 = None
                            if include_k_bound:
                                b24, clamped = k_functional_bound(
                                    fn, fam, n, x, s, grid
                                )
                                b25 = second_modulus_bound(
                                    fn, fam, n, x, s, c_const, grid
                                )
                            else:
                                b24, clamped, b25 = None, False, None
                            reports.append(
                                BoundReport(
                                    family=fam.name,
                                    f_name=fn.name,
                                    n=n,
                                    x=x,
                                    s=s,
                                    err_emp=err,
                                    b22=b22,
                                    b23=b23,
                                    b24=b24,
                                    b25=b25,
                                    dom22=_dominated(err, b22),
                                    dom23=_dominated(err, b23),
                                    dom24=_dominated(err, b24),
                                    dom25=_dominated(err, b25),
                                    c_thm25=c_const,
                                    lambda_clamped=clamped,
                                )
                            )
                        except Exception as exc:  # noqa: BLE001 - sweep must finish
                            reports.append(
                                BoundReport(
                                    family=fam.name,
                                    f_name=fn.name,
                                    n=n,
                                    x=x,
                                    s=s,
                                    err_emp=math.nan,
                                    b22=math.nan,
                                    b23=None,
                                    b24=None,
                                    b25=None,
                                    dom22=False,
                                    dom23=None,
                                    dom24=None,
                                    dom25=None,
                                    c_thm25=c_const,
                                    lambda_clamped=False,
                                    status=f"error: {exc}",
                                )
                            )
    return reports
