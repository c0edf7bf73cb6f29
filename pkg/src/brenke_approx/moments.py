"""Closed-form moments of the operators, with brute-force cross-checks.

The identities implemented here are transcribed term by term from the
moment calculus of the operator family:

  power sums of the weight polynomials at y = nx,
  raw moments L_n(1; x), L_n(s; x), L_n(s^2; x),
  central moments D1 = L_n(s - x; x), D2 = L_n((s - x)^2; x),

plus the derived rate quantities delta_n = sqrt(D2),
lambda_n = (D1 + D2)/2 and mu_n = (D2 + D1^2)/8.

No algebraic simplification is applied, so each expression can be audited
line by line; the recombination identity D2 = m2 - 2x m1 + x^2 is used as
a test, never as the implementation.  All A2-dependent terms enter as the
ratios A2'/A2 and A2''/A2, which the built-in families supply exactly
(identically 1 for exp), keeping the formulas finite where A2 itself
overflows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .families import FamilySpec, StancuParams
from .operators import TruncationPolicy, WeightVector, apply, weights


class NegativeVarianceError(ValueError):
    """Second central moment below the rounding floor."""


_D2_FLOOR = -1e-12
REL_GAP_FLOOR = 1e-2  # below this scale the gap is measured absolutely


def rel_gap(a: float, b: float, floor: float = REL_GAP_FLOOR) -> float:
    """Relative gap with an absolute regime for small values.

    Dividing by max(|a|, |b|, floor) makes one tolerance cover both the
    relative check on O(1) values and the absolute check below ``floor``.
    """
    return abs(a - b) / max(abs(a), abs(b), floor)


@dataclass(frozen=True)
class PowerSums:
    """Sums of k^j pi_k(nx), closed form, with summation cross-check ratios."""

    s0: float
    s1: float
    s2: float
    s1_over_s0_sum: float
    s2_over_s0_sum: float
    rel_gap: float


def _family_scalars(f: FamilySpec, n: int, x: float):
    y = n * x * f.h1
    a1 = f.A1_at(f.h1)
    a1p = f.A1p_at(f.h1)
    a1pp = f.A1pp_at(f.h1)
    r1 = f.a2p_over_a2_at(y)
    r2 = f.a2pp_over_a2_at(y)
    return y, a1, a1p, a1pp, r1, r2


def power_sums(
    f: FamilySpec,
    n: int,
    x: float,
    policy: TruncationPolicy | None = None,
    weight_vec: WeightVector | None = None,
) -> PowerSums:
    """Closed-form power sums S_j = sum_k k^j pi_k(nx), j = 0, 1, 2.

    S0 = A1(h(1)) A2(nx h(1)),
    S1 = A1'(h(1)) A2(nx h(1)) + nx A1(h(1)) A2'(nx h(1)),
    S2 = [(h''(1)+1) A1'(h(1)) + A1''(h(1))] A2(nx h(1))
         + [2 A1'(h(1)) + (h''(1)+1) A1(h(1))] A2'(nx h(1)) nx
         + A1(h(1)) A2''(nx h(1)) (nx)^2.

    The absolute values can overflow for large nx (they scale like A2);
    the cross-check against direct summation therefore compares the
    normalized ratios S1/S0 and S2/S0, which stay in range.
    """
    y, a1, a1p, a1pp, r1, r2 = _family_scalars(f, n, x)
    a2 = f.A2_at(y)
    a2p = f.A2p_at(y)
    a2pp = f.A2pp_at(y)
    nx = n * x
    s0 = a1 * a2
    s1 = a1p * a2 + nx * a1 * a2p
    s2 = (
        ((f.hpp1 + 1.0) * a1p + a1pp) * a2
        + (2.0 * a1p + (f.hpp1 + 1.0) * a1) * a2p * nx
        + a1 * a2pp * nx * nx
    )

    q1 = a1p / a1
    q2 = a1pp / a1
    s1_ratio = q1 + nx * r1
    s2_ratio = (f.hpp1 + 1.0) * q1 + q2 + (2.0 * q1 + f.hpp1 + 1.0) * r1 * nx + r2 * nx * nx

    wv = weight_vec if weight_vec is not None else weights(f, n, x, policy)
    ks = np.arange(wv.k_used, dtype=np.float64)
    sum1 = float(np.dot(wv.w, ks))
    sum2 = float(np.dot(wv.w, ks * ks))
    gap = max(
        rel_gap(1.0, wv.mass),
        rel_gap(s1_ratio, sum1),
        rel_gap(s2_ratio, sum2),
    )
    return PowerSums(
        s0=s0,
        s1=s1,
        s2=s2,
        s1_over_s0_sum=sum1,
        s2_over_s0_sum=sum2,
        rel_gap=gap,
    )


def raw_moments(
    f: FamilySpec, n: int, x: float, s: StancuParams
) -> tuple[float, float, float]:
    """Closed-form raw moments (m0, m1, m2) of the operator at (n, x).

    m0 = 1,
    m1 = [A2'/A2](nx h(1)) n x / (n + nu2) + (A1'/A1 + nu1) / (n + nu2),
    m2 = [A2''/A2](nx h(1)) n^2 x^2 / (n + nu2)^2
         + [(1 + 2 nu1 + h''(1)) A1 + 2 A1'] [A2'/A2] n x / (A1 (n + nu2)^2)
         + [nu1^2 A1 + (1 + 2 nu1 + h''(1)) A1' + A1''] / (A1 (n + nu2)^2),

    with A1 and its derivatives taken at h(1).
    """
    y, a1, a1p, a1pp, r1, r2 = _family_scalars(f, n, x)
    q1 = a1p / a1
    d = n + s.nu2
    m1 = r1 * n * x / d + (q1 + s.nu1) / d
    m2 = (
        r2 * n * n * x * x / (d * d)
        + ((1.0 + 2.0 * s.nu1 + f.hpp1) * a1 + 2.0 * a1p) * r1 * n * x / (a1 * d * d)
        + (s.nu1 * s.nu1 * a1 + (1.0 + 2.0 * s.nu1 + f.hpp1) * a1p + a1pp)
        / (a1 * d * d)
    )
    return 1.0, m1, m2


def central_moments(
    f: FamilySpec, n: int, x: float, s: StancuParams
) -> tuple[float, float]:
    """Closed-form central moments (D1, D2) of the operator at (n, x).

    D1 = ([A2'/A2] n / (n + nu2) - 1) x + (A1'/A1 + nu1) / (n + nu2),
    D2 = [[A2''/A2] n^2/(n+nu2)^2 - 2 [A2'/A2] n/(n+nu2) + 1] x^2
         + {(1 + 2 nu1 + h''(1)) [A2'/A2] n/(n+nu2)^2
            + 2 (A1'/A1) [A2'/A2] n/(n+nu2)^2
            - 2 (A1'/A1 + nu1)/(n+nu2)} x
         + nu1^2/(n+nu2)^2
         + [(1 + 2 nu1 + h''(1)) A1' + A1''] / (A1 (n+nu2)^2).
    """
    y, a1, a1p, a1pp, r1, r2 = _family_scalars(f, n, x)
    q1 = a1p / a1
    q2 = a1pp / a1
    d = n + s.nu2
    d1 = (r1 * n / d - 1.0) * x + (q1 + s.nu1) / d
    d2 = (
        (r2 * n * n / (d * d) - 2.0 * r1 * n / d + 1.0) * x * x
        + (
            (1.0 + 2.0 * s.nu1 + f.hpp1) * r1 * n / (d * d)
            + 2.0 * q1 * r1 * n / (d * d)
            - 2.0 * (q1 + s.nu1) / d
        )
        * x
        + s.nu1 * s.nu1 / (d * d)
        + ((1.0 + 2.0 * s.nu1 + f.hpp1) * q1 + q2) / (d * d)
    )
    return d1, d2


def derived_quantities(d1: float, d2: float) -> tuple[float, float, float]:
    """Rate quantities (delta_n, lambda_n, mu_n) from the central moments.

    delta_n = sqrt(D2), lambda_n = (D1 + D2)/2, mu_n = (D2 + D1^2)/8.
    D2 within rounding noise below zero is clamped; anything further is an
    error, since it would mean a negative variance.
    """
    if d2 < _D2_FLOOR:
        raise NegativeVarianceError(f"second central moment {d2!r} < {_D2_FLOOR}")
    d2c = max(d2, 0.0)
    return math.sqrt(d2c), (d1 + d2c) / 2.0, (d2c + d1 * d1) / 8.0


@dataclass(frozen=True)
class MomentReport:
    """Closed-form and summation moments at one (n, x, stancu) cell."""

    family: str
    n: int
    x: float
    s: StancuParams
    m0: float
    m1: float
    m2: float
    d1: float
    d2: float
    delta_n: float
    lambda_n: float
    mu_n: float
    m0_sum: float
    m1_sum: float
    m2_sum: float
    max_rel_gap: float


def moment_report(
    f: FamilySpec,
    n: int,
    x: float,
    s: StancuParams,
    policy: TruncationPolicy | None = None,
    weight_vec: WeightVector | None = None,
) -> MomentReport:
    """Closed-form moments next to their direct-summation counterparts."""
    m0, m1, m2 = raw_moments(f, n, x, s)
    d1, d2 = central_moments(f, n, x, s)
    delta_n, lambda_n, mu_n = derived_quantities(d1, d2)
    wv = weight_vec if weight_vec is not None else weights(f, n, x, policy)
    m0_sum = apply(f, lambda t: np.ones_like(t), n, x, s, weight_vec=wv)
    m1_sum = apply(f, lambda t: t, n, x, s, weight_vec=wv)
    m2_sum = apply(f, lambda t: t * t, n, x, s, weight_vec=wv)
    gap = max(
        rel_gap(m0, m0_sum),
        rel_gap(m1, m1_sum),
        rel_gap(m2, m2_sum),
        rel_gap(d1, m1_sum - x),
        rel_gap(d2, m2_sum - 2.0 * x * m1_sum + x * x),
    )
    return MomentReport(
        family=f.name,
        n=n,
        x=x,
        s=s,
        m0=m0,
        m1=m1,
        m2=m2,
        d1=d1,
        d2=d2,
        delta_n=delta_n,
        lambda_n=lambda_n,
        mu_n=mu_n,
        m0_sum=m0_sum,
        m1_sum=m1_sum,
        m2_sum=m2_sum,
        max_rel_gap=gap,
    )
