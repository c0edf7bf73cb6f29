"""Generating-function families behind the Stancu-type operators.

A family is the triple (A1, A2, h) of analytic functions with
A1(t) = sum a_{1,k} t^k (a_{1,0} != 0), A2(t) = sum a_{2,k} t^k and
h(t) = sum_{k>=1} h_k t^k (h_1 != 0), normalized so h'(1) = 1.  The
weight polynomials pi_k come from the expansion

    A1(h(t)) * A2(x h(t)) = sum_k pi_k(x) t^k.

Built-ins: the Poisson/Szasz family (A1 = 1), the Appell family (general
A1, A2 = exp, h = t), Gould-Hopper (A1 = exp(b t^{d+1})) and Miller-Lee.
Miller-Lee is stored as A1(t) = (1 - t/2)^{-(m+1)} so that the whole
triple satisfies the standing hypotheses (series radius 2 > 1) while
reproducing the classical weights e^{-nx} G_k^{(m)}(2nx) / 2^{m+k+1}.

Each built-in carries a vectorized log-space weight evaluator so the
operator can be applied far beyond the dynamic range of the coefficient
table (the table's 1/k! scale underflows float64 near k = 178).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import gammaln, logsumexp

from .series import (
    DEFAULT_K_MAX,
    BrenkeTable,
    as_series,
    brenke_table,
    exp_series,
    identity_series,
    one_series,
)

_LN2 = math.log(2.0)
_EXP_OVERFLOW = 709.0  # exp() leaves float64 range just above this


@dataclass(frozen=True)
class StancuParams:
    """Node-shift parameters: samples are taken at (k + nu1)/(n + nu2)."""

    nu1: float = 0.0
    nu2: float = 0.0

    def __post_init__(self):
        if not (self.nu1 >= 0.0 and self.nu2 >= 0.0):
            raise ValueError(
                f"nu1 and nu2 must be >= 0, got ({self.nu1}, {self.nu2})"
            )


@dataclass(frozen=True, eq=False)
class FamilySpec:
    """Immutable family definition.

    Evaluators are scalar callables.  ``a2p_over_a2_at`` and
    ``a2pp_over_a2_at`` return A2'/A2 and A2''/A2; the moment formulas use
    only these ratios so they stay finite where A2 itself overflows.
    ``closed_form_log_weight(ks, n, x)`` returns log of the normalized
    weights for an integer array ``ks`` and is preferred by the operator
    whenever present.

    The only mutable state is the write-once table memo, so instances are
    safe for concurrent reads.
    """

    name: str
    kind: str
    k_max: int
    a1_series: np.ndarray
    a2_series: np.ndarray
    h_series: np.ndarray
    A1_at: Callable[[float], float]
    A1p_at: Callable[[float], float]
    A1pp_at: Callable[[float], float]
    A2_at: Callable[[float], float]
    A2p_at: Callable[[float], float]
    A2pp_at: Callable[[float], float]
    h_at: Callable[[float], float]
    h1: float
    hp1: float
    hpp1: float
    a2p_over_a2_at: Callable[[float], float]
    a2pp_over_a2_at: Callable[[float], float]
    log_a2_at: Callable[[float], float] | None = None
    closed_form_log_weight: Callable | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    def table(self, k_max: int | None = None) -> BrenkeTable:
        """Coefficient table for this family (memoized per truncation)."""
        k = self.k_max if k_max is None else k_max
        if k not in self._cache:
            self._cache[k] = brenke_table(
                self.a1_series, self.a2_series, self.h_series, k
            )
        return self._cache[k]


def _exp_safe(y: float) -> float:
    return math.exp(y) if y < _EXP_OVERFLOW else math.inf


def _const(v: float) -> Callable[[float], float]:
    return lambda y: v


def _series_eval(coeffs: np.ndarray, y: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * y + c
    return acc


def _series_deriv(coeffs: np.ndarray) -> np.ndarray:
    if coeffs.size <= 1:
        return np.zeros(1)
    return coeffs[1:] * np.arange(1, coeffs.size, dtype=np.float64)


def _radius_estimate(coeffs: np.ndarray) -> float:
    """Empirical convergence radius from tail coefficient growth."""
    nz = np.flatnonzero(np.abs(coeffs) > 0)
    tail = nz[nz.size // 2 :]
    tail = tail[tail >= 4]
    if tail.size == 0:
        return math.inf
    rates = np.abs(coeffs[tail]) ** (1.0 / tail)
    top = float(rates.max())
    return math.inf if top == 0.0 else 1.0 / top


# --- log-space weight evaluators -------------------------------------------


def _poisson_log_w(ks: np.ndarray, y: float) -> np.ndarray:
    """log of e^{-y} y^k / k!."""
    ks = np.asarray(ks, dtype=np.float64)
    if y == 0.0:
        return np.where(ks == 0, 0.0, -np.inf)
    return -y + ks * math.log(y) - gammaln(ks + 1.0)


def _gould_hopper_log_w(ks: np.ndarray, y: float, b: float, d: int) -> np.ndarray:
    """log of e^{-y-b} g_k^{d+1}(y, b) / k!.

    g_k^{d+1}(y, b) = sum_s k!/(s! (k-(d+1)s)!) b^s y^{k-(d+1)s}; the sum
    is taken by log-sum-exp over s so huge k and y stay in range.
    """
    ks = np.asarray(ks, dtype=np.int64)
    if b == 0.0:
        return _poisson_log_w(ks, y)
    if y == 0.0:
        s = ks // (d + 1)
        on_lattice = ks % (d + 1) == 0
        lw = -b + s * math.log(b) - gammaln(s + 1.0)
        return np.where(on_lattice, lw, -np.inf)
    s_hi = int(ks.max()) // (d + 1)
    S = np.arange(s_hi + 1, dtype=np.int64)[None, :]
    K = ks[:, None]
    E = K - (d + 1) * S
    valid = E >= 0
    E_safe = np.where(valid, E, 0)
    terms = (
        S * math.log(b)
        + E_safe * math.log(y)
        - gammaln(S + 1.0)
        - gammaln(E_safe + 1.0)
    )
    terms = np.where(valid, terms, -np.inf)
    return logsumexp(terms, axis=1) - y - b


def _miller_lee_log_w(ks: np.ndarray, y: float, m: float) -> np.ndarray:
    """log of e^{-y} G_k^{(m)}(2y) / 2^{m+k+1}.

    G_k^{(m)}(z) = sum_r (m+1)_r / (r! (k-r)!) z^{k-r} with the rising
    factorial (m+1)_r = Gamma(m+1+r)/Gamma(m+1).
    """
    ks = np.asarray(ks, dtype=np.int64)
    lg_m1 = gammaln(m + 1.0)
    if y == 0.0:
        return (
            gammaln(m + 1.0 + ks)
            - lg_m1
            - gammaln(ks + 1.0)
            - (m + ks + 1.0) * _LN2
        )
    R = np.arange(int(ks.max()) + 1, dtype=np.int64)[None, :]
    K = ks[:, None]
    E = K - R
    valid = E >= 0
    E_safe = np.where(valid, E, 0)
    terms = (
        gammaln(m + 1.0 + R)
        - lg_m1
        - gammaln(R + 1.0)
        - gammaln(E_safe + 1.0)
        + E_safe * math.log(2.0 * y)
    )
    terms = np.where(valid, terms, -np.inf)
    return logsumexp(terms, axis=1) - y - (m + ks + 1.0) * _LN2


def _appell_exp_log_w(ks: np.ndarray, y: float) -> np.ndarray:
    """log of e^{-1-y} sum_j y^j / (j! (k-j)!), the A1 = e^t Appell case."""
    ks = np.asarray(ks, dtype=np.int64)
    if y == 0.0:
        return -1.0 - gammaln(ks + 1.0)
    J = np.arange(int(ks.max()) + 1, dtype=np.int64)[None, :]
    K = ks[:, None]
    E = K - J
    valid = E >= 0
    E_safe = np.where(valid, E, 0)
    terms = J * math.log(y) - gammaln(J + 1.0) - gammaln(E_safe + 1.0)
    terms = np.where(valid, terms, -np.inf)
    return logsumexp(terms, axis=1) - 1.0 - y


# --- built-in constructors ---------------------------------------------------


def make_szasz(k_max: int = DEFAULT_K_MAX) -> FamilySpec:
    """Poisson-weighted family: A1 = 1, A2 = exp, h = t.

    weight(k; n, x) = exp(-nx) (nx)^k / k!, evaluated in log space.
    """
    return FamilySpec(
        name="szasz",
        kind="szasz",
        k_max=k_max,
        a1_series=one_series(k_max),
        a2_series=exp_series(k_max),
        h_series=identity_series(k_max),
        A1_at=_const(1.0),
        A1p_at=_const(0.0),
        A1pp_at=_const(0.0),
        A2_at=_exp_safe,
        A2p_at=_exp_safe,
        A2pp_at=_exp_safe,
        h_at=lambda t: t,
        h1=1.0,
        hp1=1.0,
        hpp1=0.0,
        a2p_over_a2_at=_const(1.0),
        a2pp_over_a2_at=_const(1.0),
        log_a2_at=lambda y: y,
        closed_form_log_weight=lambda ks, n, x: _poisson_log_w(ks, n * x),
    )


def make_appell(
    a1,
    a1_at: Callable[[float], float] | None = None,
    a1p_at: Callable[[float], float] | None = None,
    a1pp_at: Callable[[float], float] | None = None,
    name: str = "appell",
    k_max: int = DEFAULT_K_MAX,
    closed_form_log_weight: Callable | None = None,
) -> FamilySpec:
    """Appell family: general A1, A2 = exp, h = t.

    When the A1 evaluators are omitted they fall back to truncated-series
    evaluation, with a warning if the evaluation point 1 sits close to the
    empirical divergence onset of the coefficient stream.
    """
    a1 = as_series(a1, k_max)
    if a1[0] == 0.0:
        raise ValueError("a1[0] must be nonzero (offending index 0)")
    if a1_at is None:
        radius = _radius_estimate(a1)
        if 1.0 >= 0.9 * radius:
            warnings.warn(
                f"A1 series evaluation at t = 1 is close to the empirical "
                f"divergence onset (radius estimate {radius:.3g})",
                stacklevel=2,
            )
        d1 = _series_deriv(a1)
        d2 = _series_deriv(d1)
        a1_at = lambda y: _series_eval(a1, y)  # noqa: E731
        a1p_at = lambda y: _series_eval(d1, y)  # noqa: E731
        a1pp_at = lambda y: _series_eval(d2, y)  # noqa: E731
    return FamilySpec(
        name=name,
        kind="appell",
        k_max=k_max,
        a1_series=a1,
        a2_series=exp_series(k_max),
        h_series=identity_series(k_max),
        A1_at=a1_at,
        A1p_at=a1p_at,
        A1pp_at=a1pp_at,
        A2_at=_exp_safe,
        A2p_at=_exp_safe,
        A2pp_at=_exp_safe,
        h_at=lambda t: t,
        h1=1.0,
        hp1=1.0,
        hpp1=0.0,
        a2p_over_a2_at=_const(1.0),
        a2pp_over_a2_at=_const(1.0),
        log_a2_at=lambda y: y,
        closed_form_log_weight=closed_form_log_weight,
    )


def make_appell_exp(k_max: int = DEFAULT_K_MAX) -> FamilySpec:
    """The canonical Appell instance A1 = e^t, with log-space weights."""
    return make_appell(
        exp_series(k_max),
        a1_at=_exp_safe,
        a1p_at=_exp_safe,
        a1pp_at=_exp_safe,
        name="appell",
        k_max=k_max,
        closed_form_log_weight=lambda ks, n, x: _appell_exp_log_w(ks, n * x),
    )


def make_gould_hopper(b: float, d: int, k_max: int = DEFAULT_K_MAX) -> FamilySpec:
    """Gould-Hopper family: A1(t) = exp(b t^{d+1}), A2 = exp, h = t.

    Requires b >= 0, which is what keeps every weight polynomial
    nonnegative on the half line.
    """
    if b < 0.0:
        raise ValueError(f"b < 0 breaks weight positivity, got b={b}")
    d = int(d)
    if d < 1:
        raise ValueError(f"d must be an integer >= 1, got {d}")
    a1 = np.zeros(k_max + 1)
    fact = 1.0
    for s in range(0, k_max // (d + 1) + 1):
        a1[(d + 1) * s] = (b**s) / fact
        fact *= s + 1

    def a1_at(y: float) -> float:
        return _exp_safe(b * y ** (d + 1))

    def a1p_at(y: float) -> float:
        return b * (d + 1) * y**d * a1_at(y)

    def a1pp_at(y: float) -> float:
        return (b * (d + 1) * d * y ** (d - 1) + (b * (d + 1) * y**d) ** 2) * a1_at(y)

    return FamilySpec(
        name=f"gould_hopper(b={b:g} d={d})",
        kind="gould_hopper",
        k_max=k_max,
        a1_series=a1,
        a2_series=exp_series(k_max),
        h_series=identity_series(k_max),
        A1_at=a1_at,
        A1p_at=a1p_at,
        A1pp_at=a1pp_at,
        A2_at=_exp_safe,
        A2p_at=_exp_safe,
        A2pp_at=_exp_safe,
        h_at=lambda t: t,
        h1=1.0,
        hp1=1.0,
        hpp1=0.0,
        a2p_over_a2_at=_const(1.0),
        a2pp_over_a2_at=_const(1.0),
        log_a2_at=lambda y: y,
        closed_form_log_weight=lambda ks, n, x: _gould_hopper_log_w(ks, n * x, b, d),
    )


def make_miller_lee(m: float, k_max: int = DEFAULT_K_MAX) -> FamilySpec:
    """Miller-Lee family, stored as A1(t) = (1 - t/2)^{-(m+1)}, A2 = exp, h = t.

    The half-argument form keeps the series radius at 2, so every standing
    hypothesis holds, and it reproduces the classical weights
    e^{-nx} G_k^{(m)}(2nx) / 2^{m+k+1} exactly:
    A1(1) A2(nx) = 2^{m+1} e^{nx} supplies the displayed normalization.
    Requires m > -1.
    """
    if m <= -1.0:
        raise ValueError(f"m must be > -1, got m={m}")
    a1 = np.zeros(k_max + 1)
    a1[0] = 1.0
    for j in range(1, k_max + 1):
        a1[j] = a1[j - 1] * (m + j) / (2.0 * j)

    def a1_at(y: float) -> float:
        u = 1.0 - y / 2.0
        if u <= 0.0:
            return math.inf
        return u ** (-(m + 1.0))

    def a1p_at(y: float) -> float:
        u = 1.0 - y / 2.0
        if u <= 0.0:
            return math.inf
        return (m + 1.0) / 2.0 * u ** (-(m + 2.0))

    def a1pp_at(y: float) -> float:
        u = 1.0 - y / 2.0
        if u <= 0.0:
            return math.inf
        return (m + 1.0) * (m + 2.0) / 4.0 * u ** (-(m + 3.0))

    return FamilySpec(
        name=f"miller_lee(m={m:g})",
        kind="miller_lee",
        k_max=k_max,
        a1_series=a1,
        a2_series=exp_series(k_max),
        h_series=identity_series(k_max),
        A1_at=a1_at,
        A1p_at=a1p_at,
        A1pp_at=a1pp_at,
        A2_at=_exp_safe,
        A2p_at=_exp_safe,
        A2pp_at=_exp_safe,
        h_at=lambda t: t,
        h1=1.0,
        hp1=1.0,
        hpp1=0.0,
        a2p_over_a2_at=_const(1.0),
        a2pp_over_a2_at=_const(1.0),
        log_a2_at=lambda y: y,
        closed_form_log_weight=lambda ks, n, x: _miller_lee_log_w(ks, n * x, m),
    )


def make_custom(
    a1,
    a2,
    h,
    name: str = "custom",
    k_max: int | None = None,
) -> FamilySpec:
    """Family from raw coefficient lists, evaluated by truncated series.

    The given a2 entries must all be nonzero; trailing zero padding (a
    polynomial A2) is allowed but will usually show up in validation.
    Derivative scalars come from differentiating the coefficient streams,
    so accuracy degrades if h(1) approaches the divergence onset.
    """
    a1_raw = as_series(a1)
    a2_raw = as_series(a2)
    h_raw = as_series(h)
    if k_max is None:
        k_max = max(a1_raw.size, a2_raw.size, h_raw.size) - 1
        k_max = max(k_max, 8)
    if a1_raw[0] == 0.0:
        raise ValueError("a_{1,0} != 0 violated (offending index 0)")
    if h_raw[0] != 0.0:
        raise ValueError("h must have zero constant term (offending index 0)")
    if h_raw.size < 2 or h_raw[1] == 0.0:
        raise ValueError("h_1 != 0 violated (offending index 1)")
    given_zero = np.flatnonzero(a2_raw == 0.0)
    if given_zero.size:
        raise ValueError(
            f"a_{{2,k}} != 0 violated at index {int(given_zero[0])}"
        )

    a1s = as_series(a1_raw, k_max)
    a2s = as_series(a2_raw, k_max)
    hs = as_series(h_raw, k_max)

    for label, coeffs in (("a1", a1s), ("h", hs)):
        radius = _radius_estimate(coeffs)
        if 1.0 >= 0.9 * radius:
            warnings.warn(
                f"{label} series for {name!r}: evaluation at t = 1 is close "
                f"to the empirical divergence onset (radius {radius:.3g})",
                stacklevel=2,
            )

    a1d = _series_deriv(a1s)
    a1dd = _series_deriv(a1d)
    a2d = _series_deriv(a2s)
    a2dd = _series_deriv(a2d)
    hd = _series_deriv(hs)
    hdd = _series_deriv(hd)

    h1 = _series_eval(hs, 1.0)
    hp1 = _series_eval(hd, 1.0)
    hpp1 = _series_eval(hdd, 1.0)

    def ratio(num: np.ndarray, den: np.ndarray) -> Callable[[float], float]:
        def at(y: float) -> float:
            d = _series_eval(den, y)
            if d == 0.0 or not math.isfinite(d):
                return math.nan
            return _series_eval(num, y) / d

        return at

    return FamilySpec(
        name=name,
        kind="custom",
        k_max=k_max,
        a1_series=a1s,
        a2_series=a2s,
        h_series=hs,
        A1_at=lambda y: _series_eval(a1s, y),
        A1p_at=lambda y: _series_eval(a1d, y),
        A1pp_at=lambda y: _series_eval(a1dd, y),
        A2_at=lambda y: _series_eval(a2s, y),
        A2p_at=lambda y: _series_eval(a2d, y),
        A2pp_at=lambda y: _series_eval(a2dd, y),
        h_at=lambda t: _series_eval(hs, t),
        h1=h1,
        hp1=hp1,
        hpp1=hpp1,
        a2p_over_a2_at=ratio(a2d, a2s),
        a2pp_over_a2_at=ratio(a2dd, a2s),
    )


BUILTIN_NAMES = ("szasz", "appell", "gould_hopper", "miller_lee")


def builtin_family(name: str, k_max: int = DEFAULT_K_MAX, **params) -> FamilySpec:
    """Construct a built-in family by name with optional parameters."""
    if name == "szasz":
        return make_szasz(k_max=k_max)
    if name == "appell":
        if "a1" in params:
            return make_appell(params["a1"], k_max=k_max)
        return make_appell_exp(k_max=k_max)
    if name == "gould_hopper":
        return make_gould_hopper(
            b=float(params.get("b", 1.0)), d=int(params.get("d", 1)), k_max=k_max
        )
    if name == "miller_lee":
        return make_miller_lee(m=float(params.get("m", 0.0)), k_max=k_max)
    raise ValueError(f"unknown built-in family {name!r}; known: {BUILTIN_NAMES}")


# --- validation ---------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    family: str
    checks: tuple[CheckResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        out = [f"family: {self.family}"]
        for c in self.checks:
            out.append(f"check {c.name}: {'PASS' if c.passed else 'FAIL'} ({c.detail})")
        out.append(f"RESULT: {'PASS' if self.all_passed else 'FAIL'}")
        return out


def _gen_func_residual_check(f: FamilySpec, k: int) -> CheckResult:
    """Compare the truncated expansion sum_k pi_k(x) t^k with the closed form.

    The allowance is ten times a tail estimate for the truncated series:
    a geometric extrapolation of the last retained terms plus the float
    accumulation noise of the partial sum.
    """
    table = f.table(k)
    t_points = (0.1, 0.25, 0.5)
    x_points = (0.0, 0.5, 1.0, 2.0, 4.0)
    eps = np.finfo(np.float64).eps
    worst = ("", -math.inf)
    for t in t_points:
        tk = t ** np.arange(k + 1, dtype=np.float64)
        for x in x_points:
            pis = np.array(
                [float(np.polynomial.polynomial.polyval(x, table.rows[kk]))
                 for kk in range(k + 1)]
            )
            terms = pis * tk
            partial = float(terms.sum())
            closed = f.A1_at(f.h_at(t)) * f.A2_at(x * f.h_at(t))
            if not (math.isfinite(partial) and math.isfinite(closed)):
                return CheckResult(
                    "generating_function_residual",
                    False,
                    f"t={t:g}, x={x:g}: non-finite value "
                    f"(partial={partial!r}, closed={closed!r})",
                )
            tail = float(np.abs(terms[-3:]).max()) * t / (1.0 - t)
            noise = 8.0 * eps * (abs(closed) + float(np.abs(terms).sum())) * (k + 1)
            allow = 10.0 * (tail + noise)
            resid = abs(partial - closed)
            score = resid - allow
            if score > worst[1]:
                worst = (
                    f"t={t:g}, x={x:g}: |partial - closed| = {resid:.3g}, "
                    f"allowance {allow:.3g}",
                    score,
                )
            if not (resid <= allow):
                return CheckResult("generating_function_residual", False, worst[0])
    return CheckResult("generating_function_residual", True, worst[0])


def validate(
    f: FamilySpec,
    k: int = 60,
    x_max: float = 4.0,
    n_max: int = 256,
) -> ValidationReport:
    """Run the standing-hypothesis checks and return a report.

    Failures are report entries, never exceptions.  The weight-polynomial
    positivity check is a finite-grid scan, so a pass means "empirically
    nonnegative", not proved.
    """
    checks: list[CheckResult] = []
    k = min(k, f.k_max)

    err = abs(f.hp1 - 1.0)
    checks.append(
        CheckResult("h_prime_at_1", err <= 1e-12, f"|h'(1) - 1| = {err:.3g}")
    )

    y_grid = np.linspace(0.0, n_max * x_max, 33)
    table = f.table(k)
    worst_val, worst_pt, indeterminate = math.inf, (0, 0.0), 0
    for kk in range(k + 1):
        with np.errstate(over="ignore", invalid="ignore"):
            vals = np.polynomial.polynomial.polyval(y_grid, table.rows[kk])
        vals = np.atleast_1d(vals)
        bad = ~np.isfinite(vals)
        indeterminate += int(bad.sum())
        finite = vals[~bad]
        if finite.size:
            i = int(np.argmin(finite))
            if finite[i] < worst_val:
                worst_val = float(finite[i])
                worst_pt = (kk, float(y_grid[~bad][i]))
    ok = worst_val >= -1e-12
    note = f"min pi_k = {worst_val:.3g} at (k={worst_pt[0]}, y={worst_pt[1]:g})"
    if indeterminate:
        note += f"; {indeterminate} grid values overflowed and were skipped"
    checks.append(CheckResult("weight_polynomial_nonneg", ok, note))

    worst_a = math.inf
    worst_detail = ""
    for y in y_grid:
        for label, fn in (("A1", f.A1_at), ("A2", f.A2_at)):
            v = fn(float(y))
            if math.isnan(v):
                continue
            if v < worst_a:
                worst_a = v
                worst_detail = f"min {label}({y:g}) = {v:.3g}"
    checks.append(
        CheckResult("a1_a2_positive", worst_a > 0.0, worst_detail or "no finite values")
    )

    worst_r = 0.0
    worst_detail = ""
    ok = True
    for y in (1e2, 1e3, 1e4):
        for label, fn in (("A2'/A2", f.a2p_over_a2_at), ("A2''/A2", f.a2pp_over_a2_at)):
            r = fn(float(y))
            gap = abs(r - 1.0) if math.isfinite(r) else math.inf
            if gap > worst_r:
                worst_r = gap
                worst_detail = f"|{label}(1e{int(math.log10(y))}) - 1| = {gap:.3g}"
            if not gap < 1e-6:
                ok = False
    checks.append(CheckResult("a2_ratio_limits", ok, worst_detail))

    checks.append(_gen_func_residual_check(f, k))

    return ValidationReport(family=f.name, checks=tuple(checks))
