"""Weight computation and application of the Stancu-type operators.

For a family (A1, A2, h) the operator at level n samples f on the shifted
nodes (k + nu1)/(n + nu2) with weights

    w_k = pi_k(nx) / (A1(h(1)) * A2(nx h(1))).

The weights form a probability distribution, so truncation is driven by
cumulative mass rather than a fixed term count: summation stops at the
smallest k whose cumulative mass reaches 1 - eps_tail, with a hard cap as
a guard against families that violate the convergence hypotheses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .families import FamilySpec, StancuParams
from .series import eval_pi, eval_pi_row_log


class MassDeficitError(RuntimeError):
    """Cumulative weight mass failed to reach the target."""


class PositivityError(RuntimeError):
    """A weight was negative beyond rounding tolerance."""


class NonFiniteSampleError(ValueError):
    """The target function returned a non-finite value at a node."""


_CLAMP = 1e-12  # negativity below this is rounding noise, beyond it a bug


@dataclass(frozen=True)
class TruncationPolicy:
    eps_tail: float = 1e-12
    k_hard_cap: int = 10_000

    def __post_init__(self):
        if not 0.0 < self.eps_tail < 1e-3:
            raise ValueError(f"eps_tail must be in (0, 1e-3), got {self.eps_tail}")
        if self.k_hard_cap < 1:
            raise ValueError(f"k_hard_cap must be >= 1, got {self.k_hard_cap}")

    @property
    def mass_target(self) -> float:
        return 1.0 - self.eps_tail


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True, eq=False)
class WeightVector:
    """Normalized weights for one (family, n, x) triple.

    ``min_unclamped`` records the most negative raw weight before
    rounding-noise clamping; it should never be below -1e-12.
    """

    w: np.ndarray
    n: int
    x: float
    mass: float
    k_used: int
    min_unclamped: float


def _check_point(n: int, x: float) -> tuple[int, float]:
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n}")
    x = float(x)
    if not (math.isfinite(x) and x >= 0.0):
        raise ValueError(f"x must be finite and >= 0, got {x}")
    return n, x


def _finalize(w: np.ndarray, n: int, x: float) -> WeightVector:
    min_unclamped = float(w.min()) if w.size else 0.0
    if min_unclamped < -_CLAMP:
        raise PositivityError(
            f"weight below -{_CLAMP:g} at (n={n}, x={x}): {min_unclamped:.3g}"
        )
    w = np.where(w < 0.0, 0.0, w)
    return WeightVector(
        w=w,
        n=n,
        x=x,
        mass=float(w.sum()),
        k_used=int(w.size),
        min_unclamped=min_unclamped,
    )


def _closed_form_weights(
    f: FamilySpec, n: int, x: float, policy: TruncationPolicy
) -> WeightVector:
    y = n * x * f.h1
    k_hi = max(32, int(y + 12.0 * math.sqrt(y + 1.0) + 80.0))
    while True:
        k_hi = min(k_hi, policy.k_hard_cap)
        ks = np.arange(k_hi)
        with np.errstate(divide="ignore"):
            logw = np.asarray(f.closed_form_log_weight(ks, n, x), dtype=np.float64)
        w = np.exp(logw)
        cum = np.cumsum(w)
        reached = cum >= policy.mass_target
        if reached.any():
            k_used = int(np.argmax(reached)) + 1
            return _finalize(w[:k_used], n, x)
        if k_hi >= policy.k_hard_cap:
            raise MassDeficitError(
                f"mass {cum[-1]!r} below target {policy.mass_target!r} at "
                f"k_hard_cap={policy.k_hard_cap} for {f.name} (n={n}, x={x})"
            )
        k_hi *= 2


def _table_weights(
    f: FamilySpec, n: int, x: float, policy: TruncationPolicy
) -> WeightVector:
    table = f.table()
    y = n * x
    z = f.A1_at(f.h1) * f.A2_at(y * f.h1)
    if not (math.isfinite(z) and z > 0.0):
        return _table_weights_log(f, n, x, policy)
    k_lim = min(policy.k_hard_cap, table.k_max + 1)
    ws: list[float] = []
    cum = 0.0
    for k in range(k_lim):
        try:
            wk = eval_pi(table, k, y) / z
        except OverflowError:
            return _table_weights_log(f, n, x, policy)
        ws.append(wk)
        cum += wk
        if cum >= policy.mass_target:
            return _finalize(np.asarray(ws), n, x)
    reason = (
        f"table truncation K_max={table.k_max} too small"
        if k_lim == table.k_max + 1
        else "k_hard_cap reached"
    )
    raise MassDeficitError(
        f"mass {cum!r} below target {policy.mass_target!r} for {f.name} "
        f"(n={n}, x={x}); {reason} or family diverges"
    )


def _table_weights_log(
    f: FamilySpec, n: int, x: float, policy: TruncationPolicy
) -> WeightVector:
    """Scaled fallback: per-row log evaluation of pi_k(nx).

    Only reachable for y > 0 (the linear path cannot overflow at y = 0).
    """
    table = f.table()
    y = n * x
    a1v = f.A1_at(f.h1)
    if not (math.isfinite(a1v) and a1v > 0.0):
        raise OverflowError(f"A1(h(1)) not finite and positive: {a1v!r}")
    if f.log_a2_at is not None:
        log_z = math.log(a1v) + f.log_a2_at(y * f.h1)
    else:
        a2v = f.A2_at(y * f.h1)
        if not (math.isfinite(a2v) and a2v > 0.0):
            raise OverflowError(
                f"normalization A2({y * f.h1!r}) not finite; cannot rescale"
            )
        log_z = math.log(a1v) + math.log(a2v)
    k_lim = min(policy.k_hard_cap, table.k_max + 1)
    ws: list[float] = []
    cum = 0.0
    for k in range(k_lim):
        lw = eval_pi_row_log(table, k, y) - log_z
        wk = math.exp(lw) if lw < 700.0 else math.inf
        if not math.isfinite(wk):
            raise OverflowError(
                f"weight w_{k} overflows after rescaling at (n={n}, x={x})"
            )
        ws.append(wk)
        cum += wk
        if cum >= policy.mass_target:
            return _finalize(np.asarray(ws), n, x)
    raise MassDeficitError(
        f"mass {cum!r} below target {policy.mass_target!r} for {f.name} "
        f"(n={n}, x={x}) on the scaled table path; K_max={table.k_max} too "
        "small or family diverges"
    )


def weights(
    f: FamilySpec,
    n: int,
    x: float,
    policy: TruncationPolicy | None = None,
    path: str = "auto",
) -> WeightVector:
    """Normalized weight vector of the operator at (n, x).

    ``path`` selects the evaluation route: "closed" uses the family's
    log-space closed-form weights, "table" the coefficient table, and
    "auto" prefers closed-form when available.
    """
    n, x = _check_point(n, x)
    policy = policy or DEFAULT_POLICY
    if path == "auto":
        path = "closed" if f.closed_form_log_weight is not None else "table"
    if path == "closed":
        if f.closed_form_log_weight is None:
            raise ValueError(f"family {f.name} has no closed-form weight")
        return _closed_form_weights(f, n, x, policy)
    if path == "table":
        return _table_weights(f, n, x, policy)
    raise ValueError(f"unknown path {path!r}; use 'auto', 'closed' or 'table'")


def _eval_on_nodes(func, nodes: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(func(nodes), dtype=np.float64)
        if vals.shape != nodes.shape:
            raise ValueError
    except (TypeError, ValueError):
        vals = np.array([float(func(t)) for t in nodes])
    return vals


def apply(
    f: FamilySpec,
    func,
    n: int,
    x: float,
    stancu: StancuParams | None = None,
    policy: TruncationPolicy | None = None,
    path: str = "auto",
    weight_vec: WeightVector | None = None,
) -> float:
    """Apply the operator: sum_k w_k * func((k + nu1)/(n + nu2)).

    A precomputed ``weight_vec`` for the same (n, x) may be passed to
    amortize the weight computation across functions and Stancu
    parameters.  Nodes are computed per k in full precision.
    """
    s = stancu or StancuParams()
    wv = weight_vec if weight_vec is not None else weights(f, n, x, policy, path)
    ks = np.arange(wv.k_used, dtype=np.float64)
    nodes = (ks + s.nu1) / (wv.n + s.nu2)
    vals = _eval_on_nodes(func, nodes)
    bad = ~np.isfinite(vals)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise NonFiniteSampleError(
            f"func returned {vals[i]!r} at node {nodes[i]!r} (k={i})"
        )
    return float(np.dot(wv.w, vals))


def szasz_apply(
    func, n: int, x: float, policy: TruncationPolicy | None = None
) -> float:
    """Reference path: the classical operator with Poisson weights.

    Computed directly from log-space weights exp(-nx)(nx)^k/k! without
    going through a family table; serves as an independent check of the
    general pipeline.
    """
    n, x = _check_point(n, x)
    policy = policy or DEFAULT_POLICY
    y = n * x
    if y == 0.0:
        w = np.ones(1)
    else:
        k_hi = max(32, int(y + 12.0 * math.sqrt(y + 1.0) + 80.0))
        while True:
            k_hi = min(k_hi, policy.k_hard_cap)
            ks = np.arange(k_hi, dtype=np.float64)
            w = np.exp(-y + ks * math.log(y) - gammaln(ks + 1.0))
            cum = np.cumsum(w)
            reached = cum >= policy.mass_target
            if reached.any():
                w = w[: int(np.argmax(reached)) + 1]
                break
            if k_hi >= policy.k_hard_cap:
                raise MassDeficitError(
                    f"mass {cum[-1]!r} below target at k_hard_cap (n={n}, x={x})"
                )
            k_hi *= 2
    nodes = np.arange(w.size, dtype=np.float64) / n
    vals = _eval_on_nodes(func, nodes)
    bad = ~np.isfinite(vals)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise NonFiniteSampleError(
            f"func returned {vals[i]!r} at node {nodes[i]!r} (k={i})"
        )
    return float(np.dot(w, vals))


def jakimovski_leviatan_apply(
    f: FamilySpec,
    func,
    n: int,
    x: float,
    policy: TruncationPolicy | None = None,
) -> float:
    """Named entry point for the Appell-weighted operator (nu1 = nu2 = 0)."""
    if f.kind != "appell":
        raise ValueError(
            f"expected a family built by make_appell, got kind={f.kind!r}"
        )
    return apply(f, func, n, x, StancuParams(0.0, 0.0), policy)
