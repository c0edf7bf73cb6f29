"""Numerical smoothness functionals on a compact window.

Everything here works on a uniform grid over [t_min, t_max]; a grid is
bound to the function it was sampled from, and the pair scans read those
stored samples.  Grid scans (first and second modulus, Lipschitz
quotient) are honest lower estimates of the true suprema.  Registered
test functions carry exact closed-form moduli, which are returned
instead and tagged as upper bounds; domination tests must use those.
The K-functional estimate goes the other way: evaluating the objective
at concrete twice-differentiable candidates (second-order Steklov means,
i.e. double moving averages of f) yields an upper bound on the infimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .functions import TestFunction

KIND_OMEGA1 = "omega1"
KIND_OMEGA2 = "omega2"
KIND_LIPSCHITZ = "lipschitz_M"
KIND_K_FUNCTIONAL = "k_functional"

LOWER_ESTIMATE = "lower_estimate"
UPPER_BOUND = "upper_bound"


class GridTooCoarseError(ValueError):
    """Grid step too large for the requested delta."""


class WindowTooSmallError(ValueError):
    """Window cannot accommodate the smoothing radius."""


@dataclass(frozen=True, eq=False)
class WindowGrid:
    """Uniform sampling of a function on [t_min, t_max]."""

    t_min: float
    t_max: float
    step: float
    ts: np.ndarray
    samples: np.ndarray

    @classmethod
    def from_function(
        cls, fn, t_max: float = 4.0, step: float = 2.0**-10, t_min: float = 0.0
    ) -> "WindowGrid":
        if not (step > 0.0 and t_max > t_min):
            raise ValueError(f"need step > 0 and t_max > t_min, got {step}, {t_max}")
        count = int(round((t_max - t_min) / step)) + 1
        ts = t_min + step * np.arange(count, dtype=np.float64)
        samples = np.asarray(fn(ts), dtype=np.float64)
        if not np.all(np.isfinite(samples)):
            raise ValueError("non-finite sample on the window grid")
        return cls(t_min=t_min, t_max=t_max, step=step, ts=ts, samples=samples)

    @property
    def span(self) -> float:
        return self.t_max - self.t_min


@dataclass(frozen=True)
class SmoothnessEstimate:
    value: float
    kind: str
    delta_or_lambda: float
    direction: str


def _lag_count(delta: float, step: float) -> int:
    return int(math.floor(delta / step + 1e-9))


def modulus(f, delta: float, grid: WindowGrid) -> SmoothnessEstimate:
    """First modulus of continuity omega(f; delta).

    Registered functions with a closed form return the exact value
    (an upper bound for any window); otherwise the grid pair scan gives a
    lower estimate and requires step <= delta/16.
    """
    if delta < 0.0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    if isinstance(f, TestFunction) and f.omega is not None:
        return SmoothnessEstimate(
            value=float(f.omega(delta, grid.t_max)),
            kind=KIND_OMEGA1,
            delta_or_lambda=delta,
            direction=UPPER_BOUND,
        )
    if delta == 0.0 or grid.step > delta / 16.0:
        raise GridTooCoarseError(
            f"grid step {grid.step} exceeds delta/16 = {delta / 16.0}"
        )
    s = grid.samples
    best = 0.0
    for lag in range(1, _lag_count(delta, grid.step) + 1):
        best = max(best, float(np.abs(s[lag:] - s[:-lag]).max()))
    return SmoothnessEstimate(
        value=best, kind=KIND_OMEGA1, delta_or_lambda=delta, direction=LOWER_ESTIMATE
    )


def second_modulus(f, delta: float, grid: WindowGrid) -> SmoothnessEstimate:
    """Second modulus of smoothness: sup |f(t+2h) - 2 f(t+h) + f(t)|, h <= delta."""
    if delta < 0.0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    if isinstance(f, TestFunction) and f.omega2 is not None:
        return SmoothnessEstimate(
            value=float(f.omega2(delta, grid.t_max)),
            kind=KIND_OMEGA2,
            delta_or_lambda=delta,
            direction=UPPER_BOUND,
        )
    if delta == 0.0 or grid.step > delta / 16.0:
        raise GridTooCoarseError(
            f"grid step {grid.step} exceeds delta/16 = {delta / 16.0}"
        )
    s = grid.samples
    best = 0.0
    for lag in range(1, _lag_count(delta, grid.step) + 1):
        if 2 * lag >= s.size:
            break
        d = s[2 * lag :] - 2.0 * s[lag : -lag] + s[: -2 * lag]
        best = max(best, float(np.abs(d).max()))
    return SmoothnessEstimate(
        value=best, kind=KIND_OMEGA2, delta_or_lambda=delta, direction=LOWER_ESTIMATE
    )


def lipschitz_constant(f, alpha: float, grid: WindowGrid) -> SmoothnessEstimate:
    """Grid maximum of |f(t1) - f(t2)| / |t1 - t2|^alpha.

    A lower estimate of the smallest admissible Lipschitz constant of
    order alpha on the window.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must be in (0, 1], got {alpha}")
    s = grid.samples
    best = 0.0
    for lag in range(1, s.size):
        dist = (lag * grid.step) ** alpha
        best = max(best, float(np.abs(s[lag:] - s[:-lag]).max()) / dist)
    return SmoothnessEstimate(
        value=best, kind=KIND_LIPSCHITZ, delta_or_lambda=alpha, direction=LOWER_ESTIMATE
    )


def _box(a: np.ndarray, r: int) -> np.ndarray:
    """Centered moving average over 2r+1 samples (output shorter by 2r)."""
    w = 2 * r + 1
    c = np.cumsum(np.concatenate(([0.0], a)))
    return (c[w:] - c[:-w]) / w


def steklov_mean(fn, grid: WindowGrid, h: float):
    """Second-order Steklov mean of f on the window grid.

    The double moving average of half-width ~h/2 is twice differentiable
    for continuous f.  Returns (psi, psi', psi'') sampled on the core
    grid, with derivatives by central differences.  Samples below t = 0
    use the constant extension f(0).
    """
    r = max(1, int(round(h / (2.0 * grid.step))))
    pad = 2 * r + 2
    n = grid.ts.size
    idx = np.arange(-pad, n + pad, dtype=np.float64)
    ts_ext = grid.t_min + grid.step * idx
    fx_ext = np.asarray(fn(np.clip(ts_ext, 0.0, None)), dtype=np.float64)
    smooth = _box(_box(fx_ext, r), r)  # length n + 4
    d1 = np.gradient(smooth, grid.step)
    d2 = np.gradient(d1, grid.step)
    sl = slice(2, 2 + n)
    return smooth[sl], d1[sl], d2[sl]


def default_h_candidates(grid: WindowGrid, count: int = 6) -> list[float]:
    h_top = grid.span / 4.0
    h_bot = max(16.0 * grid.step, grid.span / 256.0)
    if h_bot >= h_top:
        return [h_top]
    ratio = (h_bot / h_top) ** (1.0 / (count - 1))
    return [h_top * ratio**i for i in range(count)]


def k_functional_upper(
    f,
    lam: float,
    grid: WindowGrid,
    h_candidates: list[float] | None = None,
) -> SmoothnessEstimate:
    """Upper bound on K(f; lam) = inf_psi ||f - psi|| + lam ||psi||_{C^2}.

    Each Steklov mean is a concrete twice-differentiable candidate, so
    evaluating the objective at it bounds the infimum from above; the
    minimum over the candidate set (plus psi = f itself for registered
    smooth functions) is returned.  Sup norms are estimated on the window
    grid.
    """
    if lam < 0.0:
        raise ValueError(f"lambda must be >= 0, got {lam}")
    if h_candidates is None:
        h_candidates = default_h_candidates(grid)
    if not h_candidates or any(h <= 0.0 for h in h_candidates):
        raise ValueError("h_candidates must be nonempty and positive")
    if 4.0 * max(h_candidates) > grid.span:
        raise WindowTooSmallError(
            f"max smoothing width {max(h_candidates)} needs samples beyond "
            f"t_max + 2 max(h); enlarge the window ({grid.span}) or shrink h"
        )
    fn = f.fn if isinstance(f, TestFunction) else f
    fx = grid.samples
    best = math.inf
    for h in h_candidates:
        psi, psi1, psi2 = steklov_mean(fn, grid, h)
        u = float(np.abs(fx - psi).max()) + lam * (
            float(np.abs(psi).max())
            + float(np.abs(psi1).max())
            + float(np.abs(psi2).max())
        )
        best = min(best, u)
    if isinstance(f, TestFunction) and f.is_smooth:
        norm = (
            float(np.abs(fx).max())
            + float(np.abs(np.asarray(f.d1(grid.ts), dtype=np.float64)).max())
            + float(np.abs(np.asarray(f.d2(grid.ts), dtype=np.float64)).max())
        )
        best = min(best, lam * norm)
    return SmoothnessEstimate(
        value=best,
        kind=KIND_K_FUNCTIONAL,
        delta_or_lambda=lam,
        direction=UPPER_BOUND,
    )
