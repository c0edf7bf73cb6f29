"""Truncated formal power series and Brenke weight-polynomial tables.

A series is a plain 1-D float64 array; index j holds the coefficient of
t^j.  Arithmetic is exact truncated arithmetic: a degree-K result depends
only on input coefficients up to degree K.  Coefficients are floats rather
than rationals because the generating functions of interest (exp and its
relatives) are transcendental; every downstream check is tolerance based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_K_MAX = 256

_TINY = float(np.finfo(np.float64).tiny)


def as_series(coeffs, k_max: int | None = None) -> np.ndarray:
    """Normalize input to a float64 coefficient array.

    With ``k_max`` given, the result is zero-padded or truncated to length
    ``k_max + 1``.  Empty or non-finite input is rejected.
    """
    c = np.atleast_1d(np.asarray(coeffs, dtype=np.float64))
    if c.ndim != 1 or c.size < 1:
        raise ValueError("a series needs at least one coefficient")
    if not np.all(np.isfinite(c)):
        bad = int(np.flatnonzero(~np.isfinite(c))[0])
        raise ValueError(f"non-finite series coefficient at index {bad}")
    if k_max is None:
        return c.copy()
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    out = np.zeros(k_max + 1)
    m = min(c.size, k_max + 1)
    out[:m] = c[:m]
    return out


def _flush(c: np.ndarray) -> np.ndarray:
    # subnormals would only add noise once they reach Horner evaluation
    c[np.abs(c) < _TINY] = 0.0
    return c


def series_mul(a, b, k: int) -> np.ndarray:
    """Cauchy product truncated to degree k: out[j] = sum_i a[i]*b[j-i]."""
    a = as_series(a, k)
    b = as_series(b, k)
    return _flush(np.convolve(a, b)[: k + 1])


def series_compose(outer, inner, k: int) -> np.ndarray:
    """Coefficients of outer(inner(t)) to degree k.

    ``inner`` must have zero constant term; otherwise each output
    coefficient would be an infinite sum.  Because inner(t)^m starts at
    degree m, the truncated result is exact to degree k.
    """
    outer = as_series(outer, k)
    inner = as_series(inner, k)
    if inner[0] != 0.0:
        raise ValueError(
            f"composition needs inner[0] == 0, got {inner[0]!r} at index 0"
        )
    out = np.zeros(k + 1)
    power = np.zeros(k + 1)
    power[0] = 1.0
    for m in range(k + 1):
        if outer[m] != 0.0:
            out += outer[m] * power
        if m < k:
            power = np.convolve(power, inner)[: k + 1]
    return _flush(out)


def exp_series(k_max: int) -> np.ndarray:
    """Coefficients of e^t: 1/j! (zero once 1/j! underflows float64)."""
    c = np.zeros(k_max + 1)
    c[0] = 1.0
    for j in range(1, k_max + 1):
        c[j] = c[j - 1] / j
    return _flush(c)


def geometric_series(k_max: int, ratio: float = 1.0) -> np.ndarray:
    """Coefficients of 1/(1 - ratio*t): ratio^j."""
    return _flush(ratio ** np.arange(k_max + 1, dtype=np.float64))


def identity_series(k_max: int) -> np.ndarray:
    c = np.zeros(k_max + 1)
    if k_max >= 1:
        c[1] = 1.0
    return c


def one_series(k_max: int) -> np.ndarray:
    c = np.zeros(k_max + 1)
    c[0] = 1.0
    return c


@dataclass(frozen=True, eq=False)
class BrenkeTable:
    """Triangular coefficient table of the weight polynomials.

    ``rows[k][m]`` holds the coefficient of y^m in pi_k(y), for m <= k.
    Nothing is stored above the diagonal: because h has no constant term,
    [t^k] h(t)^m vanishes identically for m > k.
    """

    rows: tuple[np.ndarray, ...]
    k_max: int

    def coeff(self, k: int, m: int) -> float:
        if not 0 <= k <= self.k_max:
            raise IndexError(f"k={k} outside table range 0..{self.k_max}")
        if not 0 <= m <= k:
            return 0.0
        return float(self.rows[k][m])


def brenke_table(a1, a2, h, k_max: int = DEFAULT_K_MAX) -> BrenkeTable:
    """Expand A1(h(t)) * A2(y h(t)) = sum_k pi_k(y) t^k into a table.

    Writing B = A1 o h and H = h, the coefficient of y^m in pi_k is
    a2[m] * [t^k](B * H^m).  The powers B*H^m are built incrementally,
    one convolution per column, and reused across every row.
    """
    a1 = as_series(a1, k_max)
    a2 = as_series(a2, k_max)
    h = as_series(h, k_max)
    if a1[0] == 0.0:
        raise ValueError("a1[0] must be nonzero (offending index 0)")
    if h[0] != 0.0:
        raise ValueError(
            f"h must have no constant term, got {h[0]!r} (offending index 0)"
        )
    if k_max >= 1 and h[1] == 0.0:
        raise ValueError("h[1] must be nonzero (offending index 1)")

    cols = np.zeros((k_max + 1, k_max + 1))
    g = series_compose(a1, h, k_max)  # B * H^0
    for m in range(k_max + 1):
        cols[:, m] = a2[m] * g
        if m < k_max:
            g = np.convolve(g, h)[: k_max + 1]
    rows = tuple(_flush(cols[k, : k + 1].copy()) for k in range(k_max + 1))
    return BrenkeTable(rows=rows, k_max=k_max)


def eval_pi(table: BrenkeTable, k: int, y: float) -> float:
    """Horner evaluation of pi_k(y) from the stored row.

    Raises OverflowError when the value leaves float64 range; callers that
    need such points should switch to the log-space weight path in
    ``operators``.
    """
    if not 0 <= k <= table.k_max:
        raise IndexError(f"k={k} outside table range 0..{table.k_max}")
    if not math.isfinite(y):
        raise ValueError(f"evaluation point must be finite, got {y!r}")
    acc = 0.0
    with np.errstate(over="ignore", invalid="ignore"):
        for c in reversed(table.rows[k]):
            acc = acc * y + c
    if not math.isfinite(acc):
        raise OverflowError(
            f"pi_{k}({y!r}) overflows float64; use the scaled weight path"
        )
    return acc


def eval_pi_row_log(table: BrenkeTable, k: int, y: float) -> float:
    """log pi_k(y) for y > 0, computed stably from the stored row.

    Used as the scaled evaluation path when plain Horner overflows.  The
    row may contain mixed signs; the signed log-sum-exp keeps track of the
    overall sign and raises if the evaluated polynomial is negative.
    """
    if y <= 0.0:
        raise ValueError("log evaluation needs y > 0")
    row = table.rows[k]
    nz = np.flatnonzero(row)
    if nz.size == 0:
        return -math.inf
    logs = np.log(np.abs(row[nz])) + nz * math.log(y)
    signs = np.sign(row[nz])
    top = logs.max()
    total = float(np.sum(signs * np.exp(logs - top)))
    if total <= 0.0:
        raise OverflowError(
            f"pi_{k}({y!r}) is nonpositive in log evaluation; "
            "weight polynomial positivity is violated"
        )
    return float(top + math.log(total))
