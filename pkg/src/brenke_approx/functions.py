"""Registry of target functions used in experiments and error bounds.

Each entry carries the callable plus whatever smoothness metadata is known
in closed form: the exact first and second moduli (as functions of delta
and the window end T), a Lipschitz pair (alpha, M), and first/second
derivatives for members of the bounded-C^2 class.  Grid scans in
``smoothness`` produce lower estimates of the true suprema; the closed
forms here are the honest upper bounds the domination tests rely on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class TestFunction:
    name: str
    fn: Callable
    omega: Callable[[float, float], float] | None = None
    omega2: Callable[[float, float], float] | None = None
    lipschitz: tuple[float, float] | None = None  # (alpha, M)
    d1: Callable | None = None
    d2: Callable | None = None

    @property
    def is_smooth(self) -> bool:
        return self.d1 is not None and self.d2 is not None

    def __call__(self, t):
        return self.fn(t)


def _omega_id(delta, t_max):
    return min(delta, t_max)


def _omega_t2(delta, t_max):
    # sup of |a^2 - b^2| over [0, T] with |a - b| <= delta
    if delta >= t_max:
        return t_max * t_max
    return delta * (2.0 * t_max - delta)


def _omega_expneg(delta, t_max):
    return 1.0 - math.exp(-delta)


def _omega_sint(delta, t_max):
    return 2.0 * math.sin(delta / 2.0) if delta <= math.pi else 2.0


def _omega2_t2(delta, t_max):
    # second difference of t^2 is exactly 2 h^2
    return min(2.0 * delta * delta, 4.0 * t_max * t_max)


def _omega2_expneg(delta, t_max):
    # e^{-t}(1 - e^{-h})^2, maximal at t = 0, h = delta
    return (1.0 - math.exp(-delta)) ** 2


def _omega2_sint(delta, t_max):
    return 4.0 * math.sin(delta / 2.0) ** 2 if delta <= math.pi else 4.0


def _omega2_kink(delta, t_max):
    # attained straddling the kink: t = 1 - h gives exactly 2h
    return 2.0 * delta


def _omega2_sqrtt(delta, t_max):
    # |sqrt concavity is strongest at 0: sqrt(2h) - 2 sqrt(h)|
    return (2.0 - math.sqrt(2.0)) * math.sqrt(delta)


_ZERO = lambda delta, t_max: 0.0  # noqa: E731

REGISTRY: dict[str, TestFunction] = {}


def _register(tf: TestFunction) -> TestFunction:
    REGISTRY[tf.name] = tf
    return tf


one = _register(
    TestFunction(
        name="one",
        fn=lambda t: np.ones_like(np.asarray(t, dtype=np.float64)),
        omega=_ZERO,
        omega2=_ZERO,
        lipschitz=(1.0, 1.0),
        d1=lambda t: np.zeros_like(np.asarray(t, dtype=np.float64)),
        d2=lambda t: np.zeros_like(np.asarray(t, dtype=np.float64)),
    )
)

identity = _register(
    TestFunction(
        name="id",
        fn=lambda t: np.asarray(t, dtype=np.float64),
        omega=_omega_id,
        omega2=_ZERO,
        lipschitz=(1.0, 1.0),
        d1=lambda t: np.ones_like(np.asarray(t, dtype=np.float64)),
        d2=lambda t: np.zeros_like(np.asarray(t, dtype=np.float64)),
    )
)

t2 = _register(
    TestFunction(
        name="t2",
        fn=lambda t: np.asarray(t, dtype=np.float64) ** 2,
        omega=_omega_t2,
        omega2=_omega2_t2,
        lipschitz=None,  # not Lipschitz on the half line
        d1=lambda t: 2.0 * np.asarray(t, dtype=np.float64),
        d2=lambda t: np.full_like(np.asarray(t, dtype=np.float64), 2.0),
    )
)

expneg = _register(
    TestFunction(
        name="expneg",
        fn=lambda t: np.exp(-np.asarray(t, dtype=np.float64)),
        omega=_omega_expneg,
        omega2=_omega2_expneg,
        lipschitz=(1.0, 1.0),
        d1=lambda t: -np.exp(-np.asarray(t, dtype=np.float64)),
        d2=lambda t: np.exp(-np.asarray(t, dtype=np.float64)),
    )
)

sint = _register(
    TestFunction(
        name="sint",
        fn=lambda t: np.sin(np.asarray(t, dtype=np.float64)),
        omega=_omega_sint,
        omega2=_omega2_sint,
        lipschitz=(1.0, 1.0),
        d1=lambda t: np.cos(np.asarray(t, dtype=np.float64)),
        d2=lambda t: -np.sin(np.asarray(t, dtype=np.float64)),
    )
)

kink = _register(
    TestFunction(
        name="kink",
        fn=lambda t: np.abs(np.asarray(t, dtype=np.float64) - 1.0),
        omega=lambda delta, t_max: delta,
        omega2=_omega2_kink,
        lipschitz=(1.0, 1.0),
    )
)

sqrtt = _register(
    TestFunction(
        name="sqrtt",
        fn=lambda t: np.sqrt(np.asarray(t, dtype=np.float64)),
        omega=lambda delta, t_max: math.sqrt(delta),
        omega2=_omega2_sqrtt,
        lipschitz=(0.5, 1.0),
        # derivative is unbounded at 0, so no C^2 metadata
    )
)


def get(name: str) -> TestFunction:
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(
            f"unknown function {name!r}; registered: {sorted(REGISTRY)}"
        ) from None
