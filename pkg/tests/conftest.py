import numpy as np
import pytest

from brenke_approx import (
    make_appell_exp,
    make_gould_hopper,
    make_miller_lee,
    make_szasz,
    weights,
)


@pytest.fixture(scope="session")
def builtins():
    """The four built-in family instances used across the suite."""
    return {
        "szasz": make_szasz(),
        "appell": make_appell_exp(),
        "gould_hopper": make_gould_hopper(1.0, 1),
        "miller_lee": make_miller_lee(0.0),
    }


@pytest.fixture(scope="session")
def weight_cache(builtins):
    """Memoized weight vectors keyed by (family key, n, x)."""
    cache = {}

    def get(key, n, x):
        k = (key, n, float(x))
        if k not in cache:
            cache[k] = weights(builtins[key], n, float(x))
        return cache[k]

    return get


@pytest.fixture(scope="session")
def dyadic_n():
    return [1, 2, 4, 8, 16, 32, 64, 128, 256]


@pytest.fixture(scope="session")
def quarter_x():
    return [float(x) for x in np.arange(0.0, 4.25, 0.25)]
