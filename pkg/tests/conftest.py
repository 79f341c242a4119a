import numpy as np
import pytest

from radial_rkhs import KernelExpansion, backends


@pytest.fixture(scope="session", autouse=True)
def _warm_backend():
    # pay any JIT cost before timed tests run
    backends.warm_up()


def make_expansion(rng, dim, max_terms=5, lo=0.05, hi=0.95, scale=2.0):
    """Random kernel combination with <= max_terms terms."""
    m = int(rng.integers(1, max_terms + 1))
    centers = np.sort(rng.uniform(lo, hi, m))
    coeffs = rng.uniform(-scale, scale, m)
    return KernelExpansion(dim, centers, coeffs)
