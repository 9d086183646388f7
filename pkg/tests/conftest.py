import math

import numpy as np
import pytest

from markovlab import Interval, jacobi_system, lebesgue_measure


@pytest.fixture(scope="session")
def unit_interval():
    return Interval(-1.0, 1.0)


@pytest.fixture(scope="session")
def lebesgue():
    return lebesgue_measure()


@pytest.fixture(scope="session")
def legendre64():
    return jacobi_system(0.0, 0.0, 64)


@pytest.fixture(scope="session")
def chebsys64():
    return jacobi_system(-0.5, -0.5, 64)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240214)


def cheb_t_coeffs(n):
    """Monomial coefficients of T_n by the bare recurrence (test-side oracle)."""
    if n == 0:
        return [1]
    prev, cur = [1], [0, 1]
    for _ in range(n - 1):
        nxt = [0] + [2 * c for c in cur]
        nxt = [a - b for a, b in zip(nxt, prev + [0] * (len(nxt) - len(prev)))]
        prev, cur = cur, nxt
    return cur


def legendre_derivative_at_one(n, k):
    """P_n^(k)(1) = prod_{i<k} (n(n+1) - i(i+1)) / (2^k k!), a test-side oracle."""
    num = 1
    for i in range(k):
        num *= n * (n + 1) - i * (i + 1)
    return num / (2**k * math.factorial(k))
