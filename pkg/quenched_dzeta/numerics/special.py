"""Exponential integrals, Euler's constant and log-gamma."""

import math

from scipy.special import gammaln

from quenched_dzeta.exceptions import DomainError
from quenched_dzeta.numerics.summation import NeumaierSum

EULER_GAMMA = 0.5772156649015329

# Power series below, continued fraction above
E1_SERIES_CROSSOVER = 1.5

_EPS = 1e-16
_FPMIN = 1e-300
_MAX_ITERATIONS = 1000


def _e1_series(x: float) -> float:
    # E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
    acc = NeumaierSum()
    power = 1.0
    for k in range(1, _MAX_ITERATIONS):
        power *= -x / k
        term = power / k
        acc.add(term)
        if abs(term) < _EPS * abs(acc.value):
            break
    return -EULER_GAMMA - math.log(x) - acc.value


def _e1_continued_fraction(x: float) -> float:
    # Modified Lentz evaluation of e^{-x} / (x + 1 - 1^2/(x + 3 - 2^2/(x + 5 - ...)))
    b = x + 1.0
    c = 1.0 / _FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITERATIONS):
        an = -float(i * i)
        b += 2.0
        d = an * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return h * math.exp(-x)


def exp_integral_e1(x: float) -> float:
    """E1(x) = int_x^inf e^{-t}/t dt for x > 0."""
    if not x > 0 or math.isnan(x):
        raise DomainError(f"E1 is only defined here for x > 0, got {x!r}")
    if math.isinf(x):
        return 0.0
    if x <= E1_SERIES_CROSSOVER:
        return _e1_series(x)
    return _e1_continued_fraction(x)


def ein_series(x: float, k_max: int = 60, term_tol: float = 1e-12) -> tuple[float, int]:
    """Partial sum of Ein(x) = sum_{k>=1} (-1)^{k+1} x^k / (k! k).

    Stops at the first term below term_tol in magnitude or at k_max. Returns
    the compensated partial sum and the number of terms used.
    """
    if x < 0:
        raise DomainError(f"ein_series expects x >= 0, got {x!r}")
    if x == 0:
        return 0.0, 0
    acc = NeumaierSum()
    scaled = 1.0  # x^k / k!
    k_used = 0
    for k in range(1, k_max + 1):
        scaled *= x / k
        term = scaled / k if k % 2 == 1 else -scaled / k
        acc.add(term)
        k_used = k
        if abs(term) < term_tol:
            break
    return acc.value, k_used


def log_gamma(x: float) -> float:
    return float(gammaln(x))
