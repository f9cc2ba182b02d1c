"""
The zero-dimensional quartic action and its partition function.

    S(h, phi) = m0_sq/2 phi^2 + lambda/4! phi^4 + h phi
    Z(h)      = int dphi exp(-S(h, phi))
    F(h)      = ln Z(h)

ln Z is computed around the minimiser phi* of S(h, .) with exp(-S(phi*))
factored out, so large |h| never overflows.
"""

import functools
import logging
import math

import numpy as np

from quenched_dzeta.models import ModelParams, QuadratureConfig
from quenched_dzeta.numerics.quadrature import integrate_real_line

logger = logging.getLogger("quenched_dzeta")

_NEWTON_MAX_ITERATIONS = 200
_CACHE_SIZE = 1 << 16


def action(params: ModelParams, phi, h):
    """S(h, phi); accepts scalars or numpy arrays."""
    return 0.5 * params.m0_sq * phi**2 + params.lam / 24.0 * phi**4 + h * phi


def _gradient(params: ModelParams, phi: float, h: float) -> float:
    return params.m0_sq * phi + params.lam / 6.0 * phi**3 + h


def _curvature(params: ModelParams, phi: float) -> float:
    return params.m0_sq + 0.5 * params.lam * phi**2


def action_minimizer(params: ModelParams, h: float) -> float:
    """Unique root of m0_sq phi + lambda/6 phi^3 + h = 0.

    S' is strictly increasing, and the root lies between 0 and -h/m0_sq.
    Newton steps that leave the bracket are replaced by bisection.
    """
    if h == 0:
        return 0.0
    lo, hi = sorted((0.0, -h / params.m0_sq))
    phi = hi if h < 0 else lo
    # Start from the cubic-dominated estimate when it lies inside the bracket
    if params.lam > 0:
        guess = -math.copysign(abs(6.0 * h / params.lam) ** (1.0 / 3.0), h)
        if lo < guess < hi:
            phi = guess
    for _ in range(_NEWTON_MAX_ITERATIONS):
        g = _gradient(params, phi, h)
        if g == 0:
            return phi
        if g > 0:
            hi = phi
        else:
            lo = phi
        step = phi - g / _curvature(params, phi)
        if not lo < step < hi:
            step = 0.5 * (lo + hi)
        if abs(step - phi) <= 4 * np.finfo(float).eps * max(1.0, abs(phi)):
            return step
        phi = step
    return phi


@functools.lru_cache(maxsize=_CACHE_SIZE)
def _log_partition_cached(params: ModelParams, h: float, cfg: QuadratureConfig) -> float:
    phi_star = action_minimizer(params, h)
    s_star = action(params, phi_star, h)
    # Exact Taylor expansion of S(phi* + u) - S(phi*); the linear term vanishes
    c2 = 0.5 * params.m0_sq + 0.25 * params.lam * phi_star**2
    c3 = params.lam * phi_star / 6.0
    c4 = params.lam / 24.0

    def integrand(u: np.ndarray) -> np.ndarray:
        return np.exp(-(u * u * (c2 + u * (c3 + u * c4))))

    scale = 1.0 / math.sqrt(2.0 * c2)
    result = integrate_real_line(integrand, 0.0, cfg, scale=scale)
    value = result.require(f"partition function at h={h!r}")
    return -s_star + math.log(value)


def log_partition_function(params: ModelParams, h: float, cfg: QuadratureConfig) -> float:
    """F(h) = ln Z(h)."""
    return _log_partition_cached(params, float(h), cfg)


def partition_function(params: ModelParams, h: float, cfg: QuadratureConfig) -> float:
    """Z(h) = int dphi exp(-S(h, phi)) > 0."""
    return math.exp(log_partition_function(params, h, cfg))


def log_partition_grid(params: ModelParams, hs: np.ndarray, cfg: QuadratureConfig) -> np.ndarray:
    """ln Z(h) elementwise over an array of disorder values."""
    hs = np.asarray(hs, dtype=float)
    flat = [log_partition_function(params, h, cfg) for h in hs.ravel()]
    return np.asarray(flat, dtype=float).reshape(hs.shape)


def clear_cache() -> None:
    _log_partition_cached.cache_clear()
