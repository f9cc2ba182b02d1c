"""
Deterministic adaptive quadrature.

Every panel is integrated with the 15-point Gauss-Kronrod rule; the difference
to the embedded 7-point Gauss rule is the panel error estimate. The panel with
the largest estimate is bisected until the global estimate meets
``max(abs_tol, rel_tol * |value|)`` or ``max_subdivisions`` panels exist.

Integrands are vectorised: they receive a 1-D numpy array of abscissae and
must return an array of the same shape.
"""

import heapq
import logging
from typing import Callable

import numpy as np

from quenched_dzeta.exceptions import DomainError
from quenched_dzeta.models import QuadratureConfig, QuadratureResult
from quenched_dzeta.numerics.summation import compensated_sum

logger = logging.getLogger("quenched_dzeta")

Integrand = Callable[[np.ndarray], np.ndarray]

# Kronrod abscissae on [0, 1) in decreasing order; the odd entries are the
# 7-point Gauss nodes.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# Full symmetric rule on [-1, 1]
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS_WEIGHTS = np.zeros(15)
_GAUSS_WEIGHTS[1:7:2] = _WG[:3]
_GAUSS_WEIGHTS[7] = _WG[3]
_GAUSS_WEIGHTS[9:15:2] = _WG[2::-1]

# Window doublings allowed before an unbounded integrand is declared non-decaying
MAX_WINDOW_DOUBLINGS = 64


def _evaluate(f: Integrand, x: np.ndarray) -> np.ndarray:
    fx = np.asarray(f(x), dtype=float)
    if fx.shape != x.shape:
        fx = np.broadcast_to(fx, x.shape)
    if not np.all(np.isfinite(fx)):
        bad = x[~np.isfinite(fx)][0]
        raise DomainError(f"integrand is not finite at x={bad!r}")
    return fx


def _gauss_kronrod(f: Integrand, a: float, b: float) -> tuple[float, float]:
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    fx = _evaluate(f, mid + half * _NODES)
    kronrod = half * float(np.dot(_KRONROD_WEIGHTS, fx))
    gauss = half * float(np.dot(_GAUSS_WEIGHTS, fx))
    return kronrod, abs(kronrod - gauss)


def integrate_finite(f: Integrand, lo: float, hi: float, cfg: QuadratureConfig) -> QuadratureResult:
    """Integrate f over [lo, hi] to the tolerance in cfg."""
    if not (np.isfinite(lo) and np.isfinite(hi)) or not lo < hi:
        raise DomainError(f"integration bounds must satisfy lo < hi, got [{lo!r}, {hi!r}]")

    value, error = _gauss_kronrod(f, lo, hi)
    # Max-heap on error; the sequence number keeps ties deterministic
    heap = [(-error, 0, lo, hi, value)]
    panels = 1
    seq = 1
    total_value, total_error = value, error

    while total_error > cfg.tolerance_for(total_value) and panels < cfg.max_subdivisions:
        neg_err, _, a, b, v = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        if not a < mid < b:
            # Panel cannot be split further in double precision
            heapq.heappush(heap, (neg_err, seq, a, b, v))
            break
        left_v, left_e = _gauss_kronrod(f, a, mid)
        right_v, right_e = _gauss_kronrod(f, mid, b)
        heapq.heappush(heap, (-left_e, seq, a, mid, left_v))
        heapq.heappush(heap, (-right_e, seq + 1, mid, b, right_v))
        seq += 2
        panels += 1
        total_value += left_v + right_v - v
        total_error += left_e + right_e + neg_err

    # Final totals are re-summed left to right so they do not depend on heap order
    ordered = sorted(heap, key=lambda item: item[2])
    total_value = compensated_sum(item[4] for item in ordered)
    total_error = compensated_sum(-item[0] for item in ordered)
    converged = total_error <= cfg.tolerance_for(total_value)
    if not converged:
        logger.warning(
            f"Quadrature on [{lo:g}, {hi:g}] unconverged: error {total_error:.3e} "
            f"after {panels} panels"
        )
    return QuadratureResult(
        value=total_value,
        error_estimate=max(total_error, 0.0),
        subdivisions_used=panels,
        converged=converged,
    )


def _probe(f: Integrand, points: list[float]) -> np.ndarray:
    return np.abs(_evaluate(f, np.asarray(points, dtype=float)))


def integrate_real_line(
    f: Integrand,
    center: float,
    cfg: QuadratureConfig,
    scale: float = 1.0,
) -> QuadratureResult:
    """Integrate f over the real line.

    The window [center - w, center + w] starts at w = scale and doubles until
    both edges fall below decay_cutoff times the largest value seen.
    """
    if not scale > 0:
        raise DomainError(f"window scale must be positive, got {scale!r}")
    width = scale
    peak = float(np.max(_probe(f, [center, center - 0.5 * width, center + 0.5 * width])))
    for _ in range(MAX_WINDOW_DOUBLINGS):
        edges = _probe(f, [center - width, center + width])
        peak = max(peak, float(np.max(edges)))
        if peak > 0 and float(np.max(edges)) < cfg.decay_cutoff * peak:
            logger.debug(f"Real-line window about {center:g} settled at half-width {width:g}")
            return integrate_finite(f, center - width, center + width, cfg)
        width *= 2.0
    raise DomainError(
        f"integrand does not decay within a half-width of {width:g} about {center:g}; "
        "check that the quartic coupling is non-negative"
    )


def integrate_half_line(
    f: Integrand,
    lo: float,
    cfg: QuadratureConfig,
    scale: float = 1.0,
) -> QuadratureResult:
    """Integrate f over [lo, inf) by doubling the upper limit until f has decayed."""
    if not scale > 0:
        raise DomainError(f"window scale must be positive, got {scale!r}")
    width = scale
    peak = float(np.max(_probe(f, [lo, lo + 0.5 * width])))
    for _ in range(MAX_WINDOW_DOUBLINGS):
        edge = float(_probe(f, [lo + width])[0])
        peak = max(peak, edge)
        if peak > 0 and edge < cfg.decay_cutoff * peak:
            return integrate_finite(f, lo, lo + width, cfg)
        width *= 2.0
    raise DomainError(f"integrand does not decay on [{lo:g}, inf)")
