"""
The distributional zeta-function Phi(s) = E_mu[Z(h)^{-s}] and the series
representation of the quenched free energy it yields:

    E[ln Z] = sum_{k>=1} (-1)^{k+1} a^k E[Z^k] / (k! k) - (ln a + gamma) + R(a)
    R(a)    = -E_mu[ int_a^inf dt/t e^{-Z(h) t} ] = -E_mu[E1(a Z(h))]

valid for any split point a > 0 when mu has compact support.
"""

import logging
import math
from typing import Callable, Optional

import numpy as np

from quenched_dzeta.disorder import DisorderDistribution, expect
from quenched_dzeta.exceptions import DomainError, SeriesOverflowError
from quenched_dzeta.model import log_partition_grid, partition_function
from quenched_dzeta.models import FreeEnergyReport, ModelParams, QuadratureConfig, SeriesConfig
from quenched_dzeta.numerics.quadrature import integrate_finite, integrate_half_line
from quenched_dzeta.numerics.special import EULER_GAMMA, exp_integral_e1, log_gamma
from quenched_dzeta.numerics.summation import compensated_sum
from quenched_dzeta.oracle import quenched_direct
from quenched_dzeta.replica_moments import log_partition_max, moment

logger = logging.getLogger("quenched_dzeta")

# a * max Z above which the alternating series loses more digits than
# compensated summation recovers
CANCELLATION_THRESHOLD = 30.0

# Largest argument of exp() that stays finite in double precision
_MAX_LOG_TERM = 709.0


def phi(s: complex, params: ModelParams, dist: DisorderDistribution, cfg: QuadratureConfig) -> complex:
    """Phi(s) = E_mu[Z(h)^{-s}] for Re(s) >= 0; s = -1 gives E[Z]."""
    s = complex(s)
    if s == -1:
        return complex(math.exp(-annealed_value(params, dist, cfg)))
    if s.real < 0:
        raise DomainError(f"Phi(s) is only evaluated for Re(s) >= 0 (or s = -1), got s={s}")
    if s == 0:
        return complex(1.0)

    def log_z(h: np.ndarray) -> np.ndarray:
        return log_partition_grid(params, h, cfg)

    real = expect(dist, lambda h: np.exp(-s.real * log_z(h)) * np.cos(s.imag * log_z(h)), cfg)
    if s.imag == 0:
        return complex(real)
    imag = expect(dist, lambda h: -np.exp(-s.real * log_z(h)) * np.sin(s.imag * log_z(h)), cfg)
    return complex(real, imag)


def phi_derivative_at_zero(
    params: ModelParams,
    dist: DisorderDistribution,
    cfg: QuadratureConfig,
    step: float = 1e-5,
) -> float:
    """One-sided difference -(Phi(step) - 1) / step, an O(step) estimate of E[ln Z]."""
    if not step > 0:
        raise DomainError(f"the difference step must be positive, got {step!r}")
    drop = expect(dist, lambda h: np.expm1(-step * log_partition_grid(params, h, cfg)), cfg)
    return -drop / step


def annealed_value(params: ModelParams, dist: DisorderDistribution, cfg: QuadratureConfig) -> float:
    """F_a = -ln Phi(-1) = -ln E[Z]."""
    log_mean_z, _ = moment(params, dist, 1, cfg)
    return -log_mean_z


def log_factorial(k: int) -> float:
    """ln k! accumulated term by term."""
    total = 0.0
    for j in range(2, k + 1):
        total += math.log(j)
    return total


def series_term(k: int, a: float, log_moment_k: float, log_factorial_k: Optional[float] = None) -> float:
    """(-1)^{k+1} a^k E[Z^k] / (k! k), evaluated as a signed exponential."""
    if k < 1:
        raise DomainError(f"series index must be >= 1, got {k}")
    if log_factorial_k is None:
        log_factorial_k = log_factorial(k)
    exponent = k * math.log(a) + log_moment_k - log_factorial_k - math.log(k)
    if exponent > _MAX_LOG_TERM:
        raise SeriesOverflowError(
            f"series term k={k} overflows (log magnitude {exponent:.1f}); reduce the split point a={a}"
        )
    magnitude = math.exp(exponent)
    return magnitude if k % 2 == 1 else -magnitude


def _e1_of_partition(params: ModelParams, a: float, cfg: QuadratureConfig) -> Callable[[np.ndarray], np.ndarray]:
    def g(h: np.ndarray) -> np.ndarray:
        log_z = log_partition_grid(params, h, cfg)
        flat = [exp_integral_e1(a * math.exp(v)) for v in log_z.ravel()]
        return np.asarray(flat, dtype=float).reshape(log_z.shape)
    return g


def remainder(a: float, params: ModelParams, dist: DisorderDistribution, cfg: QuadratureConfig) -> float:
    """R(a) = -E_mu[E1(a Z(h))]."""
    if not a > 0:
        raise DomainError(f"split point a must be positive, got {a!r}")
    return -expect(dist, _e1_of_partition(params, a, cfg), cfg)


def remainder_direct(a: float, params: ModelParams, dist: DisorderDistribution, cfg: QuadratureConfig) -> float:
    """R(a) by nested quadrature of -int dmu(h) int_a^inf dt/t e^{-Z(h) t}."""
    if not a > 0:
        raise DomainError(f"split point a must be positive, got {a!r}")

    def tail(z: float) -> float:
        result = integrate_half_line(lambda t: np.exp(-z * t) / t, a, cfg, scale=1.0 / z)
        return result.require("remainder tail integral")

    def g(h: np.ndarray) -> np.ndarray:
        log_z = log_partition_grid(params, h, cfg)
        return np.asarray([tail(math.exp(v)) for v in log_z.ravel()]).reshape(log_z.shape)

    return -expect(dist, g, cfg)


def remainder_bound(a: float, params: ModelParams, cfg: QuadratureConfig) -> float:
    """|R(a)| <= exp(-Z(0) a) / (Z(0) a)."""
    if not a > 0:
        raise DomainError(f"split point a must be positive, got {a!r}")
    x = partition_function(params, 0.0, cfg) * a
    return math.exp(-x) / x


def phi_split(
    s: float,
    a: float,
    params: ModelParams,
    dist: DisorderDistribution,
    cfg: QuadratureConfig,
) -> tuple[float, float]:
    """Split Phi(s) = Phi1 + Phi2 at t = a in the Mellin representation.

    Phi1 = 1/Gamma(s) E[int_0^a t^{s-1} e^{-Zt} dt], computed after the
    substitution u = t^s which removes the endpoint singularity;
    Phi2 = 1/Gamma(s) E[int_a^inf t^{s-1} e^{-Zt} dt].
    """
    if not s > 0:
        raise DomainError(f"the Mellin split needs real s > 0, got {s!r}")
    if not a > 0:
        raise DomainError(f"split point a must be positive, got {a!r}")
    inv_gamma_s = math.exp(-log_gamma(s))
    inv_gamma_s1 = math.exp(-log_gamma(s + 1.0))
    upper = a**s

    def head(z: float) -> float:
        result = integrate_finite(lambda u: np.exp(-z * u ** (1.0 / s)), 0.0, upper, cfg)
        return result.require("Mellin head integral") * inv_gamma_s1

    def tail(z: float) -> float:
        result = integrate_half_line(lambda t: t ** (s - 1.0) * np.exp(-z * t), a, cfg, scale=1.0 / z)
        return result.require("Mellin tail integral") * inv_gamma_s

    def over_support(part: Callable[[float], float]) -> Callable[[np.ndarray], np.ndarray]:
        def g(h: np.ndarray) -> np.ndarray:
            log_z = log_partition_grid(params, h, cfg)
            return np.asarray([part(math.exp(v)) for v in log_z.ravel()]).reshape(log_z.shape)
        return g

    return expect(dist, over_support(head), cfg), expect(dist, over_support(tail), cfg)


def quenched_free_energy(
    params: ModelParams,
    dist: DisorderDistribution,
    scfg: SeriesConfig,
    cfg: QuadratureConfig,
    with_oracle: bool = True,
    on_term: Optional[Callable[[int, float], None]] = None,
) -> FreeEnergyReport:
    """Assemble E[ln Z] from the moment series, the (ln a + gamma) correction and R(a)."""
    a = scfg.a
    warnings: list[str] = []

    max_z = math.exp(log_partition_max(params, dist, cfg))
    cancellation = a * max_z > CANCELLATION_THRESHOLD
    if cancellation:
        msg = (
            f"a * max Z = {a * max_z:.3g} exceeds {CANCELLATION_THRESHOLD:g}; the alternating "
            "series cancels catastrophically, reduce a"
        )
        warnings.append(msg)
        logger.warning(msg)

    terms: list[float] = []
    log_fact = 0.0
    log_mean_z = None
    converged = False
    for k in range(1, scfg.k_max + 1):
        log_fact += math.log(k)
        log_m, _ = moment(params, dist, k, cfg)
        if k == 1:
            log_mean_z = log_m
        try:
            term = series_term(k, a, log_m, log_fact)
        except SeriesOverflowError as e:
            warnings.append(str(e))
            logger.warning(str(e))
            break
        terms.append(term)
        if on_term is not None:
            on_term(k, term)
        # Stop only once the terms have started to shrink
        decreasing = k == 1 or abs(term) < abs(terms[-2])
        if decreasing and abs(term) < scfg.term_tol:
            converged = True
            break

    k_used = len(terms)
    if not converged and k_used == scfg.k_max:
        msg = (
            f"series did not reach term_tol={scfg.term_tol:g} within k_max={scfg.k_max} "
            f"(last term {terms[-1]:.3e}); reduce a or raise k_max"
        )
        warnings.append(msg)
        logger.warning(msg)

    magnitudes = [abs(t) for t in terms]
    peak = int(np.argmax(magnitudes)) if magnitudes else 0
    monotone = all(magnitudes[j + 1] <= magnitudes[j] for j in range(peak, len(magnitudes) - 1))
    tail_bound = None
    if converged:
        next_log_m, _ = moment(params, dist, k_used + 1, cfg)
        tail_bound = abs(series_term(k_used + 1, a, next_log_m, log_fact + math.log(k_used + 1)))
        monotone = monotone and tail_bound <= magnitudes[-1]

    series_partial = compensated_sum(terms)
    correction = -(math.log(a) + EULER_GAMMA)
    remainder_value = remainder(a, params, dist, cfg)
    bound = remainder_bound(a, params, cfg)
    total = series_partial + correction + remainder_value

    if log_mean_z is None:
        log_mean_z, _ = moment(params, dist, 1, cfg)
    oracle_value = quenched_direct(params, dist, cfg) if with_oracle else None
    discrepancy = total - oracle_value if oracle_value is not None else None

    return FreeEnergyReport(
        a=a,
        series_partial=series_partial,
        k_used=k_used,
        correction=correction,
        remainder_value=remainder_value,
        remainder_bound=bound,
        total=total,
        tail_bound=tail_bound,
        monotone_tail=monotone,
        converged=converged,
        cancellation_warning=cancellation,
        oracle_value=oracle_value,
        discrepancy=discrepancy,
        annealed_value=-log_mean_z,
        log_mean_z=log_mean_z,
        warnings=warnings,
    )
