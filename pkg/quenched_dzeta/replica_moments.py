"""
Integer moments E[Z^k] of the partition function (replica partition functions).

All moments are kept as ln E[Z^k]. Before integrating, the largest value of
k ln Z(h) on the support is factored out so the integrand lies in (0, 1].
"""

import logging
import math

import numpy as np

from quenched_dzeta.disorder import DisorderDistribution, expect
from quenched_dzeta.exceptions import ConvergenceError, DomainError
from quenched_dzeta.model import log_partition_grid
from quenched_dzeta.models import (
    ModelParams,
    MomentGrowthReport,
    MomentGrowthRow,
    MomentTable,
    QuadratureConfig,
)

logger = logging.getLogger("quenched_dzeta")


def log_partition_max(params: ModelParams, dist: DisorderDistribution, cfg: QuadratureConfig) -> float:
    """max of ln Z(h) over the support (Z is even and increasing in |h|)."""
    return float(np.max(log_partition_grid(params, dist.support_extremes(), cfg)))


def moment(
    params: ModelParams,
    dist: DisorderDistribution,
    k: int,
    cfg: QuadratureConfig,
    max_shift: bool = True,
) -> tuple[float, float]:
    """Return (ln E[Z^k], error estimate of that logarithm)."""
    if k < 1:
        raise DomainError(f"moment order must be >= 1, got {k}")
    shift = k * log_partition_max(params, dist, cfg) if max_shift else 0.0

    def shifted_power(h: np.ndarray) -> np.ndarray:
        return np.exp(k * log_partition_grid(params, h, cfg) - shift)

    value = expect(dist, shifted_power, cfg)
    if not value > 0:
        raise ConvergenceError(f"E[Z^{k}] evaluated to a non-positive value {value!r}")

    # Each ln Z carries at most max(abs_tol, rel_tol) and the outer integral its own tolerance
    per_z = max(cfg.abs_tol, cfg.rel_tol)
    outer = max(cfg.abs_tol / value, cfg.rel_tol)
    error = k * per_z + outer
    log_value = shift + math.log(value)
    logger.debug(f"ln E[Z^{k}] = {log_value:.12g} (+/- {error:.2e})")
    return log_value, error


def moment_table(
    params: ModelParams,
    dist: DisorderDistribution,
    k_max: int,
    cfg: QuadratureConfig,
) -> MomentTable:
    if k_max < 1:
        raise DomainError(f"k_max must be >= 1, got {k_max}")
    values = [moment(params, dist, k, cfg) for k in range(1, k_max + 1)]
    return MomentTable(
        k_max=k_max,
        log_moments=[v for v, _ in values],
        error_estimates=[e for _, e in values],
    )


def log_convexity_violations(table: MomentTable) -> list[int]:
    """Orders k where ln E[Z^{k+1}] + ln E[Z^{k-1}] < 2 ln E[Z^k] beyond twice the error margins."""
    violations = []
    for k in range(1, table.k_max):
        excess = table.log_moment(k + 1) + table.log_moment(k - 1) - 2.0 * table.log_moment(k)
        margin = 2.0 * (table.error(k + 1) + table.error(k - 1) + 2.0 * table.error(k))
        if excess < -margin:
            violations.append(k)
    return violations


def _coupling_constant(params: ModelParams) -> float:
    if not params.lam > 0:
        raise DomainError("the moment growth bound requires lambda > 0 (C_lambda diverges at 0)")
    return 0.75 * (6.0 / params.lam) ** (1.0 / 3.0)


def moment_bound_constants(
    params: ModelParams,
    dist: DisorderDistribution,
    literal_mass: bool = False,
) -> tuple[float, float]:
    """(alpha, beta) with E[Z^k] <= alpha beta^k.

    beta = exp(C_lambda r^{4/3}) sqrt(2 pi / m0_sq), C_lambda = 3/4 (3!/lambda)^{1/3}.
    With literal_mass the Gaussian factor is sqrt(2 pi / m0) instead.
    """
    c_lambda = _coupling_constant(params)
    r = dist.support_radius()
    mass = math.sqrt(params.m0_sq) if literal_mass else params.m0_sq
    beta = math.exp(c_lambda * r ** (4.0 / 3.0)) * math.sqrt(2.0 * math.pi / mass)
    return 1.0, beta


def verify_moment_growth(
    params: ModelParams,
    dist: DisorderDistribution,
    k_max: int,
    cfg: QuadratureConfig,
    table: MomentTable | None = None,
) -> MomentGrowthReport:
    """Check ln E[Z^k] <= ln alpha + k ln beta for k = 1..k_max; failures are reported, not raised."""
    try:
        alpha, beta = moment_bound_constants(params, dist)
        _, beta_literal = moment_bound_constants(params, dist, literal_mass=True)
    except DomainError as e:
        return MomentGrowthReport(error=str(e))

    if table is None or table.k_max < k_max:
        table = moment_table(params, dist, k_max, cfg)

    rows = []
    for k in range(1, k_max + 1):
        log_moment = table.log_moment(k)
        error = table.error(k)
        log_bound = math.log(alpha) + k * math.log(beta)
        log_bound_literal = math.log(alpha) + k * math.log(beta_literal)
        gap = log_bound - log_moment
        rows.append(MomentGrowthRow(
            k=k,
            log_moment=log_moment,
            error_estimate=error,
            log_bound=log_bound,
            gap=gap,
            passed=gap >= -error,
            log_bound_literal=log_bound_literal,
            gap_literal=log_bound_literal - log_moment,
        ))
    report = MomentGrowthReport(
        alpha=alpha,
        beta=beta,
        beta_literal=beta_literal,
        c_lambda=_coupling_constant(params),
        rows=rows,
    )
    if not report.passed:
        failed = [row.k for row in rows if not row.passed]
        logger.warning(f"Moment growth bound violated for k={failed}")
    return report

