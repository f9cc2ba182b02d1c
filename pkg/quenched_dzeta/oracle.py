"""
Brute-force references for E[ln Z], independent of the moment series.

`quenched_direct` is a nested quadrature. `quenched_mc` is a seeded Monte
Carlo mean: samples are split into shards of fixed size, shard i draws from
the i-th child of ``SeedSequence(seed)``, so the estimate depends only on the
seed and the shard size, never on how shards are scheduled.
"""

import logging
import math
from typing import Callable

import numpy as np
from numpy.polynomial import Chebyshev

from quenched_dzeta.disorder import ContinuousDistribution, DisorderDistribution, expect
from quenched_dzeta.model import log_partition_grid
from quenched_dzeta.models import McConfig, ModelParams, QuadratureConfig

logger = logging.getLogger("quenched_dzeta")

_SURROGATE_START_DEGREE = 16
_SURROGATE_MAX_DEGREE = 512


def quenched_direct(params: ModelParams, dist: DisorderDistribution, cfg: QuadratureConfig) -> float:
    """E_mu[ln Z(h)] by quadrature over h of ln Z(h)."""
    return expect(dist, lambda h: log_partition_grid(params, h, cfg), cfg)


def log_partition_surrogate(
    params: ModelParams,
    radius: float,
    cfg: QuadratureConfig,
) -> Callable[[np.ndarray], np.ndarray]:
    """Chebyshev interpolant of ln Z on [-radius, radius].

    The degree doubles until the trailing coefficients drop below rel_tol
    relative to the largest one.
    """
    def log_z(h: np.ndarray) -> np.ndarray:
        return log_partition_grid(params, h, cfg)

    degree = _SURROGATE_START_DEGREE
    while True:
        series = Chebyshev.interpolate(log_z, degree, domain=[-radius, radius])
        coef = np.abs(series.coef)
        if np.max(coef[-4:]) <= cfg.rel_tol * max(np.max(coef), 1.0) or degree >= _SURROGATE_MAX_DEGREE:
            break
        degree *= 2
    logger.debug(f"ln Z surrogate on [-{radius:g}, {radius:g}] uses degree {degree}")
    return series


def shard_sizes(mc: McConfig) -> list[int]:
    full, rest = divmod(mc.n_samples, mc.shard_size)
    return [mc.shard_size] * full + ([rest] if rest else [])


def shard_generators(mc: McConfig) -> list[np.random.Generator]:
    children = np.random.SeedSequence(mc.seed).spawn(len(shard_sizes(mc)))
    return [np.random.default_rng(child) for child in children]


def mc_log_partition(
    params: ModelParams,
    dist: DisorderDistribution,
    cfg: QuadratureConfig,
) -> Callable[[np.ndarray], np.ndarray]:
    """ln Z evaluator for sampled h: surrogate for densities, exact for atoms."""
    if isinstance(dist, ContinuousDistribution):
        return log_partition_surrogate(params, dist.support_radius(), cfg)
    return lambda h: log_partition_grid(params, h, cfg)


def sample_shard(
    dist: DisorderDistribution,
    log_z: Callable[[np.ndarray], np.ndarray],
    rng: np.random.Generator,
    n: int,
) -> np.ndarray:
    return np.asarray(log_z(dist.sample(rng, n)), dtype=float)


def summarize(values: np.ndarray) -> tuple[float, float]:
    """Mean and standard error, computed about the first sample for stability."""
    n = values.size
    pivot = values[0]
    deviations = values - pivot
    estimate = float(pivot + math.fsum(deviations) / n)
    if n < 2:
        return estimate, 0.0
    std = float(np.std(deviations, ddof=1))
    return estimate, std / math.sqrt(n)


def quenched_mc(
    params: ModelParams,
    dist: DisorderDistribution,
    mc: McConfig,
    cfg: QuadratureConfig,
) -> tuple[float, float]:
    """Monte Carlo estimate of E[ln Z] and its standard error."""
    log_z = mc_log_partition(params, dist, cfg)
    shards = [
        sample_shard(dist, log_z, rng, n)
        for rng, n in zip(shard_generators(mc), shard_sizes(mc))
    ]
    return summarize(np.concatenate(shards))
