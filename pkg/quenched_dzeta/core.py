import asyncio
import concurrent.futures
import logging
import math
from datetime import datetime
from typing import Any, Mapping, Optional, Sequence, Union

import numpy as np

from quenched_dzeta import oracle, replica_moments, zeta
from quenched_dzeta.config import RunConfig, default_config
from quenched_dzeta.disorder import DisorderDistribution, make_distribution
from quenched_dzeta.exceptions import DomainError
from quenched_dzeta.model import log_partition_function
from quenched_dzeta.models import (
    EngineStats,
    FreeEnergyReport,
    McConfig,
    ModelParams,
    MomentGrowthReport,
    MomentTable,
    PhiValue,
    QuadratureConfig,
    SeriesConfig,
    SweepReport,
    ValidationReport,
)
from quenched_dzeta.observability.callbacks import CallbackManager, DzetaEvent, EventType
from quenched_dzeta.observability.metrics import MetricsTracker
from quenched_dzeta.validation import run_checks

logger = logging.getLogger("quenched_dzeta")


class QuenchedFreeEnergy:
    """
    The main entry point: one disordered model, one set of tolerances.

    - `free_energy(a)` assembles E[ln Z] from the replica moments, the
      (ln a + gamma) correction and the remainder R(a)
    - `quenched_direct()` and `quenched_mc()` are the brute-force references
    - `validate()` runs the invariant suite

    Every computation emits events on `callbacks` and updates `metrics`.
    Async twins fan independent work out to threads and gather it in index
    order, so they return exactly what the sync methods return.
    """

    def __init__(
        self,
        params: ModelParams,
        disorder: Union[DisorderDistribution, Mapping[str, Any]],
        quadrature: QuadratureConfig = None,
        series: SeriesConfig = None,
        mc: McConfig = None,
    ):
        self.params = params
        self.disorder = make_distribution(disorder)
        self.quadrature = quadrature or default_config
        self.series = series or SeriesConfig()
        self.mc = mc or McConfig()

        self.callbacks = CallbackManager()
        self.metrics = MetricsTracker()
        self._register_metrics_hooks()

    @classmethod
    def from_config(cls, run: RunConfig) -> "QuenchedFreeEnergy":
        return cls(run.model, run.disorder, quadrature=run.quadrature, series=run.series, mc=run.mc)

    def _register_metrics_hooks(self):
        self.callbacks.on(EventType.MOMENT_COMPUTED, lambda e: self.metrics.record_moment())
        self.callbacks.on(EventType.SERIES_TERM, lambda e: self.metrics.record_series_term())
        self.callbacks.on(EventType.FREE_ENERGY_COMPUTED, lambda e: self.metrics.record_free_energy(
            e.data["report"]
        ))
        self.callbacks.on(EventType.CHECK_COMPLETED, lambda e: self.metrics.record_check(e.data["passed"]))
        self.callbacks.on(EventType.MC_SHARD_COMPLETED, lambda e: self.metrics.record_mc_samples(e.data["n"]))

    def _emit(self, event_type: EventType, **data) -> None:
        self.callbacks.emit(DzetaEvent(type=event_type, timestamp=datetime.now(), data=data))

    # --- FREE ENERGY ---

    def free_energy(self, a: Optional[float] = None, with_oracle: bool = True) -> FreeEnergyReport:
        """E[ln Z] through the moment series at split point `a` (default: series.a)."""
        scfg = self.series if a is None else SeriesConfig(**{**self.series.model_dump(), "a": a})
        report = zeta.quenched_free_energy(
            self.params,
            self.disorder,
            scfg,
            self.quadrature,
            with_oracle=with_oracle,
            on_term=lambda k, term: self._emit(EventType.SERIES_TERM, k=k, term=term),
        )
        if report.cancellation_warning:
            self._emit(EventType.CANCELLATION_WARNING, a=report.a)
        if not report.converged:
            self._emit(EventType.SERIES_TRUNCATED, a=report.a, k_used=report.k_used)
        self._emit(EventType.FREE_ENERGY_COMPUTED, report=report)
        logger.info(
            f"E[ln Z] = {report.total:.12g} at a={report.a:g} "
            f"(k_used={report.k_used}, converged={report.converged})"
        )
        return report

    async def afree_energy(self, a: Optional[float] = None, with_oracle: bool = True) -> FreeEnergyReport:
        return await asyncio.to_thread(self.free_energy, a, with_oracle)

    def sweep_a(self, a_values: Sequence[float], with_oracle: bool = True) -> SweepReport:
        """One free-energy report per split point; `spread` is max - min of the totals."""
        if not a_values:
            raise DomainError("sweep_a needs at least one split point")
        reports = [self.free_energy(a, with_oracle=with_oracle) for a in a_values]
        totals = [r.total for r in reports]
        return SweepReport(reports=reports, spread=max(totals) - min(totals))

    async def asweep_a(self, a_values: Sequence[float], with_oracle: bool = True) -> SweepReport:
        return await asyncio.to_thread(self.sweep_a, a_values, with_oracle)

    # --- MOMENTS ---

    async def amoment_table(self, k_max: int) -> MomentTable:
        """ln E[Z^k] for k = 1..k_max, one thread per order."""
        if k_max < 1:
            raise DomainError(f"k_max must be >= 1, got {k_max}")
        results = await asyncio.gather(*[
            asyncio.to_thread(replica_moments.moment, self.params, self.disorder, k, self.quadrature)
            for k in range(1, k_max + 1)
        ])
        for k, (log_value, error) in enumerate(results, start=1):
            self._emit(EventType.MOMENT_COMPUTED, k=k, log_moment=log_value, error_estimate=error)
        return MomentTable(
            k_max=k_max,
            log_moments=[v for v, _ in results],
            error_estimates=[e for _, e in results],
        )

    def moments(self, k_max: int) -> MomentTable:
        return self._run_sync(self.amoment_table(k_max))

    def moment_growth(self, k_max: int, table: Optional[MomentTable] = None) -> MomentGrowthReport:
        if table is None and self.params.lam > 0:
            table = self.moments(k_max)
        return replica_moments.verify_moment_growth(self.params, self.disorder, k_max, self.quadrature, table)

    # --- ZETA FUNCTION ---

    def phi(self, s: complex, a: Optional[float] = None, split: bool = True) -> PhiValue:
        """Phi(s) with the bound Z(0)^{-Re s}; real s > 0 also gets the split at t = a unless split=False."""
        s = complex(s)
        value = zeta.phi(s, self.params, self.disorder, self.quadrature)
        log_z0 = log_partition_function(self.params, 0.0, self.quadrature)
        bound = math.exp(-s.real * log_z0)
        modulus = abs(value)
        within = modulus <= bound + self.quadrature.tolerance_for(bound)

        phi1 = phi2 = None
        if split and s.imag == 0 and s.real > 0:
            split_at = self.series.a if a is None else a
            phi1, phi2 = zeta.phi_split(s.real, split_at, self.params, self.disorder, self.quadrature)
        return PhiValue(
            s_real=s.real,
            s_imag=s.imag,
            phi_real=value.real,
            phi_imag=value.imag,
            modulus=modulus,
            bound=bound,
            within_bound=within,
            phi1=phi1,
            phi2=phi2,
        )

    def annealed(self) -> float:
        """F_a = -ln E[Z]."""
        return zeta.annealed_value(self.params, self.disorder, self.quadrature)

    # --- REFERENCES ---

    def quenched_direct(self) -> float:
        return oracle.quenched_direct(self.params, self.disorder, self.quadrature)

    async def aquenched_mc(self, mc: Optional[McConfig] = None) -> tuple[float, float]:
        """Monte Carlo E[ln Z] and standard error; shards run in threads, merged in order."""
        mc = mc or self.mc
        log_z = oracle.mc_log_partition(self.params, self.disorder, self.quadrature)
        sizes = oracle.shard_sizes(mc)
        shards = await asyncio.gather(*[
            asyncio.to_thread(oracle.sample_shard, self.disorder, log_z, rng, n)
            for rng, n in zip(oracle.shard_generators(mc), sizes)
        ])
        for index, n in enumerate(sizes):
            self._emit(EventType.MC_SHARD_COMPLETED, shard=index, n=n)
        return oracle.summarize(np.concatenate(shards))

    def quenched_mc(self, mc: Optional[McConfig] = None) -> tuple[float, float]:
        return self._run_sync(self.aquenched_mc(mc))

    # --- CHECKS ---

    def validate(self) -> ValidationReport:
        report = run_checks(self)
        for check in report.checks:
            self._emit(EventType.CHECK_COMPLETED, name=check.name, passed=check.passed, margin=check.margin)
        return report

    async def avalidate(self) -> ValidationReport:
        return await asyncio.to_thread(self.validate)

    # --- UTILS ---

    def get_stats(self) -> EngineStats:
        return self.metrics.get_stats()

    @staticmethod
    def _run_sync(coro):
        """
        Safely run an async coroutine from sync code.
        Works whether or not an event loop is already running.
        """
        try:
            asyncio.get_running_loop()
        except RuntimeError:
            # No running loop: safe to use asyncio.run directly
            return asyncio.run(coro)
        # Inside a running loop: run in a new thread to avoid deadlock
        with concurrent.futures.ThreadPoolExecutor(max_workers=1) as pool:
            return pool.submit(asyncio.run, coro).result()
