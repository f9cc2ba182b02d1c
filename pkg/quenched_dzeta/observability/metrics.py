from quenched_dzeta.models import EngineStats, FreeEnergyReport


class MetricsTracker:
    """
    Counts moments, series terms, checks and Monte Carlo samples for one engine.
    """

    def __init__(self):
        self._stats = EngineStats()

    def record_moment(self) -> None:
        self._stats.moments_computed += 1

    def record_series_term(self) -> None:
        self._stats.series_terms += 1

    def record_free_energy(self, report: FreeEnergyReport) -> None:
        self._stats.free_energy_runs += 1
        if not report.converged:
            self._stats.truncated_series += 1
        if report.cancellation_warning:
            self._stats.cancellation_warnings += 1

    def record_check(self, passed: bool) -> None:
        self._stats.checks_run += 1
        if not passed:
            self._stats.checks_failed += 1

    def record_mc_samples(self, n: int) -> None:
        self._stats.mc_samples += n

    def get_stats(self) -> EngineStats:
        return self._stats.model_copy()

    def get_summary(self) -> dict:
        stats = self._stats
        return {
            "moments_computed": stats.moments_computed,
            "series_terms": stats.series_terms,
            "free_energy_runs": stats.free_energy_runs,
            "truncated_series": stats.truncated_series,
            "cancellation_warnings": stats.cancellation_warnings,
            "checks_failed": f"{stats.checks_failed}/{stats.checks_run}",
            "mc_samples": stats.mc_samples,
        }
