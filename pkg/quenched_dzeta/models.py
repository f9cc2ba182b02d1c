import math
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from quenched_dzeta.exceptions import ConvergenceError


class QuadratureConfig(BaseModel):
    """Tolerances and truncation policy shared by every integral."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    abs_tol: float = Field(default=1e-10, gt=0)
    rel_tol: float = Field(default=1e-10, gt=0)
    max_subdivisions: int = Field(default=2000, ge=1)
    # Ratio to the peak below which an unbounded integrand is treated as zero
    decay_cutoff: float = Field(default=1e-18, gt=0, lt=1)

    def tolerance_for(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


class QuadratureResult(BaseModel):
    value: float
    error_estimate: float = Field(ge=0)
    subdivisions_used: int
    converged: bool = True

    def require(self, what: str = "integral") -> float:
        """Return the value, raising ConvergenceError if the result is flagged."""
        if not self.converged:
            raise ConvergenceError(
                f"{what} did not converge: value={self.value!r}, "
                f"error_estimate={self.error_estimate!r} after "
                f"{self.subdivisions_used} subdivisions"
            )
        return self.value


class ModelParams(BaseModel):
    """Couplings of S(phi) = m0_sq/2 phi^2 + lambda/4! phi^4."""
    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    m0_sq: float = Field(gt=0)
    lam: float = Field(default=0.0, ge=0, alias="lambda")


class SeriesConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    a: float = Field(default=1.0, gt=0)
    k_max: int = Field(default=60, ge=1)
    term_tol: float = Field(default=1e-12, gt=0)


class McConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    n_samples: int = Field(default=100_000, ge=1)
    seed: int = Field(default=0, ge=0)
    # Samples per substream; fixes the stream layout independently of worker count
    shard_size: int = Field(default=10_000, ge=1)


class MomentTable(BaseModel):
    """ln E[Z^k] for k = 1..k_max; entry k-1 holds moment k."""
    k_max: int = Field(ge=1)
    log_moments: list[float]
    error_estimates: list[float]

    @model_validator(mode="after")
    def _check_shape(self):
        if len(self.log_moments) != self.k_max or len(self.error_estimates) != self.k_max:
            raise ValueError("moment table length must equal k_max")
        if not all(math.isfinite(v) for v in self.log_moments):
            raise ValueError("moment table entries must be finite")
        return self

    def log_moment(self, k: int) -> float:
        """ln E[Z^k]; k = 0 gives 0 since mu is a probability measure."""
        if k == 0:
            return 0.0
        return self.log_moments[k - 1]

    def error(self, k: int) -> float:
        if k == 0:
            return 0.0
        return self.error_estimates[k - 1]


class MomentGrowthRow(BaseModel):
    k: int
    log_moment: float
    error_estimate: float
    log_bound: float
    gap: float
    passed: bool
    # Same bound with the Gaussian factor read as exp(-m0/2 phi^2)
    log_bound_literal: float
    gap_literal: float


class MomentGrowthReport(BaseModel):
    alpha: Optional[float] = None
    beta: Optional[float] = None
    beta_literal: Optional[float] = None
    c_lambda: Optional[float] = None
    rows: list[MomentGrowthRow] = Field(default_factory=list)
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(row.passed for row in self.rows)


class FreeEnergyReport(BaseModel):
    """Series representation of E[ln Z] at split point a, with diagnostics.

    Sign convention: `total` and `oracle_value` are E[ln Z] (F(h) = +ln Z);
    `annealed_value` is -ln E[Z] and `log_mean_z` is ln E[Z].
    """
    a: float
    series_partial: float
    k_used: int
    correction: float
    remainder_value: float
    remainder_bound: float
    total: float
    tail_bound: Optional[float] = None
    monotone_tail: bool = False
    converged: bool = True
    cancellation_warning: bool = False
    oracle_value: Optional[float] = None
    discrepancy: Optional[float] = None
    annealed_value: Optional[float] = None
    log_mean_z: Optional[float] = None
    warnings: list[str] = Field(default_factory=list)


class SweepReport(BaseModel):
    reports: list[FreeEnergyReport]
    spread: float

    @property
    def converged(self) -> bool:
        return all(r.converged for r in self.reports)


class PhiValue(BaseModel):
    s_real: float
    s_imag: float
    phi_real: float
    phi_imag: float
    modulus: float
    bound: float
    within_bound: bool
    phi1: Optional[float] = None
    phi2: Optional[float] = None


class CheckResult(BaseModel):
    name: str
    passed: bool
    margin: Optional[float] = None
    detail: str = ""
    skipped: bool = False


class ValidationReport(BaseModel):
    checks: list[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


class EngineStats(BaseModel):
    """Deterministic counters accumulated by a QuenchedFreeEnergy engine."""
    moments_computed: int = 0
    series_terms: int = 0
    free_energy_runs: int = 0
    truncated_series: int = 0
    cancellation_warnings: int = 0
    checks_run: int = 0
    checks_failed: int = 0
    mc_samples: int = 0
