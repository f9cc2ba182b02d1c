"""
The invariant suite behind `validate`.

Each check returns a CheckResult whose margin is positive when the invariant
holds with room to spare. A check that raises a DzetaError is reported as
failed with the error text; it never aborts the remaining checks.
"""

import logging
import math
from typing import TYPE_CHECKING, Callable

import numpy as np

from quenched_dzeta import zeta
from quenched_dzeta.exceptions import DzetaError
from quenched_dzeta.model import log_partition_function, log_partition_grid
from quenched_dzeta.models import CheckResult, MomentTable, ValidationReport
from quenched_dzeta.replica_moments import log_convexity_violations, verify_moment_growth

if TYPE_CHECKING:
    from quenched_dzeta.core import QuenchedFreeEnergy

logger = logging.getLogger("quenched_dzeta")

PARTITION_SAMPLES = 1000
PARTITION_FIELD_RANGE = 10.0
MOMENT_ORDERS = 15
PHI_ZERO_TOLERANCE = 1e-12
PHI_BOUND_POINTS = (0.5, 1 + 1j, 2.0)
REMAINDER_SPLIT_POINTS = (0.5, 1.0, 2.0, 5.0)
IDENTITY_TOLERANCE = 1e-6
DEGENERATE_JENSEN_TOLERANCE = 1e-10


class _Context:
    """Values shared between checks so each is computed once."""

    def __init__(self, engine: "QuenchedFreeEnergy"):
        self.engine = engine
        self._table: MomentTable | None = None

    @property
    def table(self) -> MomentTable:
        if self._table is None:
            self._table = self.engine.moments(MOMENT_ORDERS)
        return self._table

    @property
    def log_tolerance(self) -> float:
        cfg = self.engine.quadrature
        return 2.0 * max(cfg.abs_tol, cfg.rel_tol)


def check_partition_bounds(ctx: _Context) -> CheckResult:
    """Z(h) >= Z(0) > 0 and Z(h) = Z(-h) on seeded h in [-10, 10]."""
    engine = ctx.engine
    rng = np.random.default_rng(engine.mc.seed)
    hs = rng.uniform(-PARTITION_FIELD_RANGE, PARTITION_FIELD_RANGE, PARTITION_SAMPLES)
    log_z0 = log_partition_function(engine.params, 0.0, engine.quadrature)
    log_z = log_partition_grid(engine.params, hs, engine.quadrature)
    log_z_mirror = log_partition_grid(engine.params, -hs, engine.quadrature)

    tol = ctx.log_tolerance
    floor_margin = float(np.min(log_z - log_z0)) + tol
    symmetry_margin = tol - float(np.max(np.abs(log_z - log_z_mirror)))
    margin = min(floor_margin, symmetry_margin)
    return CheckResult(
        name="partition_bounds",
        passed=margin >= 0 and math.isfinite(log_z0),
        margin=margin,
        detail=f"min ln Z(h) - ln Z(0) = {floor_margin - tol:.3e}, max |ln Z(h) - ln Z(-h)| = {tol - symmetry_margin:.3e}",
    )


def check_moment_growth(ctx: _Context) -> CheckResult:
    """E[Z^k] <= alpha beta^k for k = 1..15."""
    engine = ctx.engine
    if engine.params.lam == 0:
        return CheckResult(
            name="moment_growth",
            passed=True,
            skipped=True,
            detail="lambda = 0: the bound constant diverges, check not applicable",
        )
    report = verify_moment_growth(engine.params, engine.disorder, MOMENT_ORDERS, engine.quadrature, ctx.table)
    if report.error is not None:
        return CheckResult(name="moment_growth", passed=False, detail=report.error)
    margin = min(row.gap + row.error_estimate for row in report.rows)
    return CheckResult(
        name="moment_growth",
        passed=report.passed,
        margin=margin,
        detail=f"alpha = {report.alpha:g}, beta = {report.beta:.6g}",
    )


def check_log_convexity(ctx: _Context) -> CheckResult:
    """ln E[Z^k] is convex in k (Cauchy-Schwarz)."""
    table = ctx.table
    excess = [
        table.log_moment(k + 1) + table.log_moment(k - 1) - 2.0 * table.log_moment(k)
        for k in range(1, table.k_max)
    ]
    violations = log_convexity_violations(table)
    return CheckResult(
        name="log_convexity",
        passed=not violations,
        margin=min(excess) if excess else None,
        detail=f"violations at k = {violations}" if violations else f"k = 1..{table.k_max}",
    )


def check_phi_at_zero(ctx: _Context) -> CheckResult:
    engine = ctx.engine
    value = zeta.phi(0.0, engine.params, engine.disorder, engine.quadrature)
    deviation = abs(value - 1.0)
    return CheckResult(
        name="phi_at_zero",
        passed=deviation <= PHI_ZERO_TOLERANCE,
        margin=PHI_ZERO_TOLERANCE - deviation,
        detail=f"Phi(0) = {value.real!r}",
    )


def check_phi_bound(ctx: _Context) -> CheckResult:
    """|Phi(s)| <= Z(0)^{-Re s}."""
    values = [ctx.engine.phi(s, split=False) for s in PHI_BOUND_POINTS]
    margin = min(v.bound - v.modulus for v in values)
    return CheckResult(
        name="phi_bound",
        passed=all(v.within_bound for v in values),
        margin=margin,
        detail=", ".join(f"|Phi({complex(v.s_real, v.s_imag)})| = {v.modulus:.6g} <= {v.bound:.6g}" for v in values),
    )


def check_remainder_bound(ctx: _Context) -> CheckResult:
    """|R(a)| <= exp(-Z(0) a) / (Z(0) a)."""
    engine = ctx.engine
    margins = []
    for a in REMAINDER_SPLIT_POINTS:
        value = zeta.remainder(a, engine.params, engine.disorder, engine.quadrature)
        bound = zeta.remainder_bound(a, engine.params, engine.quadrature)
        margins.append(bound + engine.quadrature.tolerance_for(bound) - abs(value))
    margin = min(margins)
    return CheckResult(
        name="remainder_bound",
        passed=margin >= 0,
        margin=margin,
        detail=f"a in {list(REMAINDER_SPLIT_POINTS)}",
    )


def check_series_identity(ctx: _Context) -> CheckResult:
    """series + correction + remainder agrees with the direct quadrature of E[ln Z]."""
    report = ctx.engine.free_energy(with_oracle=True)
    deviation = abs(report.discrepancy)
    return CheckResult(
        name="series_identity",
        passed=report.converged and deviation <= IDENTITY_TOLERANCE,
        margin=IDENTITY_TOLERANCE - deviation,
        detail=f"total = {report.total!r}, direct = {report.oracle_value!r}, k_used = {report.k_used}",
    )


def check_jensen(ctx: _Context) -> CheckResult:
    """E[ln Z] < ln E[Z] strictly, with equality for a point mass."""
    engine = ctx.engine
    quenched = engine.quenched_direct()
    log_mean_z = -engine.annealed()
    gap = log_mean_z - quenched
    if engine.disorder.is_degenerate:
        margin = DEGENERATE_JENSEN_TOLERANCE - abs(gap)
        passed = margin >= 0
    else:
        margin = gap
        passed = gap > 0
    return CheckResult(
        name="jensen",
        passed=passed,
        margin=margin,
        detail=f"ln E[Z] - E[ln Z] = {gap:.6e} (quadrature tolerance {ctx.log_tolerance:.1e})",
    )


CHECKS: list[Callable[[_Context], CheckResult]] = [
    check_partition_bounds,
    check_moment_growth,
    check_log_convexity,
    check_phi_at_zero,
    check_phi_bound,
    check_remainder_bound,
    check_series_identity,
    check_jensen,
]


def run_checks(engine: "QuenchedFreeEnergy") -> ValidationReport:
    ctx = _Context(engine)
    results = []
    for check in CHECKS:
        name = check.__name__.removeprefix("check_")
        try:
            result = check(ctx)
        except DzetaError as e:
            result = CheckResult(name=name, passed=False, detail=f"{type(e).__name__}: {e}")
        level = logging.INFO if result.passed else logging.WARNING
        logger.log(level, f"check {result.name}: {'pass' if result.passed else 'FAIL'} (margin={result.margin})")
        results.append(result)
    return ValidationReport(checks=results)
