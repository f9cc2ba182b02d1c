import math

import pytest
from scipy import integrate

from quenched_dzeta.disorder import FiniteAtoms, TruncatedGaussian, UniformInterval
from quenched_dzeta.exceptions import DomainError
from quenched_dzeta.model import log_partition_function
from quenched_dzeta.models import ModelParams, MomentTable, QuadratureConfig
from quenched_dzeta.replica_moments import (
    log_convexity_violations,
    log_partition_max,
    moment,
    moment_bound_constants,
    moment_table,
    verify_moment_growth,
)


@pytest.fixture
def cfg():
    return QuadratureConfig()


@pytest.fixture
def gaussian():
    return ModelParams(m0_sq=1.0, lam=0.0)


@pytest.fixture
def quartic():
    return ModelParams(m0_sq=1.0, lam=1.0)


class TestMoments:
    @pytest.mark.parametrize("k", [1, 2, 5, 20])
    def test_degenerate_atom(self, cfg, quartic, k):
        dist = FiniteAtoms(atoms=((0.0, 1.0),))
        log_value, _ = moment(quartic, dist, k, cfg)
        assert log_value == pytest.approx(k * log_partition_function(quartic, 0.0, cfg), rel=1e-14)

    @pytest.mark.parametrize("k", range(1, 11))
    def test_gaussian_model_against_scipy(self, cfg, gaussian, k):
        dist = UniformInterval(radius=1.0)

        def integrand(h):
            return 0.5 * math.exp(k * (0.5 * math.log(2.0 * math.pi) + 0.5 * h * h))

        expected, _ = integrate.quad(integrand, -1.0, 1.0, epsabs=0.0, epsrel=1e-13)
        log_value, error = moment(gaussian, dist, k, cfg)
        assert log_value == pytest.approx(math.log(expected), abs=1e-9)
        assert 0.0 < error < 1e-7

    def test_shift_does_not_change_value(self, cfg, quartic):
        dist = TruncatedGaussian(sigma=1.0, radius=1.0)
        shifted, _ = moment(quartic, dist, 4, cfg, max_shift=True)
        plain, _ = moment(quartic, dist, 4, cfg, max_shift=False)
        assert shifted == pytest.approx(plain, abs=1e-9)

    def test_high_order_stays_finite(self, cfg, quartic):
        dist = UniformInterval(radius=2.0)
        log_value, _ = moment(quartic, dist, 400, cfg)
        assert math.isfinite(log_value)
        assert log_value <= 400 * log_partition_max(quartic, dist, cfg)

    def test_order_must_be_positive(self, cfg, quartic):
        with pytest.raises(DomainError):
            moment(quartic, UniformInterval(radius=1.0), 0, cfg)

    def test_table(self, cfg, quartic):
        dist = FiniteAtoms(atoms=((-1.0, 0.5), (1.0, 0.5)))
        table = moment_table(quartic, dist, 6, cfg)
        assert table.k_max == 6
        assert table.log_moment(0) == 0.0
        assert table.log_moment(3) == moment(quartic, dist, 3, cfg)[0]

    def test_table_length_validated(self):
        with pytest.raises(ValueError):
            MomentTable(k_max=3, log_moments=[0.0, 1.0], error_estimates=[0.0, 0.0])


class TestLogConvexity:
    @pytest.mark.parametrize("radius", [0.5, 1.0, 2.0])
    def test_holds(self, cfg, quartic, radius):
        table = moment_table(quartic, UniformInterval(radius=radius), 15, cfg)
        assert log_convexity_violations(table) == []

    def test_detects_violation(self):
        table = MomentTable(k_max=3, log_moments=[1.0, 0.0, 1.0], error_estimates=[0.0, 0.0, 0.0])
        assert log_convexity_violations(table) == [1]


class TestMomentGrowth:
    def test_bound_constants(self, quartic):
        alpha, beta = moment_bound_constants(quartic, UniformInterval(radius=1.0))
        c_lambda = 0.75 * 6.0 ** (1.0 / 3.0)
        assert alpha == 1.0
        assert beta == pytest.approx(math.exp(c_lambda) * math.sqrt(2.0 * math.pi), rel=1e-14)

    def test_literal_mass_variant(self):
        params = ModelParams(m0_sq=4.0, lam=1.0)
        _, beta = moment_bound_constants(params, UniformInterval(radius=1.0))
        _, beta_literal = moment_bound_constants(params, UniformInterval(radius=1.0), literal_mass=True)
        assert beta_literal / beta == pytest.approx(math.sqrt(2.0), rel=1e-14)

    def test_lambda_zero_rejected(self, gaussian):
        with pytest.raises(DomainError):
            moment_bound_constants(gaussian, UniformInterval(radius=1.0))

    def test_lambda_zero_reported(self, cfg, gaussian):
        report = verify_moment_growth(gaussian, UniformInterval(radius=1.0), 5, cfg)
        assert report.error is not None
        assert not report.passed
        assert report.rows == []

    def test_degenerate_atom_margins(self, cfg, quartic):
        report = verify_moment_growth(quartic, FiniteAtoms(atoms=((0.0, 1.0),)), 12, cfg)
        assert report.passed
        assert [row.k for row in report.rows] == list(range(1, 13))
        gaps = [row.gap for row in report.rows]
        assert all(later > earlier for earlier, later in zip(gaps, gaps[1:]))

    @pytest.mark.slow
    @pytest.mark.parametrize("lam", [0.5, 1.0, 6.0])
    @pytest.mark.parametrize("radius", [0.5, 1.0, 2.0])
    def test_bound_holds(self, cfg, lam, radius):
        params = ModelParams(m0_sq=1.0, lam=lam)
        report = verify_moment_growth(params, UniformInterval(radius=radius), 15, cfg)
        assert report.passed
        assert min(row.gap for row in report.rows) > 0

    def test_reuses_supplied_table(self, cfg, quartic):
        dist = UniformInterval(radius=1.0)
        table = moment_table(quartic, dist, 8, cfg)
        report = verify_moment_growth(quartic, dist, 8, cfg, table=table)
        assert [row.log_moment for row in report.rows] == table.log_moments
