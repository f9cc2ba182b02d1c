import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from quenched_dzeta.exceptions import DomainError
from quenched_dzeta.numerics.special import (
    E1_SERIES_CROSSOVER,
    EULER_GAMMA,
    ein_series,
    exp_integral_e1,
    log_gamma,
)


class TestExponentialIntegral:
    @pytest.mark.parametrize("x", [1e-8, 1e-3, 0.1, 0.5, 1.0, 1.4999, 1.5, 1.5001, 2.0, 5.0, 20.0, 100.0, 500.0])
    def test_matches_scipy(self, x):
        assert exp_integral_e1(x) == pytest.approx(special.exp1(x), rel=1e-13)

    def test_reference_value(self):
        assert exp_integral_e1(1.0) == pytest.approx(0.2193839344, abs=1e-10)

    def test_continuous_across_crossover(self):
        below = exp_integral_e1(E1_SERIES_CROSSOVER)
        above = exp_integral_e1(math.nextafter(E1_SERIES_CROSSOVER, math.inf))
        assert above == pytest.approx(below, rel=1e-13)

    @given(st.floats(min_value=0.01, max_value=600.0))
    @settings(max_examples=200)
    def test_tail_bound(self, x):
        value = exp_integral_e1(x)
        assert 0.0 < value <= math.exp(-x) / x

    def test_infinity_gives_zero(self):
        assert exp_integral_e1(math.inf) == 0.0

    @pytest.mark.parametrize("x", [0.0, -1.0, math.nan])
    def test_non_positive_rejected(self, x):
        with pytest.raises(DomainError):
            exp_integral_e1(x)


class TestEinSeries:
    def test_zero(self):
        assert ein_series(0.0) == (0.0, 0)

    def test_reference_value(self):
        value, _ = ein_series(1.0)
        assert value == pytest.approx(0.7965996, abs=1e-7)

    def test_first_terms(self):
        value, k_used = ein_series(1.0, k_max=1)
        assert (value, k_used) == (1.0, 1)
        value, k_used = ein_series(1.0, k_max=2)
        assert (value, k_used) == (0.75, 2)

    def test_partial_sums_alternate_around_limit(self):
        limit, _ = ein_series(1.0, k_max=60, term_tol=1e-16)
        partials = [ein_series(1.0, k_max=k, term_tol=0.0)[0] for k in range(1, 9)]
        for k, partial in enumerate(partials, start=1):
            if k % 2 == 1:
                assert partial > limit
            else:
                assert partial < limit

    @pytest.mark.parametrize("x", [0.01, 0.1, 1.0, 5.0, 10.0])
    def test_identity_with_e1(self, x):
        value, _ = ein_series(x, k_max=100)
        assert value == pytest.approx(exp_integral_e1(x) + math.log(x) + EULER_GAMMA, abs=1e-10)

    def test_stops_at_term_tolerance(self):
        _, k_used = ein_series(0.5, k_max=60, term_tol=1e-6)
        assert k_used < 10

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            ein_series(-1.0)


class TestConstants:
    def test_euler_gamma(self):
        assert EULER_GAMMA == pytest.approx(np.euler_gamma, rel=1e-16)

    @pytest.mark.parametrize("x", [0.5, 1.0, 2.5, 10.0, 171.5])
    def test_log_gamma(self, x):
        assert log_gamma(x) == pytest.approx(math.lgamma(x), rel=1e-14)
