import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quenched_dzeta.numerics.summation import NeumaierSum, compensated_sum


class TestCompensatedSum:
    def test_recovers_small_term_between_large_ones(self):
        assert compensated_sum([1e16, 1.0, -1e16]) == 1.0

    def test_empty(self):
        assert compensated_sum([]) == 0.0

    def test_accepts_generators(self):
        assert compensated_sum(0.1 for _ in range(10)) == pytest.approx(1.0, abs=2e-16)

    def test_many_tenths(self):
        assert compensated_sum([0.1] * 100_000) == pytest.approx(1e4, rel=1e-15)

    def test_alternating_harmonic(self):
        terms = [(-1.0) ** (k + 1) / k for k in range(1, 100_001)]
        assert compensated_sum(terms) == pytest.approx(math.fsum(terms), abs=1e-15)

    @given(st.lists(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False), max_size=200))
    def test_close_to_exact_sum(self, terms):
        scale = math.fsum(abs(t) for t in terms) + 1.0
        assert abs(compensated_sum(terms) - math.fsum(terms)) <= 1e-14 * scale

    @given(st.lists(st.floats(min_value=-1e3, max_value=1e3, allow_nan=False), min_size=1, max_size=50))
    def test_order_does_not_matter_beyond_rounding(self, terms):
        scale = math.fsum(abs(t) for t in terms) + 1.0
        assert abs(compensated_sum(terms) - compensated_sum(reversed(terms))) <= 1e-14 * scale


class TestNeumaierSum:
    def test_running_total(self):
        acc = NeumaierSum()
        for value in (1e16, 1.0, -1e16, 2.0):
            acc += value
        assert acc.value == 3.0
