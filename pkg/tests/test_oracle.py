import math

import numpy as np
import pytest
from scipy import stats

from quenched_dzeta.disorder import FiniteAtoms, TruncatedGaussian, UniformInterval
from quenched_dzeta.model import log_partition_function, log_partition_grid
from quenched_dzeta.models import McConfig, ModelParams, QuadratureConfig
from quenched_dzeta.oracle import (
    log_partition_surrogate,
    quenched_direct,
    quenched_mc,
    shard_generators,
    shard_sizes,
    summarize,
)

LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


@pytest.fixture
def cfg():
    return QuadratureConfig()


@pytest.fixture
def gaussian():
    return ModelParams(m0_sq=1.0, lam=0.0)


@pytest.fixture
def quartic():
    return ModelParams(m0_sq=1.0, lam=1.0)


class TestQuenchedDirect:
    @pytest.mark.parametrize("radius", [0.5, 1.0, 2.0])
    def test_uniform_closed_form(self, cfg, gaussian, radius):
        expected = LOG_SQRT_2PI + radius**2 / 6.0
        assert quenched_direct(gaussian, UniformInterval(radius=radius), cfg) == pytest.approx(expected, rel=1e-10)

    def test_reference_value(self, cfg, gaussian):
        assert quenched_direct(gaussian, UniformInterval(radius=1.0), cfg) == pytest.approx(1.0856052, abs=1e-7)

    def test_truncated_gaussian_closed_form(self, cfg, gaussian):
        dist = TruncatedGaussian(sigma=0.5, radius=1.5)
        sd = math.sqrt(0.5)
        variance = stats.truncnorm(-1.5 / sd, 1.5 / sd, scale=sd).var()
        assert quenched_direct(gaussian, dist, cfg) == pytest.approx(LOG_SQRT_2PI + variance / 2.0, rel=1e-10)

    def test_heavier_mass(self, cfg):
        params = ModelParams(m0_sq=4.0, lam=0.0)
        dist = FiniteAtoms(atoms=((-1.0, 0.5), (1.0, 0.5)))
        expected = 0.5 * math.log(math.pi / 2.0) + 0.125
        assert quenched_direct(params, dist, cfg) == pytest.approx(expected, rel=1e-10)

    def test_point_mass(self, cfg, quartic):
        dist = FiniteAtoms(atoms=((0.0, 1.0),))
        assert quenched_direct(quartic, dist, cfg) == log_partition_function(quartic, 0.0, cfg)

    def test_invariant_under_reflection(self, cfg, quartic):
        dist = FiniteAtoms(atoms=((-0.4, 0.3), (1.2, 0.7)))
        mirrored = FiniteAtoms(atoms=((0.4, 0.3), (-1.2, 0.7)))
        assert quenched_direct(quartic, dist, cfg) == pytest.approx(quenched_direct(quartic, mirrored, cfg), rel=1e-10)


class TestShards:
    def test_sizes(self):
        assert shard_sizes(McConfig(n_samples=25_000, shard_size=10_000)) == [10_000, 10_000, 5_000]
        assert shard_sizes(McConfig(n_samples=20_000, shard_size=10_000)) == [10_000, 10_000]
        assert shard_sizes(McConfig(n_samples=3, shard_size=10)) == [3]

    def test_streams_depend_only_on_seed(self):
        first = [rng.random(4) for rng in shard_generators(McConfig(n_samples=30, shard_size=10, seed=5))]
        second = [rng.random(4) for rng in shard_generators(McConfig(n_samples=30, shard_size=10, seed=5))]
        other = [rng.random(4) for rng in shard_generators(McConfig(n_samples=30, shard_size=10, seed=6))]
        assert all(np.array_equal(a, b) for a, b in zip(first, second))
        assert not np.array_equal(first[0], other[0])
        assert not np.array_equal(first[0], first[1])


class TestSummarize:
    def test_mean_and_standard_error(self):
        estimate, std_error = summarize(np.array([1.0, 2.0, 3.0]))
        assert estimate == 2.0
        assert std_error == pytest.approx(1.0 / math.sqrt(3.0), rel=1e-15)

    def test_single_sample(self):
        assert summarize(np.array([4.5])) == (4.5, 0.0)

    def test_constant_samples_are_exact(self):
        value = 0.9189385332046727
        assert summarize(np.full(1000, value)) == (value, 0.0)


class TestMonteCarlo:
    def test_surrogate_matches_exact(self, cfg, quartic):
        surrogate = log_partition_surrogate(quartic, 2.0, cfg)
        hs = np.random.default_rng(1).uniform(-2.0, 2.0, 50)
        assert np.max(np.abs(surrogate(hs) - log_partition_grid(quartic, hs, cfg))) < 1e-9

    def test_point_mass_is_exact(self, cfg, quartic):
        dist = FiniteAtoms(atoms=((0.0, 1.0),))
        estimate, std_error = quenched_mc(quartic, dist, McConfig(n_samples=5_000, seed=11), cfg)
        assert estimate == log_partition_function(quartic, 0.0, cfg)
        assert std_error == 0.0

    def test_same_seed_is_bit_identical(self, cfg, quartic):
        dist = UniformInterval(radius=1.0)
        mc = McConfig(n_samples=20_000, seed=3, shard_size=4_000)
        assert quenched_mc(quartic, dist, mc, cfg) == quenched_mc(quartic, dist, mc, cfg)

    def test_atoms_within_standard_errors(self, cfg, quartic):
        dist = FiniteAtoms(atoms=((-1.0, 0.25), (0.5, 0.5), (1.0, 0.25)))
        estimate, std_error = quenched_mc(quartic, dist, McConfig(n_samples=20_000, seed=0), cfg)
        assert std_error > 0
        assert abs(estimate - quenched_direct(quartic, dist, cfg)) <= 4.0 * std_error

    @pytest.mark.slow
    @pytest.mark.parametrize("params", [ModelParams(m0_sq=1.0, lam=0.0), ModelParams(m0_sq=1.0, lam=1.0)])
    @pytest.mark.parametrize("dist", [UniformInterval(radius=1.0), TruncatedGaussian(sigma=1.0, radius=1.0)])
    def test_agrees_with_direct(self, cfg, params, dist):
        estimate, std_error = quenched_mc(params, dist, McConfig(n_samples=100_000, seed=0), cfg)
        assert abs(estimate - quenched_direct(params, dist, cfg)) <= 4.0 * std_error
