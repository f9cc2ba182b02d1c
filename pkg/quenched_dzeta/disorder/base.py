from abc import ABC, abstractmethod
from typing import Callable

import numpy as np
from pydantic import BaseModel, ConfigDict

from quenched_dzeta.models import QuadratureConfig
from quenched_dzeta.numerics.quadrature import integrate_finite

Observable = Callable[[np.ndarray], np.ndarray]


class DisorderDistribution(BaseModel, ABC):
    """
    Abstract compact-support probability measure for the disorder field h.

    Subclasses are immutable; observables passed to `expect` are vectorised
    over a numpy array of h values.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    family: str

    @abstractmethod
    def support_radius(self) -> float:
        """Smallest r with the support inside [-r, r]."""

    @abstractmethod
    def expect(self, g: Observable, cfg: QuadratureConfig) -> float:
        """E_mu[g(h)]."""

    @abstractmethod
    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """Draw n values of h from rng."""

    @property
    def is_degenerate(self) -> bool:
        """True when mu is a single point mass."""
        return False

    def support_extremes(self) -> np.ndarray:
        """Points of the support where |h| is largest."""
        r = self.support_radius()
        return np.array([-r, r])


class ContinuousDistribution(DisorderDistribution):
    """A density on [-r, r]; expectations are adaptive quadratures."""

    radius: float

    @abstractmethod
    def density(self, h: np.ndarray) -> np.ndarray: ...

    def support_radius(self) -> float:
        return self.radius

    def integration_limits(self) -> tuple[float, float]:
        return -self.radius, self.radius

    def expect(self, g: Observable, cfg: QuadratureConfig) -> float:
        def integrand(h: np.ndarray) -> np.ndarray:
            return np.asarray(g(h), dtype=float) * self.density(h)

        lo, hi = self.integration_limits()
        result = integrate_finite(integrand, lo, hi, cfg)
        return result.require(f"expectation over {self.family} disorder")
