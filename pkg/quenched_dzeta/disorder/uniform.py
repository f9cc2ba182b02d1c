from typing import Literal

import numpy as np
from pydantic import Field

from quenched_dzeta.disorder.base import ContinuousDistribution


class UniformInterval(ContinuousDistribution):
    """Uniform law on [-radius, radius]."""
    family: Literal["uniform"] = "uniform"
    radius: float = Field(gt=0)

    def density(self, h: np.ndarray) -> np.ndarray:
        return np.full_like(np.asarray(h, dtype=float), 0.5 / self.radius)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.uniform(-self.radius, self.radius, size=n)
