import math
from typing import Literal

import numpy as np
from pydantic import Field, PrivateAttr
from scipy.special import erf, ndtr, ndtri

from quenched_dzeta.disorder.base import ContinuousDistribution

# Standard deviations beyond which the density is below exp(-72) of its peak
_TAIL_SDS = 12.0


class TruncatedGaussian(ContinuousDistribution):
    """
    Centred normal law exp(-h^2 / (2 sigma)) restricted to [-radius, radius].

    `sigma` is the variance of the untruncated law. The normalisation is the
    closed form sqrt(2 pi sigma) erf(radius / sqrt(2 sigma)).
    """
    family: Literal["truncated_gaussian"] = "truncated_gaussian"
    sigma: float = Field(gt=0)
    radius: float = Field(gt=0)

    _norm: float = PrivateAttr(default=1.0)

    def model_post_init(self, __context) -> None:
        self._norm = math.sqrt(2.0 * math.pi * self.sigma) * float(erf(self.radius / math.sqrt(2.0 * self.sigma)))

    def _kernel(self, h: np.ndarray) -> np.ndarray:
        return np.exp(-np.asarray(h, dtype=float) ** 2 / (2.0 * self.sigma))

    @property
    def normalization(self) -> float:
        return self._norm

    def integration_limits(self) -> tuple[float, float]:
        # Narrow laws: integrate where the density lives so panels cannot step over the peak
        half_width = min(self.radius, _TAIL_SDS * math.sqrt(self.sigma))
        return -half_width, half_width

    def density(self, h: np.ndarray) -> np.ndarray:
        return self._kernel(h) / self._norm

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        # Inverse transform through the standard normal CDF
        sd = math.sqrt(self.sigma)
        lo = ndtr(-self.radius / sd)
        hi = ndtr(self.radius / sd)
        u = rng.random(n)
        h = sd * ndtri(lo + u * (hi - lo))
        return np.clip(h, -self.radius, self.radius)
