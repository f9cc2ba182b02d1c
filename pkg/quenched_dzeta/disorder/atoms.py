import math
from typing import Literal

import numpy as np
from pydantic import Field, field_validator

from quenched_dzeta.disorder.base import DisorderDistribution, Observable
from quenched_dzeta.exceptions import DomainError
from quenched_dzeta.models import QuadratureConfig
from quenched_dzeta.numerics.summation import compensated_sum

_MASS_TOLERANCE = 1e-15


class FiniteAtoms(DisorderDistribution):
    """Finitely many point masses (h_i, p_i)."""
    family: Literal["atoms"] = "atoms"
    atoms: tuple[tuple[float, float], ...] = Field(min_length=1)

    @field_validator("atoms")
    @classmethod
    def _check_mass(cls, atoms):
        for h, p in atoms:
            if not math.isfinite(h):
                raise ValueError(f"atom location must be finite, got {h!r}")
            if not p >= 0:
                raise ValueError(f"atom weight must be non-negative, got {p!r}")
        total = math.fsum(p for _, p in atoms)
        if abs(total - 1.0) > _MASS_TOLERANCE:
            raise ValueError(f"atom weights must sum to 1, got {total!r}")
        return atoms

    @property
    def locations(self) -> np.ndarray:
        return np.array([h for h, _ in self.atoms], dtype=float)

    @property
    def weights(self) -> np.ndarray:
        return np.array([p for _, p in self.atoms], dtype=float)

    @property
    def is_degenerate(self) -> bool:
        return len({h for h, p in self.atoms if p > 0}) == 1

    def support_radius(self) -> float:
        return float(max(abs(h) for h, p in self.atoms))

    def support_extremes(self) -> np.ndarray:
        return self.locations

    def expect(self, g: Observable, cfg: QuadratureConfig) -> float:
        values = np.asarray(g(self.locations), dtype=float)
        if values.shape != self.locations.shape:
            values = np.broadcast_to(values, self.locations.shape)
        if not np.all(np.isfinite(values)):
            raise DomainError("observable is not finite on the atoms")
        return compensated_sum(p * v for p, v in zip(self.weights, values) if p > 0)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        index = rng.choice(len(self.atoms), size=n, p=self.weights)
        return self.locations[index]
