from typing import Annotated, Any, Mapping, Union

from pydantic import Field, TypeAdapter

from quenched_dzeta.disorder.atoms import FiniteAtoms
from quenched_dzeta.disorder.base import ContinuousDistribution, DisorderDistribution, Observable
from quenched_dzeta.disorder.truncated_gaussian import TruncatedGaussian
from quenched_dzeta.disorder.uniform import UniformInterval
from quenched_dzeta.exceptions import DomainError
from quenched_dzeta.models import QuadratureConfig

DisorderSpec = Annotated[
    Union[UniformInterval, TruncatedGaussian, FiniteAtoms],
    Field(discriminator="family"),
]

_ADAPTER = TypeAdapter(DisorderSpec)

# Families with unbounded support are recognised so they can be refused explicitly
NON_COMPACT_FAMILIES = {"gaussian", "normal"}


def make_distribution(spec: Mapping[str, Any] | DisorderDistribution) -> DisorderDistribution:
    """Build a distribution from a mapping with a `family` tag."""
    if isinstance(spec, DisorderDistribution):
        return spec
    family = str(spec.get("family", "")).lower()
    if family in NON_COMPACT_FAMILIES:
        raise DomainError(
            f"disorder family '{family}' has non-compact support; the moment bound and the "
            "series representation require compact support. Use 'truncated_gaussian' "
            "with an explicit radius instead."
        )
    data = dict(spec)
    if "atoms" in data:
        data["atoms"] = tuple(tuple(atom) for atom in data["atoms"])
    return _ADAPTER.validate_python(data)


def expect(dist: DisorderDistribution, g: Observable, cfg: QuadratureConfig) -> float:
    """E_mu[g(h)]; exact weighted sum for atoms, adaptive quadrature otherwise."""
    return dist.expect(g, cfg)


def support_radius(dist: DisorderDistribution) -> float:
    return dist.support_radius()


__all__ = [
    "DisorderDistribution",
    "ContinuousDistribution",
    "DisorderSpec",
    "FiniteAtoms",
    "TruncatedGaussian",
    "UniformInterval",
    "Observable",
    "NON_COMPACT_FAMILIES",
    "make_distribution",
    "expect",
    "support_radius",
]
