import os
import sys
from pathlib import Path
from typing import Any, Literal, Mapping, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from quenched_dzeta.disorder import DisorderSpec, make_distribution
from quenched_dzeta.exceptions import ConfigError
from quenched_dzeta.models import McConfig, ModelParams, QuadratureConfig, SeriesConfig

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


def from_env() -> QuadratureConfig:
    """
    Load QuadratureConfig from environment variables.
    Any tolerance can be overridden with the matching `DZETA_` variable.
    """
    config_kwargs = {}

    if "DZETA_ABS_TOL" in os.environ:
        config_kwargs["abs_tol"] = float(os.environ["DZETA_ABS_TOL"])
    if "DZETA_REL_TOL" in os.environ:
        config_kwargs["rel_tol"] = float(os.environ["DZETA_REL_TOL"])
    if "DZETA_MAX_SUBDIVISIONS" in os.environ:
        config_kwargs["max_subdivisions"] = int(os.environ["DZETA_MAX_SUBDIVISIONS"])
    if "DZETA_DECAY_CUTOFF" in os.environ:
        config_kwargs["decay_cutoff"] = float(os.environ["DZETA_DECAY_CUTOFF"])

    return QuadratureConfig(**config_kwargs)


# Global default tolerances loaded from env
default_config = from_env()


class OutputConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    format: Literal["csv", "json"] = "json"
    path: Optional[str] = None


class RunConfig(BaseModel):
    """A complete run: couplings, disorder, series, tolerances, Monte Carlo and output."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    model: ModelParams
    disorder: DisorderSpec
    series: SeriesConfig = Field(default_factory=SeriesConfig)
    quadrature: QuadratureConfig = Field(default_factory=lambda: default_config)
    mc: McConfig = Field(default_factory=McConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    @field_validator("disorder", mode="before")
    @classmethod
    def _build_disorder(cls, value):
        if isinstance(value, Mapping):
            return make_distribution(value)
        return value


def flatten(data: Mapping[str, Any], prefix: str = "") -> dict[str, Any]:
    """Nested tables to dotted keys: {"model": {"m0_sq": 1}} -> {"model.m0_sq": 1}."""
    flat: dict[str, Any] = {}
    for key, value in data.items():
        dotted = f"{prefix}{key}"
        if isinstance(value, Mapping):
            flat.update(flatten(value, prefix=f"{dotted}."))
        else:
            flat[dotted] = value
    return flat


def unflatten(flat: Mapping[str, Any]) -> dict[str, Any]:
    nested: dict[str, Any] = {}
    for dotted, value in flat.items():
        *parents, leaf = dotted.split(".")
        node = nested
        for part in parents:
            child = node.setdefault(part, {})
            if not isinstance(child, dict):
                raise ConfigError(f"config key '{dotted}' conflicts with scalar key '{part}'")
            node = child
        if isinstance(node.get(leaf), dict):
            raise ConfigError(f"config key '{dotted}' conflicts with table '{dotted}.*'")
        node[leaf] = value
    return nested


def parse_override(item: str) -> tuple[str, Any]:
    """Split `key=value`; the value is read as a TOML scalar or array, else kept as a string."""
    key, sep, raw = item.partition("=")
    key = key.strip()
    if not sep or not key:
        raise ConfigError(f"override '{item}' must have the form key=value")
    raw = raw.strip()
    try:
        value = tomllib.loads(f"value = {raw}")["value"]
    except tomllib.TOMLDecodeError:
        value = raw
    return key, value


def read_config_file(path: str | Path) -> dict[str, Any]:
    try:
        with open(path, "rb") as f:
            return tomllib.load(f)
    except FileNotFoundError as e:
        raise ConfigError(f"config file not found: {path}") from e
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"config file {path} is not valid TOML: {e}") from e


def build_run_config(flat: Mapping[str, Any]) -> RunConfig:
    try:
        return RunConfig.model_validate(unflatten(flat))
    except ValidationError as e:
        raise ConfigError(f"invalid run config:\n{e}") from e


def load_run_config(
    path: Optional[str | Path] = None,
    overrides: Sequence[str] = (),
    values: Optional[Mapping[str, Any]] = None,
) -> RunConfig:
    """
    Read a TOML run config, then apply `key=value` overrides, then already-typed `values`.

    An override that switches `disorder.family` replaces the file's whole disorder block.
    """
    flat = flatten(read_config_file(path)) if path is not None else {}
    updates: dict[str, Any] = {}
    for item in overrides:
        key, value = parse_override(item)
        updates[key] = value
    updates.update(values or {})

    family = updates.get("disorder.family")
    if family is not None and family != flat.get("disorder.family"):
        flat = {key: value for key, value in flat.items() if not key.startswith("disorder.")}
    flat.update(updates)
    return build_run_config(flat)


def resolved_config(run: RunConfig) -> dict[str, Any]:
    """The run config as dotted keys, in field order, for embedding in reports."""
    return flatten(run.model_dump(mode="json", by_alias=True))
