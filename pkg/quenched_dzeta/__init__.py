"""
quenched-dzeta: quenched free energy of the disordered 0-D phi^4 model
through the distributional zeta-function.

Usage:
    from quenched_dzeta import ModelParams, QuenchedFreeEnergy, UniformInterval

    engine = QuenchedFreeEnergy(ModelParams(m0_sq=1.0, lam=1.0), UniformInterval(radius=1.0))

    report = engine.free_energy(a=1.0)
    report.total, report.oracle_value, report.remainder_bound
"""

from quenched_dzeta.config import RunConfig, load_run_config
from quenched_dzeta.core import QuenchedFreeEnergy
from quenched_dzeta.disorder import (
    DisorderDistribution,
    FiniteAtoms,
    TruncatedGaussian,
    UniformInterval,
    make_distribution,
)
from quenched_dzeta.exceptions import (
    ConfigError,
    ConvergenceError,
    DomainError,
    DzetaError,
    SeriesOverflowError,
)
from quenched_dzeta.models import (
    FreeEnergyReport,
    McConfig,
    ModelParams,
    MomentTable,
    QuadratureConfig,
    SeriesConfig,
    ValidationReport,
)
from quenched_dzeta.observability.callbacks import CallbackManager, DzetaEvent, EventType

# Version
__version__ = "0.1.0"

__all__ = [
    "QuenchedFreeEnergy",
    "RunConfig",
    "load_run_config",
    "ModelParams",
    "QuadratureConfig",
    "SeriesConfig",
    "McConfig",
    "MomentTable",
    "FreeEnergyReport",
    "ValidationReport",
    "DisorderDistribution",
    "UniformInterval",
    "TruncatedGaussian",
    "FiniteAtoms",
    "make_distribution",
    "DzetaError",
    "DomainError",
    "ConvergenceError",
    "SeriesOverflowError",
    "ConfigError",
    "EventType",
    "DzetaEvent",
    "CallbackManager",
]
