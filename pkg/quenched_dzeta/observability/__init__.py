from quenched_dzeta.observability.callbacks import CallbackManager, DzetaEvent, EventType
from quenched_dzeta.observability.metrics import MetricsTracker

__all__ = ["CallbackManager", "DzetaEvent", "EventType", "MetricsTracker"]
