"""Agent-based simulator of cooperation through time-pressured group formation."""

from coopsim.config import SimConfig
from coopsim.core import (
    Agent,
    BehaviorVector,
    OfferStatistics,
    PreferenceVector,
    Strategy,
    behavior_value,
    build_preference_vector,
)
from coopsim.engine import RunReport, TermReport, run_simulation
from coopsim.harness import SweepCell, SweepReport, SweepSpec, run_sweep

__all__ = [
    "Agent",
    "BehaviorVector",
    "OfferStatistics",
    "PreferenceVector",
    "RunReport",
    "SimConfig",
    "Strategy",
    "SweepCell",
    "SweepReport",
    "SweepSpec",
    "TermReport",
    "behavior_value",
    "build_preference_vector",
    "run_simulation",
    "run_sweep",
]
