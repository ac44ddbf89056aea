"""Deterministic mmWave UAV beam-tracking simulation library."""

__version__ = "0.1.0"

from .arrays import (ArrayConfig, Hpbw, beam_gain, hpbw, ula_beam_vector,
                     ula_steering, upa_beam_vector, upa_steering)
from .channel import LinkBudget, PowerModel
from .simulator import RunResult, ScenarioConfig, run_scenario

__all__ = [
    "__version__",
    "ArrayConfig", "Hpbw", "beam_gain", "hpbw",
    "ula_steering", "ula_beam_vector", "upa_steering", "upa_beam_vector",
    "LinkBudget", "PowerModel",
    "ScenarioConfig", "RunResult", "run_scenario",
]
