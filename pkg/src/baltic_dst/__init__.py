"""Decision support for ship biofouling management in the Baltic Sea.

Exact inference over a 34-node influence diagram (11 decisions, 14 chance
nodes, 9 utility nodes) plus a Bayesian salinity-tolerance model that
turns species occurrence data into per-route NIS introduction risk.
"""

from .factors import Factor, StateSpace, Variable, VariableKind
from .network import (
    LockSet,
    Network,
    ScenarioResult,
    UtilityNode,
    compare_scenarios,
    query,
    sweep_decision,
    validate_network,
)
from .model.build import build_network

__version__ = "0.1.0"

__all__ = [
    "Factor", "StateSpace", "Variable", "VariableKind",
    "LockSet", "Network", "ScenarioResult", "UtilityNode",
    "compare_scenarios", "query", "sweep_decision", "validate_network",
    "build_network", "__version__",
]
