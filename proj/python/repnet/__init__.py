"""Reputation-driven online planning and simulation for multi-agent MDPs."""

from ._core import (
    Hyperparameters,
    ModelError,
    PlanResult,
    RunError,
    Scenario,
    ScenarioParseError,
    UpdateScope,
    image_update,
    parse_scenario,
    plan,
    reputation,
    run,
    serialize_scenario,
    validate,
)

__all__ = [
    "Hyperparameters",
    "ModelError",
    "PlanResult",
    "RunError",
    "Scenario",
    "ScenarioParseError",
    "UpdateScope",
    "image_update",
    "parse_scenario",
    "plan",
    "reputation",
    "run",
    "serialize_scenario",
    "validate",
]
