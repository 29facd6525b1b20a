"""Python front end for the mean-field growth solver."""

import json

from ._core import (
    ConfigError,
    ConsumptionLaw,
    DivergenceError,
    DomainError,
    Economy,
    NonConvergence,
    PriceCurve,
    consumption_table,
    optimal_consumption,
    optimal_investment,
    solve_costates,
    u1,
    u1_prime,
    validate,
)
from ._core import run as _run


def _as_text(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def run(**overrides):
    """Run the experiment with config overrides; returns (exit_code, report dict)."""
    code, text = _run({k: _as_text(v) for k, v in overrides.items()})
    return code, json.loads(text)


__all__ = [
    "ConfigError",
    "ConsumptionLaw",
    "DivergenceError",
    "DomainError",
    "Economy",
    "NonConvergence",
    "PriceCurve",
    "consumption_table",
    "optimal_consumption",
    "optimal_investment",
    "run",
    "solve_costates",
    "u1",
    "u1_prime",
    "validate",
]
