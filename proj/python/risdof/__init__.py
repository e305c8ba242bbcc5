"""Rank and rate of RIS-assisted MIMO links.

Sources are either a preset name (fig4, fig5, fig6a, fig6b) or scenario JSON text.
"""

from ._risdof import (
    ConfigError,
    DimensionError,
    InfeasibleError,
    IoError,
    NumericalError,
    dbm_to_watts,
    evaluate_trial,
    experiment_json,
    numerical_rank,
    plan,
    preset_names,
    run,
    singular_values,
    steering_vector,
    water_filling,
    watts_to_dbm,
)

__all__ = [
    "ConfigError",
    "DimensionError",
    "InfeasibleError",
    "IoError",
    "NumericalError",
    "dbm_to_watts",
    "evaluate_trial",
    "experiment_json",
    "numerical_rank",
    "plan",
    "preset_names",
    "run",
    "singular_values",
    "steering_vector",
    "water_filling",
    "watts_to_dbm",
]
