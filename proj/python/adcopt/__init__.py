"""Diagonal global optimization with DIRECT baselines."""

from ._core import (
    CapacityError,
    DomainError,
    EvaluationError,
    GenerationError,
    Problem,
    RunResult,
    StopReason,
    __version__,
    classic,
    classic_names,
    criteria,
    direct,
    generate_class,
    group_diagonal,
    minimize,
    shift,
    target_hit,
)

__all__ = [
    "CapacityError",
    "DomainError",
    "EvaluationError",
    "GenerationError",
    "Problem",
    "RunResult",
    "StopReason",
    "classic",
    "classic_names",
    "criteria",
    "direct",
    "generate_class",
    "group_diagonal",
    "minimize",
    "shift",
    "target_hit",
]
