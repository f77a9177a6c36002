"""Definability of relations on data graphs."""

from ._graphdef import (
    BudgetExceeded,
    Error,
    Graph,
    InputError,
    canon,
    canonical_rem,
    decide,
    evaluate,
    normalize,
    synthesize,
)

__all__ = [
    "BudgetExceeded",
    "Error",
    "Graph",
    "InputError",
    "canon",
    "canonical_rem",
    "decide",
    "evaluate",
    "normalize",
    "synthesize",
]
