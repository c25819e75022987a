"""Packing and covering on paths and trees, with exact oracles for every solver."""

from .errors import (
    BudgetExceeded,
    InvalidInstance,
    NBAViolation,
    PartialColoringError,
    PathpackError,
    PreconditionError,
    UncoverableError,
)
from .model import (
    Coloring,
    Job,
    MultisetSelection,
    PathNetwork,
    Request,
    Resource,
    TreeNetwork,
    UfpInstance,
    check_nba,
    classify_demand,
    congestion,
    verify_coloring,
    verify_cover,
)

__version__ = "0.1.0"
