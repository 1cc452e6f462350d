"""Verification and search toolkit for two-seat committee election rules."""

from consular.core import (
    Ballot,
    BudgetExceededError,
    Committee,
    Profile,
    RuleOracle,
    RuleTable,
    tabulate,
)
from consular.prefs import Comparison, SetOrderKind

__version__ = "0.1.0"

__all__ = [
    "Ballot",
    "BudgetExceededError",
    "Committee",
    "Comparison",
    "Profile",
    "RuleOracle",
    "RuleTable",
    "SetOrderKind",
    "tabulate",
    "__version__",
]
