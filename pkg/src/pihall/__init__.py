"""pihall: Hall subgroup analysis for finite permutation groups.

Classifies the existence / conjugacy / dominance properties of Hall
subgroups for a prime set, both by an exhaustive search oracle and by a
chief-series reduction, and reproduces the GL5(2) extension example.
"""

from .arith import PiSet, is_pi_number, pi_part
from .backtrack import BudgetExceededError
from .config import Budgets, DEFAULT_BUDGETS
from .groups import NotASubgroupError, PermGroup
from .perms import DegreeMismatchError, Perm, compose

__version__ = "0.1.0"

__all__ = [
    "Perm",
    "compose",
    "PermGroup",
    "PiSet",
    "pi_part",
    "is_pi_number",
    "Budgets",
    "DEFAULT_BUDGETS",
    "DegreeMismatchError",
    "NotASubgroupError",
    "BudgetExceededError",
    "__version__",
]
