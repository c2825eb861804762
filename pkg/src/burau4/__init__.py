"""Train-track arc search in the 4-punctured disk.

Library surface: exact Laurent polynomials, admissibility of weight tuples,
level enumeration, the fast tracer and the slow reference oracle, and the
analysis workflows (certification sweeps, per-level norm statistics, family
detection).  The ``burau4`` command line wraps the workflows.
"""

from .conditions import (CaseSet, NoZeroWeightError, check_divisibility,
                         check_initial, check_nonnegativity, check_terminal,
                         classify_cases, crossing_count, is_admissible)
from .laurent import LaurentPolynomial
from .levels import enumerate_level
from .tracer import (ModeMisuseError, ScreenResult, StepBudgetExceededError,
                     TraceOutcome, TraceStatus, screen_zero, trace)
from .weights import (NegativeDerivedWeightError, OddHalfWeightError,
                      WeightTuple, derive_weights)

__all__ = [
    "CaseSet", "LaurentPolynomial", "ModeMisuseError", "NoZeroWeightError",
    "NegativeDerivedWeightError", "OddHalfWeightError", "ScreenResult",
    "StepBudgetExceededError", "TraceOutcome", "TraceStatus", "WeightTuple",
    "check_divisibility", "check_initial", "check_nonnegativity",
    "check_terminal", "classify_cases", "crossing_count", "derive_weights",
    "enumerate_level", "is_admissible", "screen_zero", "trace",
]

__version__ = "0.1.0"
