"""Maximal pairwise-non-coprime families of divisors.

Represent N = p1^a1 * ... * pn^an by its exponent signature alone, then:
compute the closed-form minimum size of a maximal family, classify and
enumerate all minimum-size families, brute-force the complete census of
maximal families, certify complement pairings, and exhaustively solve the
restricted-universe minimum problems.  See the README for the command-line
interface.
"""

from ._version import __version__
from .errors import (
    DivintError,
    PreconditionError,
    ResourceLimitError,
    TheoremViolationError,
)
from .families import DivisorFamily, FamilyReport
from .lattice import Signature, min_size_bound

__all__ = [
    "__version__",
    "DivintError",
    "PreconditionError",
    "ResourceLimitError",
    "TheoremViolationError",
    "DivisorFamily",
    "FamilyReport",
    "Signature",
    "min_size_bound",
]
