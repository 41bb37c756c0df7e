"""Exception hierarchy for braidrank.

Every error raised on purpose by the library derives from BraidrankError,
so callers (in particular the CLI) can distinguish validation failures
from genuine bugs.
"""

from __future__ import annotations


class BraidrankError(Exception):
    """Base class for all library errors."""


class InvalidField(BraidrankError):
    """Field specification is malformed (non-prime modulus, out of range)."""


class FieldMismatch(BraidrankError):
    """Operands live over different fields."""


class AmbientMismatch(BraidrankError):
    """Subspace / vector operands disagree on the ambient dimension."""


class DimensionMismatch(BraidrankError):
    """Matrix shapes are incompatible for the requested operation."""


class ZeroParameter(BraidrankError):
    """A diagonal braiding parameter q_ij is zero."""


class NotInvertible(BraidrankError):
    """A candidate braiding matrix is singular."""


class YangBaxterViolation(BraidrankError):
    """The braid equation fails on V^(x)3.

    ``witness`` is the basis triple (i, j, k) of a column where the two
    sides of the equation differ.
    """

    def __init__(self, witness: tuple[int, int, int]):
        self.witness = witness
        super().__init__(
            "Yang-Baxter equation fails on basis vector "
            f"e{witness[0]} (x) e{witness[1]} (x) e{witness[2]}"
        )


class IndexOutOfRange(BraidrankError):
    """Braid generator index outside 1..d-1."""


class DegreeCap(BraidrankError):
    """Requested tensor degree exceeds the supported cap."""


class DimensionCap(BraidrankError):
    """Requested space dimension exceeds the supported cap."""


class EnvelopeExceeded(BraidrankError):
    """A check was requested at a size outside the small-instance envelope."""


class ConfigMismatch(BraidrankError):
    """Two graded quotients do not share braiding / cutoff and cannot be compared."""


class BialgebraInvariantError(BraidrankError):
    """A graded quotient failed the ideal-closure or coideal re-check.

    This is a hard error by design: it means the relation family does not
    define a truncated braided bialgebra, which for tower-produced input
    indicates an implementation bug.
    """
