"""Exception hierarchy shared across the package.

Data-level problems (malformed input, unmet operation preconditions) derive from
InputError and map to CLI exit code 2.  InternalLogicError marks states the
algorithms promise are unreachable and maps to exit code 3.
"""

from __future__ import annotations


class SurfcobError(Exception):
    """Base class for all package errors."""


class InputError(SurfcobError):
    """Invalid input data or violated operation precondition.

    path, when set, locates the offending field in a JSON document
    ("surfaces/0/class_mod2" style).
    """

    def __init__(self, message: str, path: str = ""):
        super().__init__(message)
        self.path = path
        self.message = message


class SizeLimitError(InputError):
    """Inputs exceed the documented desk-scale bounds (512x512 matrices, n<=24 search)."""


class NotACycleError(InputError):
    """class_of_cycle received a chain with nonzero boundary; carries that boundary."""

    def __init__(self, message: str, boundary: tuple[int, ...]):
        super().__init__(message)
        self.boundary = boundary


class GroupMismatchError(InputError):
    """Two homology classes were compared across different group presentations."""


class LinkMismatchError(InputError):
    """Boundary links that were required to coincide do not."""


class MoveError(InputError):
    """A diagram move's precondition is violated."""


class ParityError(InputError):
    """A feasibility predicate was evaluated on a diagram violating the
    component parity condition t_C = P^C mod 2."""


class ImmersedInputError(InputError):
    """An embedded-only decision procedure received an immersed surface.

    Immersed data is handled at the diagram level (feasible_two / feasible_three
    and normalize), not by this decider.
    """


class MissingDataError(InputError):
    """A decision procedure lacks a required class, group presentation, or datum."""


class InternalLogicError(SurfcobError):
    """An invariant the algorithms guarantee was violated; indicates a bug."""
