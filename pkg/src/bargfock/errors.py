"""
Exception hierarchy for bargfock.

Library code raises these; the CLI maps them to exit codes at the dispatch
boundary via exit_code_for().
"""
from typing import Sequence


class BargfockError(Exception):
    """Base class for all bargfock failures"""


class InvalidArgumentError(BargfockError, ValueError):
    """An argument is outside the operation's contract"""


class PreconditionViolation(BargfockError):
    """Inputs are well-formed but the operation cannot be carried out accurately"""


class NumericalOverflowError(BargfockError, OverflowError):
    """A kernel or sampled value overflows double precision"""

    def __init__(self, message: str, point: complex | Sequence[complex] | None = None):
        super().__init__(message)
        self.point = point


class OutOfDomainError(BargfockError):
    """Requested nodes fall outside the source grid"""

    def __init__(self, message: str, clipped: Sequence[tuple[float, ...]] = ()):
        super().__init__(message)
        self.clipped = list(clipped)


class ConstructionFailure(BargfockError):
    """A constructive lemma could not be realized with the given parameters"""

    def __init__(self, message: str, sphere_index: int | None = None):
        super().__init__(message)
        self.sphere_index = sphere_index


class IllConditionedWarning(UserWarning):
    """Result computed, but its accuracy cannot be certified"""


EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID_CONFIG = 2
EXIT_NUMERICAL_FAILURE = 3


def exit_code_for(exc: BaseException) -> int:
    """Map an exception raised during dispatch to a CLI exit code"""
    if isinstance(exc, (InvalidArgumentError, PreconditionViolation)):
        return EXIT_INVALID_CONFIG
    if isinstance(exc, (NumericalOverflowError, OutOfDomainError, ConstructionFailure, MemoryError)):
        return EXIT_NUMERICAL_FAILURE
    # unreadable inputs and unwritable outputs
    if isinstance(exc, (ValueError, OSError)):
        return EXIT_INVALID_CONFIG
    return EXIT_NUMERICAL_FAILURE
