"""Standardized Exceptions."""

__all__ = [
    "Position",
    "EngineError",
    "SingularSystemError",
    "PlasmaError",
    "ParseError",
    "FormatVersionError",
    "ChecksumError",
    "WeightMismatchError",
    "ResourceLimitError",
    "DegenerateEigenvalueError",
    "PoleError",
    "ConvergenceError",
    "VerificationError",
    "context_error_attributer",
]

from typing import Protocol, Callable, Concatenate, ClassVar
from dataclasses import dataclass
from functools import wraps


@dataclass
class Position:
    file: str
    line: int
    col: int


class Labelled(Protocol):
    @property
    def label(self) -> str: ...


class EngineError(RuntimeError):
    """Error in the engine itself."""


class SingularSystemError(EngineError):
    """An interpolation system that should be regular is singular."""


class PlasmaError(RuntimeError):
    """Error in the inputs or data being processed."""

    category: ClassVar[str] = "Plasma error"
    exit_code: ClassVar[int] = 1

    def __init__(
        self,
        message: str,
        pos: Position | None = None,
        context: str | None = None,
    ):
        super().__init__(f"{self.category}: {message}")

        self.message = message
        self.pos = pos
        self.context = context

    def __str__(self):
        ret = f"{self.category}: {self.message}"
        if self.context is not None:
            ret = f"[{self.context}] {ret}"
        if self.pos is not None:
            ret = f"{self.pos.file}:{self.pos.line}:{self.pos.col}: {ret}"
        return ret


def context_error_attributer[L: Labelled, **P, R](
    fn: Callable[Concatenate[L, P], R],
) -> Callable[Concatenate[L, P], R]:
    @wraps(fn)
    def wrapper(obj: L, *args: P.args, **kwargs: P.kwargs) -> R:
        try:
            return fn(obj, *args, **kwargs)
        except PlasmaError as e:
            if e.context is None:
                e.context = obj.label
            raise e
        except EngineError:
            raise
        except Exception as e:
            raise EngineError(f"{fn.__name__}: {obj.label}") from e

    return wrapper


class ParseError(PlasmaError):
    """Parse error."""

    category = "Parse error"
    exit_code = 74


class FormatVersionError(PlasmaError):
    """Cache file written by an unknown format version."""

    category = "Format version error"
    exit_code = 74


class ChecksumError(PlasmaError):
    """Cache file content does not match its header."""

    category = "Checksum error"
    exit_code = 74


class WeightMismatchError(PlasmaError):
    """Partitions of different weight were compared."""

    category = "Weight mismatch"


class ResourceLimitError(PlasmaError):
    """A configured size limit was exceeded."""

    category = "Resource limit"
    exit_code = 3


class DegenerateEigenvalueError(PlasmaError):
    """A recursion denominator vanished."""

    category = "Degenerate eigenvalue"


class PoleError(PlasmaError):
    """Ornstein-Zernike inversion hit a pole."""

    category = "Pole"


class ConvergenceError(PlasmaError):
    """A series did not reach the requested tolerance."""

    category = "Convergence error"


class VerificationError(PlasmaError):
    """An exact invariant does not hold."""

    category = "Verification failed"
    exit_code = 2
