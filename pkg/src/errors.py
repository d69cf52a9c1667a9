"""Exception hierarchy shared by every phorma module.

Library code raises these and never exits; ``src.cli`` maps them to exit
status 1 and a one-line message.
"""

from __future__ import annotations

from typing import Optional


class PhormaError(Exception):
    """Base class for all domain errors."""

    kind = "phorma"


class BoolSyntaxError(PhormaError, ValueError):
    kind = "syntax"

    def __init__(self, message: str, position: int, text: str = "") -> None:
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))


class IndexOutOfRangeError(PhormaError, IndexError):
    kind = "index"


class EmptySequenceError(PhormaError, ValueError):
    kind = "empty-sequence"


class LengthMismatchError(PhormaError, ValueError):
    kind = "length-mismatch"


class DomainError(PhormaError, ValueError):
    kind = "domain"


class RankOutOfRangeError(PhormaError, IndexError):
    kind = "rank-out-of-range"

    def __init__(self, rank: int, total: int) -> None:
        self.rank = rank
        self.total = total
        super().__init__(f"rank {rank} outside [0, {total})")


class SinkError(PhormaError, ValueError):
    kind = "sink"


class VertexNotFoundError(PhormaError, KeyError):
    kind = "vertex-not-found"

    def __str__(self) -> str:
        # KeyError quotes its argument; keep the plain message
        return str(self.args[0]) if self.args else ""


class DominationError(PhormaError, ValueError):
    kind = "domination"


class NotAMemberError(PhormaError, ValueError):
    kind = "not-a-member"

    def __init__(self, alpha, reason: str) -> None:
        self.alpha = tuple(alpha)
        self.reason = reason
        super().__init__(f"{','.join(map(str, self.alpha))} is not a member (failed {reason})")


class EmptyFamilyError(PhormaError, ValueError):
    kind = "empty-family"


class BudgetExceededError(PhormaError, RuntimeError):
    kind = "budget"

    def __init__(self, candidates: int, budget: int) -> None:
        self.candidates = candidates
        self.budget = budget
        super().__init__(f"brute force needs {candidates} candidates, budget is {budget}")


class SpecSyntaxError(PhormaError, ValueError):
    kind = "spec"

    def __init__(self, message: str, line: int, column: Optional[int] = None) -> None:
        self.line = line
        self.column = column
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")


class ImageError(PhormaError, ValueError):
    kind = "image"


class VersionMismatchError(ImageError):
    kind = "version-mismatch"


class ChecksumError(ImageError):
    kind = "checksum"


class TruncatedImageError(ImageError):
    kind = "truncated"
