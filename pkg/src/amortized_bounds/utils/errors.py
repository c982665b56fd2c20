"""Custom error classes for amortized-bounds."""

from typing import Optional, Dict, Any, List, Sequence


class AmortizedBoundsError(Exception):
    """Base exception class for amortized-bounds."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class ContractError(AmortizedBoundsError):
    """Exception raised when a runtime-checked precondition is violated."""

    pass


class NegativeCount(ContractError):
    """Exception raised when a count that must be a natural number is negative."""

    def __init__(self, count: int, operation: str = "multipop"):
        super().__init__(
            f"{operation} requires a nonnegative count, got {count}",
            {"count": count, "operation": operation},
        )
        self.count = count
        self.operation = operation


class LengthContract(ContractError):
    """Exception raised when a list argument has a length outside its contract."""

    def __init__(self, function: str, length: int, expected: str):
        super().__init__(
            f"{function} expects a list with {expected}, got length {length}",
            {"function": function, "length": length, "expected": expected},
        )
        self.function = function
        self.length = length


class DomainError(ContractError):
    """Exception raised when an integer argument is outside the function's domain."""

    pass


class RankMismatch(ContractError):
    """Exception raised when two binomial trees of different rank are merged."""

    def __init__(self, left_rank: int, right_rank: int):
        super().__init__(
            f"Cannot merge trees of rank {left_rank} and {right_rank}",
            {"left_rank": left_rank, "right_rank": right_rank},
        )


class InvalidForest(ContractError):
    """Exception raised when a forest violates its shape invariants."""

    def __init__(self, message: str, violations: Optional[List[str]] = None):
        super().__init__(message, {"violations": violations or []})
        self.violations = violations or []


class MalformedTrace(AmortizedBoundsError):
    """Exception raised when a trace breaks its chaining or vocabulary rules."""

    def __init__(self, message: str, step: Optional[int] = None):
        super().__init__(message, {"step": step})
        self.step = step


class MalformedScript(AmortizedBoundsError):
    """Exception raised when an operation script cannot be parsed or executed."""

    def __init__(self, message: str, line: Optional[int] = None, text: Optional[str] = None):
        super().__init__(message, {"line": line, "text": text})
        self.line = line
        self.text = text


class ConfigurationError(AmortizedBoundsError):
    """Exception raised when configuration is invalid."""

    pass


def format_script_errors(errors: Sequence[MalformedScript]) -> str:
    """Format a list of script errors into a readable string."""
    if not errors:
        return "No errors"

    formatted_errors = []
    for error in errors:
        if error.line is not None:
            location = f"Line {error.line}"
            if error.text:
                location += f" ({error.text.strip()!r})"
            formatted_errors.append(f"{location}: {error.message}")
        else:
            formatted_errors.append(error.message)

    return "\n".join(formatted_errors)
