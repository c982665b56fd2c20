"""Instrumented unit counter for costed operations."""

from typing import Any, Callable, Optional, Tuple, TypeVar

R = TypeVar("R")


class CostMeter:
    """Counts abstract time units while an operation runs.

    Costed operations accept an optional ``meter`` keyword and tick it once for
    every clause their timing mirror charges. Helpers the timing functions treat
    as free never tick.
    """

    __slots__ = ("units",)

    def __init__(self) -> None:
        self.units = 0

    def tick(self, n: int = 1) -> None:
        self.units += n

    def reset(self) -> int:
        """Zero the counter and return the units counted so far."""
        units, self.units = self.units, 0
        return units

    def __repr__(self) -> str:
        return f"CostMeter(units={self.units})"


def tick(meter: Optional[CostMeter], n: int = 1) -> None:
    """Tick ``meter`` if one is attached."""
    if meter is not None:
        meter.units += n


def measure(operation: Callable[..., R], *args: Any, **kwargs: Any) -> Tuple[R, int]:
    """Run ``operation`` with a fresh meter and return its result and unit count."""
    meter = CostMeter()
    result = operation(*args, meter=meter, **kwargs)
    return result, meter.units
