"""Immutable stack with push and multipop.

Potential is the stack height. Under it push costs 2 amortized units and
multipop at most 2, whatever the count.
"""

from dataclasses import dataclass
from typing import Any, Iterator, List, Optional, Sequence, Tuple, Union

from ..core.cost import Cost, Potential
from ..core.meter import CostMeter, tick
from ..utils.errors import NegativeCount

PUSH_BOUND = 2
MULTIPOP_BOUND = 2


@dataclass(frozen=True, slots=True)
class Empty:
    def __repr__(self) -> str:
        return "Empty"


@dataclass(frozen=True, slots=True)
class Elem:
    head: Any
    tail: "Stack"

    def __repr__(self) -> str:
        return f"Stack({to_list(self)!r})"


Stack = Union[Empty, Elem]

EMPTY = Empty()


def _iter(s: Stack) -> Iterator[Any]:
    while isinstance(s, Elem):
        yield s.head
        s = s.tail


def height(s: Stack) -> int:
    return sum(1 for _ in _iter(s))


def to_list(s: Stack) -> List[Any]:
    """Elements top first."""
    return list(_iter(s))


def from_list(xs: Sequence[Any]) -> Stack:
    """Build a stack whose top is ``xs[0]``."""
    s: Stack = EMPTY
    for x in reversed(xs):
        s = Elem(x, s)
    return s


def push(x: Any, s: Stack, *, meter: Optional[CostMeter] = None) -> Stack:
    tick(meter)
    return Elem(x, s)


def _check_count(k: int) -> None:
    if k < 0:
        raise NegativeCount(k)


def multipop(k: int, s: Stack, *, meter: Optional[CostMeter] = None) -> Tuple[List[Any], Stack]:
    """Pop up to ``k`` elements; returns them top first with the remaining stack."""
    _check_count(k)
    popped: List[Any] = []
    while True:
        tick(meter)
        if isinstance(s, Empty) or k == 0:
            return popped, s
        popped.append(s.head)
        s = s.tail
        k -= 1


def phi_stack(s: Stack) -> Potential:
    return height(s)


def pushT(x: Any, s: Stack) -> Cost:
    return 1


def multipopT(k: int, s: Stack) -> Cost:
    _check_count(k)
    cost = 1
    while isinstance(s, Elem) and k > 0:
        cost += 1
        s = s.tail
        k -= 1
    return cost
