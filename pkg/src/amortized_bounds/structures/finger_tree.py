"""Finger tree with one-to-three element digits and a spine of pairs and triples.

Each level of a ``More`` node holds a front and a back digit of one to three
items; the spine below it holds ``Pair``/``Triple`` tuples of the items one
level up. Items at spine depth ``d`` are therefore ``d``-fold nested tuples.
The nesting is not expressible in Python's type system, so ``validate_seq``
checks it at runtime.

Potential is the sum of digit dangers over all levels (``One`` and ``Three``
are dangerous, ``Two`` is safe). Under it cons and snoc cost at most 3
amortized units, and glue at most ``log2(max(n1 + n2, 2)) + 14``.

Every costed operation takes an optional ``meter`` and ticks it exactly where
its timing mirror (``consT``, ``snocT``, ``glueT``, ``foldrT``, ``foldlT``)
charges a unit.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, List, Optional, Sequence, Union

from ..core.cost import Cost, Potential
from ..core.meter import CostMeter, tick
from ..utils.errors import DomainError, LengthContract

CONS_BOUND = 3
SNOC_BOUND = 3
GLUE_CONSTANT = 14


class _PositionalRepr:
    __slots__ = ()

    def __repr__(self) -> str:
        names = getattr(self, "__match_args__", ())
        args = ", ".join(repr(getattr(self, name)) for name in names)
        return f"{type(self).__name__}({args})" if args else type(self).__name__


# Digits


@dataclass(frozen=True, slots=True, repr=False)
class One(_PositionalRepr):
    a: Any


@dataclass(frozen=True, slots=True, repr=False)
class Two(_PositionalRepr):
    a: Any
    b: Any


@dataclass(frozen=True, slots=True, repr=False)
class Three(_PositionalRepr):
    a: Any
    b: Any
    c: Any


Digit = Union[One, Two, Three]


# Spine tuples


@dataclass(frozen=True, slots=True, repr=False)
class Pair(_PositionalRepr):
    a: Any
    b: Any


@dataclass(frozen=True, slots=True, repr=False)
class Triple(_PositionalRepr):
    a: Any
    b: Any
    c: Any


Node = Union[Pair, Triple]


# Sequences


@dataclass(frozen=True, slots=True, repr=False)
class Nil(_PositionalRepr):
    pass


@dataclass(frozen=True, slots=True, repr=False)
class Unit(_PositionalRepr):
    x: Any


@dataclass(frozen=True, slots=True, repr=False)
class More(_PositionalRepr):
    front: Digit
    spine: "Seq"
    back: Digit


Seq = Union[Nil, Unit, More]

NIL = Nil()


# List helpers


def list_append(xs: Sequence[Any], ys: Sequence[Any]) -> List[Any]:
    """List concatenation; ``len(xs ++ ys) == len(xs) + len(ys)``."""
    return [*xs, *ys]


def length_law(xs: Sequence[Any], ys: Sequence[Any]) -> bool:
    return len(list_append(xs, ys)) == len(xs) + len(ys)


def _apply(f: Callable[..., Any], left: Any, right: Any, meter: Optional[CostMeter]) -> Any:
    if meter is None:
        return f(left, right)
    return f(left, right, meter=meter)


def foldr(
    f: Callable[..., Any], b: Any, xs: Sequence[Any], *, meter: Optional[CostMeter] = None
) -> Any:
    """Right fold; only the base clause is charged, plus each application of ``f``."""
    tick(meter)
    acc = b
    for x in reversed(xs):
        acc = _apply(f, x, acc, meter)
    return acc


def foldl(
    f: Callable[..., Any], a: Any, xs: Sequence[Any], *, meter: Optional[CostMeter] = None
) -> Any:
    """Left fold; only the base clause is charged, plus each application of ``f``."""
    acc = a
    for x in xs:
        acc = _apply(f, acc, x, meter)
    tick(meter)
    return acc


def _checked(cost: Cost, name: str) -> Cost:
    if cost < 1:
        raise DomainError(f"timing function {name} returned {cost}, expected at least 1")
    return cost


def foldrT(
    f: Callable[[Any, Any], Any], fT: Callable[[Any, Any], Cost], b: Any, xs: Sequence[Any]
) -> Cost:
    """Cost of ``foldr f b xs`` where each step is costed against the fold of the tail."""
    cost = 1
    acc = b
    for x in reversed(xs):
        cost += _checked(fT(x, acc), getattr(fT, "__name__", "fT"))
        acc = f(x, acc)
    return cost


def foldlT(
    f: Callable[[Any, Any], Any], fT: Callable[[Any, Any], Cost], a: Any, xs: Sequence[Any]
) -> Cost:
    """Cost of ``foldl f a xs`` where each step is costed against the accumulated value."""
    cost = 1
    acc = a
    for x in xs:
        cost += _checked(fT(acc, x), getattr(fT, "__name__", "fT"))
        acc = f(acc, x)
    return cost


# Cons and snoc


def cons(x: Any, q: Seq, *, meter: Optional[CostMeter] = None) -> Seq:
    tick(meter)
    match q:
        case Nil():
            return Unit(x)
        case Unit(y):
            return More(One(x), NIL, One(y))
        case More(One(y), m, u):
            return More(Two(x, y), m, u)
        case More(Two(y, z), m, u):
            return More(Three(x, y, z), m, u)
        case More(Three(y, z, w), m, u):
            return More(Two(x, y), cons(Pair(z, w), m, meter=meter), u)
    raise TypeError(f"Not a finger tree: {q!r}")


def snoc(q: Seq, x: Any, *, meter: Optional[CostMeter] = None) -> Seq:
    tick(meter)
    match q:
        case Nil():
            return Unit(x)
        case Unit(y):
            return More(One(y), NIL, One(x))
        case More(u, m, One(y)):
            return More(u, m, Two(y, x))
        case More(u, m, Two(y, z)):
            return More(u, m, Three(y, z, x))
        case More(u, m, Three(y, z, w)):
            return More(u, snoc(m, Pair(y, z), meter=meter), Two(w, x))
    raise TypeError(f"Not a finger tree: {q!r}")


def consT(x: Any, q: Seq) -> Cost:
    match q:
        case More(Three(_, z, w), m, _):
            return 1 + consT(Pair(z, w), m)
    return 1


def snocT(q: Seq, x: Any) -> Cost:
    match q:
        case More(_, m, Three(y, z, _)):
            return 1 + snocT(m, Pair(y, z))
    return 1


# Potential


def danger(d: Digit) -> Potential:
    match d:
        case Two():
            return 0
        case One() | Three():
            return 1
    raise TypeError(f"Not a digit: {d!r}")


def phi_seq(q: Seq) -> Potential:
    total = 0
    while isinstance(q, More):
        total += danger(q.front) + danger(q.back)
        q = q.spine
    return total


# Same function under the name the amortization lemmas use.
pot = phi_seq


# Flattening


def to_list_digit(d: Digit) -> List[Any]:
    match d:
        case One(a):
            return [a]
        case Two(a, b):
            return [a, b]
        case Three(a, b, c):
            return [a, b, c]
    raise TypeError(f"Not a digit: {d!r}")


def tuples_to_list(xs: Sequence[Node]) -> List[Any]:
    out: List[Any] = []
    for t in xs:
        match t:
            case Pair(a, b):
                out.extend((a, b))
            case Triple(a, b, c):
                out.extend((a, b, c))
            case _:
                raise TypeError(f"Not a tuple node: {t!r}")
    return out


def seq_to_list(q: Seq) -> List[Any]:
    match q:
        case Nil():
            return []
        case Unit(x):
            return [x]
        case More(u, m, v):
            return list_append(
                list_append(to_list_digit(u), tuples_to_list(seq_to_list(m))), to_list_digit(v)
            )
    raise TypeError(f"Not a finger tree: {q!r}")


def seq_size(q: Seq) -> int:
    return len(seq_to_list(q))


def seq_from_list(xs: Sequence[Any]) -> Seq:
    return foldl(snoc, NIL, xs)


def to_tuples_prime(xs: Sequence[Any]) -> List[Node]:
    """Group 0 or 2..9 items into pairs and triples.

    Output lengths: 0 → 0, 2..3 → 1, 4..6 → 2, 7..9 → 3.
    """
    if len(xs) == 1 or len(xs) > 9:
        raise LengthContract("to_tuples_prime", len(xs), "length 0 or 2..9")
    match list(xs):
        case []:
            return []
        case [x, y]:
            return [Pair(x, y)]
        case [x, y, z, w]:
            return [Pair(x, y), Pair(z, w)]
        case [x, y, z, *rest]:
            return [Triple(x, y, z), *to_tuples_prime(rest)]
    raise LengthContract("to_tuples_prime", len(xs), "length 0 or 2..9")


def to_tuples(xs: Sequence[Any]) -> List[Node]:
    if not 2 <= len(xs) <= 9:
        raise LengthContract("to_tuples", len(xs), "length 2..9")
    return to_tuples_prime(xs)


# Concatenation


def _check_middle(as_: Sequence[Any], function: str) -> None:
    if len(as_) > 3:
        raise LengthContract(function, len(as_), "at most 3 elements")


def _middle(v1: Digit, as_: Sequence[Any], u2: Digit) -> List[Node]:
    return to_tuples(list_append(list_append(to_list_digit(v1), as_), to_list_digit(u2)))


def glue(q1: Seq, as_: Sequence[Any], q2: Seq, *, meter: Optional[CostMeter] = None) -> Seq:
    """Concatenate ``q1``, at most three loose items, and ``q2``."""
    _check_middle(as_, "glue")
    tick(meter)
    match q1, q2:
        case Nil(), _:
            return foldr(cons, q2, as_, meter=meter)
        case _, Nil():
            return foldl(snoc, q1, as_, meter=meter)
        case Unit(x), _:
            return foldr(cons, q2, [x, *as_], meter=meter)
        case _, Unit(x):
            return snoc(foldl(snoc, q1, as_, meter=meter), x, meter=meter)
        case More(u1, m1, v1), More(u2, m2, v2):
            return More(u1, glue(m1, _middle(v1, as_, u2), m2, meter=meter), v2)
    raise TypeError(f"Not finger trees: {q1!r}, {q2!r}")


def append(q1: Seq, q2: Seq, *, meter: Optional[CostMeter] = None) -> Seq:
    return glue(q1, [], q2, meter=meter)


def glueT(q1: Seq, as_: Sequence[Any], q2: Seq) -> Cost:
    _check_middle(as_, "glueT")
    match q1, q2:
        case Nil(), _:
            return 1 + foldrT(cons, consT, q2, as_)
        case _, Nil():
            return 1 + foldlT(snoc, snocT, q1, as_)
        case Unit(x), _:
            return 1 + foldrT(cons, consT, q2, [x, *as_])
        case _, Unit(x):
            return 1 + snocT(foldl(snoc, q1, as_), x) + foldlT(snoc, snocT, q1, as_)
        case More(_, m1, v1), More(u2, m2, _):
            return 1 + glueT(m1, _middle(v1, as_, u2), m2)
    raise TypeError(f"Not finger trees: {q1!r}, {q2!r}")


def appendT(q1: Seq, q2: Seq) -> Cost:
    return glueT(q1, [], q2)


# Integer logarithm


def log2(n: int) -> int:
    """Floor of the base-2 logarithm by repeated halving."""
    if n < 1:
        raise DomainError(f"log2 is defined for n >= 1, got {n}")
    result = 0
    while n > 1:
        n //= 2
        result += 1
    return result


def log2_mono(x: int, y: int) -> bool:
    if not 1 <= x <= y:
        raise DomainError(f"log2_mono needs 1 <= x <= y, got x={x}, y={y}")
    return log2(x) <= log2(y)


def div_cancel(x: int) -> bool:
    return (2 * x) // 2 == x


# Bounds


def fold_bound(n: int) -> int:
    return 3 * n + 1


def glue_bound(n1: int, n2: int) -> int:
    return log2(max(n1 + n2, 2)) + GLUE_CONSTANT


# Structural validation


@dataclass
class SeqValidationResult:
    """Result of finger-tree shape validation."""

    valid: bool
    violations: List[str] = field(default_factory=list)


def _check_item(item: Any, depth: int, where: str, violations: List[str]) -> None:
    if depth == 0:
        if isinstance(item, (Pair, Triple)):
            violations.append(f"nesting: {where} holds a tuple where an element belongs")
        return
    match item:
        case Pair(a, b):
            parts = (a, b)
        case Triple(a, b, c):
            parts = (a, b, c)
        case _:
            violations.append(f"nesting: {where} holds {item!r}, expected a depth-{depth} tuple")
            return
    for i, part in enumerate(parts):
        _check_item(part, depth - 1, f"{where}.{i}", violations)


def validate_seq(q: Seq) -> SeqValidationResult:
    """Check digit types and uniform tuple nesting at every spine level."""
    violations: List[str] = []
    depth = 0
    while True:
        match q:
            case Nil():
                break
            case Unit(x):
                _check_item(x, depth, f"level {depth} unit", violations)
                break
            case More(front, spine, back):
                for side, digit in (("front", front), ("back", back)):
                    if not isinstance(digit, (One, Two, Three)):
                        violations.append(f"digit: level {depth} {side} is {digit!r}")
                        continue
                    for i, item in enumerate(to_list_digit(digit)):
                        _check_item(item, depth, f"level {depth} {side}[{i}]", violations)
                q = spine
                depth += 1
            case _:
                violations.append(f"shape: level {depth} is not a finger tree: {q!r}")
                break
    return SeqValidationResult(valid=not violations, violations=violations)


def spine_depth(q: Seq) -> int:
    """Number of ``More`` levels."""
    depth = 0
    while isinstance(q, More):
        depth += 1
        q = q.spine
    return depth
