"""Binomial min-heap as a positional forest of binomial trees.

Position ``i`` of a forest (counting from the front) is either empty (``F0``)
or holds a tree of rank ``i`` (``F1``). Read front to back, the occupancy
pattern is the element count in binary, least significant bit first, and
inserting a single element is a binary increment.

Potential is the number of trees; insert costs at most 2 amortized units.
"""

from dataclasses import dataclass, field
from typing import Any, Iterable, List, Optional, Tuple, Union

from ..core.cost import Cost, Potential
from ..core.meter import CostMeter, tick
from ..utils.errors import InvalidForest, RankMismatch

INSERT_BOUND = 2


@dataclass(frozen=True, slots=True)
class Tree:
    """Binomial tree; children are stored in descending rank order."""

    root: Any
    children: Tuple["Tree", ...] = ()


@dataclass(frozen=True, slots=True)
class FEnd:
    pass


@dataclass(frozen=True, slots=True)
class F0:
    rest: "Forest"


@dataclass(frozen=True, slots=True)
class F1:
    tree: Tree
    rest: "Forest"


Forest = Union[FEnd, F0, F1]
Heap = Forest

FEND = FEnd()


def empty_heap() -> Heap:
    return FEND


def rank(t: Tree) -> int:
    return len(t.children)


def tree_elements(t: Tree) -> List[Any]:
    out = [t.root]
    for child in t.children:
        out.extend(tree_elements(child))
    return out


def tree_size(t: Tree) -> int:
    return 1 + sum(tree_size(child) for child in t.children)


def merge_tree(l: Tree, r: Tree) -> Tree:
    """Link two trees of equal rank; the larger root becomes the first child."""
    if rank(l) != rank(r):
        raise RankMismatch(rank(l), rank(r))
    if l.root <= r.root:
        return Tree(l.root, (r,) + l.children)
    return Tree(r.root, (l,) + r.children)


def _carry(t: Tree, occupant: Tree) -> Tree:
    if rank(occupant) != rank(t):
        raise InvalidForest(
            f"Position holding a rank-{rank(occupant)} tree was reached by a rank-{rank(t)} carry"
        )
    return merge_tree(t, occupant)


def insert_tree(t: Tree, f: Forest, *, meter: Optional[CostMeter] = None) -> Forest:
    """Insert ``t`` at the front position of ``f``, carrying through occupied positions."""
    tick(meter)
    match f:
        case FEnd():
            return F1(t, FEND)
        case F0(rest):
            return F1(t, rest)
        case F1(occupant, rest):
            return F0(insert_tree(_carry(t, occupant), rest, meter=meter))
    raise InvalidForest(f"Not a forest: {f!r}")


def insert(x: Any, h: Heap, *, meter: Optional[CostMeter] = None) -> Heap:
    return insert_tree(Tree(x), h, meter=meter)


def from_iterable(xs: Iterable[Any]) -> Heap:
    h: Heap = FEND
    for x in xs:
        h = insert(x, h)
    return h


def phi_heap(f: Forest) -> Potential:
    """Number of trees in the forest."""
    count = 0
    while not isinstance(f, FEnd):
        if isinstance(f, F1):
            count += 1
        f = f.rest
    return count


def insertT(t: Tree, f: Forest) -> Cost:
    match f:
        case FEnd() | F0():
            return 1
        case F1(occupant, rest):
            return 1 + insertT(_carry(t, occupant), rest)
    raise InvalidForest(f"Not a forest: {f!r}")


def occupancy(f: Forest) -> str:
    """F0/F1 pattern front to back as a bit string (least significant bit first)."""
    bits = []
    while not isinstance(f, FEnd):
        bits.append("1" if isinstance(f, F1) else "0")
        f = f.rest
    return "".join(bits)


def binary_increment(bits: str) -> str:
    """Increment a least-significant-first bit string."""
    if not bits:
        return "1"
    if bits[0] == "0":
        return "1" + bits[1:]
    return "0" + binary_increment(bits[1:])


def occupancy_value(bits: str) -> int:
    return int(bits[::-1], 2) if bits else 0


def heap_trees(f: Forest) -> List[Tree]:
    trees = []
    while not isinstance(f, FEnd):
        if isinstance(f, F1):
            trees.append(f.tree)
        f = f.rest
    return trees


def heap_elements(f: Forest) -> List[Any]:
    """All elements as a sorted multiset."""
    return sorted(x for t in heap_trees(f) for x in tree_elements(t))


def heap_size(f: Forest) -> int:
    return sum(tree_size(t) for t in heap_trees(f))


@dataclass
class HeapValidationResult:
    """Result of structural heap validation."""

    valid: bool
    violations: List[str] = field(default_factory=list)


def _validate_tree(t: Tree, path: str, violations: List[str]) -> None:
    k = rank(t)
    for i, child in enumerate(t.children):
        child_path = f"{path}.{i}"
        if rank(child) != k - 1 - i:
            violations.append(
                f"rank: child {child_path} of a rank-{k} tree has rank {rank(child)},"
                f" expected {k - 1 - i}"
            )
        if child.root < t.root:
            violations.append(
                f"heap-order: child {child_path} root {child.root!r} is below parent {t.root!r}"
            )
        _validate_tree(child, child_path, violations)
    size = tree_size(t)
    if size != 2**k:
        violations.append(f"size: tree {path} of rank {k} holds {size} elements, expected {2**k}")


def validate_heap(f: Forest) -> HeapValidationResult:
    """Check rank, heap-order, position and size invariants; collects every violation."""
    violations: List[str] = []
    position = 0
    while not isinstance(f, FEnd):
        if isinstance(f, F1):
            if rank(f.tree) != position:
                violations.append(
                    f"position: slot {position} holds a tree of rank {rank(f.tree)}"
                )
            _validate_tree(f.tree, f"[{position}]", violations)
        elif not isinstance(f, F0):
            violations.append(f"shape: slot {position} is not a forest node: {f!r}")
            break
        f = f.rest
        position += 1
    return HeapValidationResult(valid=not violations, violations=violations)
