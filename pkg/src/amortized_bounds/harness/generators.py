"""Instance generators: exhaustive small structures plus seeded random scripts.

Random output comes from numpy's PCG64 bit generator seeded with
``GenConfig.seed``, so a configuration fully determines every instance.
"""

import itertools
from typing import Any, Callable, Dict, Iterator, List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..structures import binomial_heap as bh
from ..structures import finger_tree as ft
from ..structures import stack as st
from ..utils.cache import cached, enumeration_cache
from .report import StructureKind
from .traces import ScriptOp

EXHAUSTIVE_LIMIT = 10**5
STACK_MAX_HEIGHT = 8
MULTIPOP_MAX_COUNT = 10
SEQ_MAX_SPINE_DEPTH = 3


class GenConfig(BaseModel):
    """Generator settings for one structure."""

    model_config = ConfigDict(frozen=True)

    structure: StructureKind
    max_size: int = Field(default=64, ge=0)
    num_traces: int = Field(default=1000, ge=0)
    trace_len: int = Field(default=50, ge=0)
    seed: int = Field(default=42, ge=0, lt=2**64)

    def for_structure(self, structure: StructureKind) -> "GenConfig":
        return self.model_copy(update={"structure": structure})


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """PCG64 generator; ``stream`` separates independent uses of one seed."""
    return np.random.Generator(np.random.PCG64([stream, seed]))


def exhaustive_or_sample(count: int, k: int, rng: np.random.Generator) -> List[int]:
    """All indices below ``count`` when that is small enough, else ``k`` random ones."""
    if count < EXHAUSTIVE_LIMIT:
        return list(range(count))
    return [int(i) for i in rng.integers(0, count, size=k)]


# Stacks


def stack_instances(cfg: GenConfig) -> List[st.Stack]:
    """Every stack height up to the exhaustive limit, labelled 0..h-1 from the top."""
    top = min(cfg.max_size, STACK_MAX_HEIGHT)
    return [st.from_list(list(range(h))) for h in range(top + 1)]


# Heaps


def heap_orders(cfg: GenConfig) -> Dict[str, List[int]]:
    """Adversarial insertion orders of ``max_size`` elements, duplicates included."""
    n = cfg.max_size
    rng = make_rng(cfg.seed, stream=1)
    return {
        "ascending": list(range(n)),
        "descending": list(range(n - 1, -1, -1)),
        "constant": [0] * n,
        "mod3": [i % 3 for i in range(n)],
        "shuffled": [int(x) for x in rng.permutation(n)],
    }


@cached(enumeration_cache)
def heap_prefix_forests(order: Tuple[int, ...]) -> Tuple[bh.Heap, ...]:
    """Forests after inserting the first 0, 1, ..., len(order) elements."""
    forests: List[bh.Heap] = [bh.empty_heap()]
    for x in order:
        forests.append(bh.insert(x, forests[-1]))
    return tuple(forests)


def carry_chain(t: bh.Tree, f: bh.Forest) -> Iterator[Tuple[bh.Tree, bh.Forest, int]]:
    """Every (tree, forest suffix, position) an insertion of ``t`` recurses through."""
    position = 0
    while True:
        yield t, f, position
        if not isinstance(f, bh.F1):
            return
        t = bh.merge_tree(t, f.tree)
        f = f.rest
        position += 1


# Finger trees


def _labeller() -> Callable[[], int]:
    counter = itertools.count()
    return lambda: next(counter)


def _make_item(depth: int, arity: int, label: Callable[[], int]) -> Any:
    if depth == 0:
        return label()
    parts = [_make_item(depth - 1, arity, label) for _ in range(arity)]
    return ft.Pair(*parts) if arity == 2 else ft.Triple(*parts)


def _make_digit(size: int, depth: int, arity: int, label: Callable[[], int]) -> ft.Digit:
    items = [_make_item(depth, arity, label) for _ in range(size)]
    return (ft.One, ft.Two, ft.Three)[size - 1](*items)


def build_seq(
    levels: Sequence[Tuple[int, int]], terminal: str, arity: int = 2
) -> ft.Seq:
    """Build a finger tree from per-level (front, back) digit sizes.

    Elements are labelled 0..n-1 in sequence order; spine tuples are all pairs
    or all triples.
    """
    label = _labeller()

    def level(depth: int) -> ft.Seq:
        if depth == len(levels):
            if terminal == "unit":
                return ft.Unit(_make_item(depth, arity, label))
            return ft.NIL
        front_size, back_size = levels[depth]
        front = _make_digit(front_size, depth, arity, label)
        spine = level(depth + 1)
        back = _make_digit(back_size, depth, arity, label)
        return ft.More(front, spine, back)

    return level(0)


@cached(enumeration_cache)
def seq_shapes(max_depth: int, max_size: int) -> Tuple[ft.Seq, ...]:
    """Every valid tree with at most ``max_depth`` More levels and ``max_size`` elements."""
    digit_sizes = list(itertools.product((1, 2, 3), repeat=2))
    seen: Dict[ft.Seq, None] = {}
    for depth in range(max_depth + 1):
        for levels in itertools.product(digit_sizes, repeat=depth):
            for terminal in ("nil", "unit"):
                for arity in (2, 3):
                    q = build_seq(levels, terminal, arity)
                    if ft.seq_size(q) <= max_size and ft.validate_seq(q).valid:
                        seen.setdefault(q, None)
    return tuple(seen)


def shift_labels(q: ft.Seq, offset: int) -> ft.Seq:
    """Add ``offset`` to every integer element so two trees can share no labels."""

    def item(x: Any) -> Any:
        match x:
            case ft.Pair(a, b):
                return ft.Pair(item(a), item(b))
            case ft.Triple(a, b, c):
                return ft.Triple(item(a), item(b), item(c))
        return x + offset

    def digit(d: ft.Digit) -> ft.Digit:
        return type(d)(*(item(x) for x in ft.to_list_digit(d)))

    match q:
        case ft.Unit(x):
            return ft.Unit(item(x))
        case ft.More(u, m, v):
            return ft.More(digit(u), shift_labels(m, offset), digit(v))
    return q


# Random scripts


def random_script(kind: StructureKind, length: int, rng: np.random.Generator) -> List[ScriptOp]:
    """A seeded random operation script; finger-tree elements are distinct labels."""
    ops: List[ScriptOp] = []
    label = 0
    for _ in range(length):
        if kind is StructureKind.STACK:
            if rng.random() < 0.6:
                ops.append(ScriptOp("push", label))
                label += 1
            else:
                ops.append(ScriptOp("multipop", int(rng.integers(0, MULTIPOP_MAX_COUNT + 1))))
        elif kind is StructureKind.HEAP:
            ops.append(ScriptOp("insert", int(rng.integers(0, 8))))
        else:
            roll = rng.random()
            if roll < 0.1:
                ops.append(ScriptOp("append"))
                continue
            op = "cons" if roll < 0.55 else "snoc"
            ops.append(ScriptOp(op, label, staged=bool(rng.random() < 0.3)))
            label += 1
    return ops


@cached(enumeration_cache)
def random_scripts(cfg: GenConfig) -> Tuple[Tuple[ScriptOp, ...], ...]:
    rng = make_rng(cfg.seed, stream=2)
    return tuple(
        tuple(random_script(cfg.structure, cfg.trace_len, rng)) for _ in range(cfg.num_traces)
    )


def _script_final_seqs(cfg: GenConfig) -> List[ft.Seq]:
    """Main sequences reached by the random scripts, within the size limit."""
    out = []
    for script in random_scripts(cfg):
        q: ft.Seq = ft.NIL
        staged: ft.Seq = ft.NIL
        for op in script:
            if op.op == "append":
                q, staged = ft.append(q, staged), ft.NIL
            elif op.staged:
                staged = ft.cons(op.arg, staged) if op.op == "cons" else ft.snoc(staged, op.arg)
            else:
                q = ft.cons(op.arg, q) if op.op == "cons" else ft.snoc(q, op.arg)
        if ft.seq_size(q) <= cfg.max_size:
            out.append(q)
    return out


@cached(enumeration_cache)
def seq_pool(cfg: GenConfig) -> Tuple[ft.Seq, ...]:
    """Enumerated shapes followed by trees reached through random scripts."""
    return seq_shapes(SEQ_MAX_SPINE_DEPTH, cfg.max_size) + tuple(_script_final_seqs(cfg))


def fresh_label(q: ft.Seq) -> int:
    """A label larger than every label already in ``q``."""
    return max(ft.seq_to_list(q), default=-1) + 1


def glue_cases(cfg: GenConfig) -> List[Tuple[ft.Seq, List[int], ft.Seq]]:
    """(q1, middle, q2) triples for the glue checks.

    All pairs of trees with at most one More level are covered exhaustively;
    the full pool is covered exhaustively when small enough and sampled
    otherwise. ``q2`` and the middle carry labels disjoint from ``q1``.
    """
    rng = make_rng(cfg.seed, stream=3)
    small = seq_shapes(1, cfg.max_size)
    pool = seq_pool(cfg)

    pairs = [(a, b) for a in small for b in small]
    count = len(pool) * len(pool)
    for index in exhaustive_or_sample(count, max(cfg.num_traces, 1), rng):
        pairs.append((pool[index // len(pool)], pool[index % len(pool)]))

    cases = []
    for q1, q2 in pairs:
        base = fresh_label(q1)
        for k in range(4):
            middle = list(range(base, base + k))
            cases.append((q1, middle, shift_labels(q2, base + k)))
    return cases


def enumerate_structures(cfg: GenConfig) -> Iterator[Any]:
    """Exhaustive small instances followed by random-script instances."""
    if cfg.structure is StructureKind.STACK:
        yield from stack_instances(cfg)
        for script in random_scripts(cfg):
            s: st.Stack = st.EMPTY
            for op in script:
                s = st.push(op.arg, s) if op.op == "push" else st.multipop(op.arg or 0, s)[1]
            yield s
    elif cfg.structure is StructureKind.HEAP:
        for order in heap_orders(cfg).values():
            yield from heap_prefix_forests(tuple(order))
        for script in random_scripts(cfg):
            yield bh.from_iterable(op.arg for op in script)
    else:
        yield from seq_pool(cfg)
