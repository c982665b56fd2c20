"""Naive reference models the structures are compared against."""

import bisect
from typing import Any, List, Optional, Tuple

from ..structures import binomial_heap as bh
from ..structures import finger_tree as ft
from ..structures import stack as st
from .report import StructureKind
from .traces import ScriptOp

# (check name, expected, observed)
Mismatch = Tuple[str, str, str]


def expected_occupancy(n: int) -> str:
    """Binary representation of ``n``, least significant bit first."""
    return format(n, "b")[::-1] if n else ""


class Model:
    kind: StructureKind

    def apply(self, op: ScriptOp) -> Any:
        raise NotImplementedError

    def compare(self, state: Any, result: Any) -> List[Mismatch]:
        raise NotImplementedError


class StackModel(Model):
    """Python list, top of stack first."""

    kind = StructureKind.STACK

    def __init__(self) -> None:
        self.items: List[Any] = []

    def apply(self, op: ScriptOp) -> Any:
        if op.op == "push":
            self.items.insert(0, op.arg)
            return None
        k = op.arg or 0
        popped, self.items = self.items[:k], self.items[k:]
        return popped

    def compare(self, state: st.Stack, result: Any) -> List[Mismatch]:
        out = []
        observed = st.to_list(state)
        if observed != self.items:
            out.append(("stack=list", repr(self.items), repr(observed)))
        return out


class HeapModel(Model):
    """Sorted multiset plus the element count's binary pattern."""

    kind = StructureKind.HEAP

    def __init__(self) -> None:
        self.items: List[Any] = []
        self.previous_occupancy = ""

    def apply(self, op: ScriptOp) -> Any:
        bisect.insort(self.items, op.arg)
        return None

    def compare(self, state: bh.Heap, result: Any) -> List[Mismatch]:
        out: List[Mismatch] = []
        elements = bh.heap_elements(state)
        if elements != self.items:
            out.append(("heap=multiset", repr(self.items), repr(elements)))

        bits = bh.occupancy(state)
        expected_bits = expected_occupancy(len(self.items))
        if bits != expected_bits:
            out.append(("occupancy=binary(count)", expected_bits, bits))
        if bits != bh.binary_increment(self.previous_occupancy):
            out.append(
                ("occupancy=increment", bh.binary_increment(self.previous_occupancy), bits)
            )
        self.previous_occupancy = bits

        popcount = expected_bits.count("1")
        if bh.phi_heap(state) != popcount:
            out.append(("phi=popcount", str(popcount), str(bh.phi_heap(state))))

        validation = bh.validate_heap(state)
        if not validation.valid:
            out.append(("validate_heap", "no violations", "; ".join(validation.violations)))
        return out


class SeqModel(Model):
    """Two Python lists for the main and staged sequences."""

    kind = StructureKind.FINGERTREE

    def __init__(self) -> None:
        self.main: List[Any] = []
        self.staged: List[Any] = []

    def apply(self, op: ScriptOp) -> Any:
        if op.op == "append":
            self.main, self.staged = self.main + self.staged, []
            return None
        target = self.staged if op.staged else self.main
        if op.op == "cons":
            target.insert(0, op.arg)
        else:
            target.append(op.arg)
        return None

    def compare(self, state: Tuple[ft.Seq, ft.Seq], result: Any) -> List[Mismatch]:
        out: List[Mismatch] = []
        for name, q, expected in (("main", state[0], self.main), ("staged", state[1], self.staged)):
            observed = ft.seq_to_list(q)
            if observed != expected:
                out.append((f"{name}=list", repr(expected), repr(observed)))
            validation = ft.validate_seq(q)
            if not validation.valid:
                out.append(
                    (f"validate_seq({name})", "no violations", "; ".join(validation.violations))
                )
        return out


MODELS = {
    StructureKind.STACK: StackModel,
    StructureKind.HEAP: HeapModel,
    StructureKind.FINGERTREE: SeqModel,
}


def new_model(kind: StructureKind) -> Model:
    return MODELS[kind]()


def compare_result(model_result: Any, observed: Any) -> Optional[Mismatch]:
    """Compare values returned by an operation (multipop's popped list)."""
    if model_result != observed:
        return ("result", repr(model_result), repr(observed))
    return None
