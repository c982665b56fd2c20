"""Operation scripts, their execution into traces, and per-step ledgers.

A script is a newline-delimited list of ``op arg`` lines::

    # stack
    push 5
    multipop 3

    # finger tree; ``stage`` ops build a second sequence that ``append`` consumes
    cons 1
    stage snoc 2
    append

Blank lines and ``#`` comments are ignored.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from pydantic import BaseModel

from ..core.cost import StepRecord, Trace, banker_simulate, build_trace, telescope_check
from ..core.meter import CostMeter
from ..structures import binomial_heap as bh
from ..structures import finger_tree as ft
from ..structures import stack as st
from ..utils.errors import MalformedScript, NegativeCount
from .report import StructureKind

STRUCTURE_OPS: Dict[StructureKind, frozenset] = {
    StructureKind.STACK: frozenset({"push", "multipop"}),
    StructureKind.HEAP: frozenset({"insert"}),
    StructureKind.FINGERTREE: frozenset({"cons", "snoc", "append"}),
}

DEPOSIT_RULES: Dict[StructureKind, Dict[str, int]] = {
    StructureKind.STACK: {"push": 2, "multipop": 1},
    StructureKind.HEAP: {"insert": 2},
    StructureKind.FINGERTREE: {"cons": 3, "snoc": 3},
}

_NULLARY = frozenset({"append"})


@dataclass(frozen=True)
class ScriptOp:
    """One scripted operation."""

    op: str
    arg: Optional[int] = None
    staged: bool = False
    line: Optional[int] = None

    def render(self) -> str:
        parts = ["stage"] if self.staged else []
        parts.append(self.op)
        if self.arg is not None:
            parts.append(str(self.arg))
        return " ".join(parts)


def parse_script(text: str, kind: StructureKind) -> List[ScriptOp]:
    """Parse an operation script for ``kind``; raises MalformedScript on bad lines."""
    allowed = STRUCTURE_OPS[kind]
    ops: List[ScriptOp] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        staged = words[0] == "stage"
        if staged:
            words = words[1:]
            if kind is not StructureKind.FINGERTREE or not words or words[0] == "append":
                raise MalformedScript("stage only prefixes finger-tree cons/snoc", lineno, raw)
        if not words:
            raise MalformedScript("missing operation", lineno, raw)

        op, args = words[0], words[1:]
        if op not in allowed:
            raise MalformedScript(f"unknown operation {op!r} for {kind}", lineno, raw)

        if op in _NULLARY:
            if args:
                raise MalformedScript(f"{op} takes no argument", lineno, raw)
            ops.append(ScriptOp(op, None, staged, lineno))
            continue

        if len(args) != 1:
            raise MalformedScript(f"{op} takes exactly one integer argument", lineno, raw)
        try:
            arg = int(args[0])
        except ValueError:
            raise MalformedScript(f"argument {args[0]!r} is not an integer", lineno, raw)
        if op == "multipop" and arg < 0:
            raise MalformedScript(f"multipop count must be nonnegative, got {arg}", lineno, raw)
        ops.append(ScriptOp(op, arg, staged, lineno))
    return ops


def render_script(ops: Sequence[ScriptOp]) -> str:
    return "".join(op.render() + "\n" for op in ops)


class Machine:
    """A structure under a script: applies operations and reports costs and potential."""

    kind: StructureKind

    def phi(self) -> int:
        raise NotImplementedError

    def timing(self, op: ScriptOp) -> int:
        """Cost of ``op`` on the current state according to the timing mirror."""
        raise NotImplementedError

    def bound(self, op: ScriptOp) -> int:
        raise NotImplementedError

    def apply(self, op: ScriptOp, meter: CostMeter) -> Any:
        """Run ``op`` against the state; returns any value it produces."""
        raise NotImplementedError

    def snapshot(self) -> Any:
        raise NotImplementedError


class StackMachine(Machine):
    kind = StructureKind.STACK

    def __init__(self) -> None:
        self.state: st.Stack = st.EMPTY

    def phi(self) -> int:
        return st.phi_stack(self.state)

    def timing(self, op: ScriptOp) -> int:
        if op.op == "push":
            return st.pushT(op.arg, self.state)
        return st.multipopT(op.arg or 0, self.state)

    def bound(self, op: ScriptOp) -> int:
        return st.PUSH_BOUND if op.op == "push" else st.MULTIPOP_BOUND

    def apply(self, op: ScriptOp, meter: CostMeter) -> Any:
        if op.op == "push":
            self.state = st.push(op.arg, self.state, meter=meter)
            return None
        popped, self.state = st.multipop(op.arg or 0, self.state, meter=meter)
        return popped

    def snapshot(self) -> st.Stack:
        return self.state


class HeapMachine(Machine):
    kind = StructureKind.HEAP

    def __init__(self) -> None:
        self.state: bh.Heap = bh.empty_heap()

    def phi(self) -> int:
        return bh.phi_heap(self.state)

    def timing(self, op: ScriptOp) -> int:
        return bh.insertT(bh.Tree(op.arg), self.state)

    def bound(self, op: ScriptOp) -> int:
        return bh.INSERT_BOUND

    def apply(self, op: ScriptOp, meter: CostMeter) -> Any:
        self.state = bh.insert(op.arg, self.state, meter=meter)
        return None

    def snapshot(self) -> bh.Heap:
        return self.state


class FingerTreeMachine(Machine):
    """Main sequence plus a staged sequence that ``append`` glues onto it.

    The trace potential is the sum of both sequences' potentials, so the
    chaining of consecutive steps survives appends.
    """

    kind = StructureKind.FINGERTREE

    def __init__(self) -> None:
        self.main: ft.Seq = ft.NIL
        self.staged: ft.Seq = ft.NIL

    def phi(self) -> int:
        return ft.phi_seq(self.main) + ft.phi_seq(self.staged)

    def _target(self, op: ScriptOp) -> ft.Seq:
        return self.staged if op.staged else self.main

    def timing(self, op: ScriptOp) -> int:
        match op.op:
            case "cons":
                return ft.consT(op.arg, self._target(op))
            case "snoc":
                return ft.snocT(self._target(op), op.arg)
        return ft.appendT(self.main, self.staged)

    def bound(self, op: ScriptOp) -> int:
        if op.op == "cons":
            return ft.CONS_BOUND
        if op.op == "snoc":
            return ft.SNOC_BOUND
        return ft.glue_bound(ft.seq_size(self.main), ft.seq_size(self.staged))

    def apply(self, op: ScriptOp, meter: CostMeter) -> Any:
        match op.op:
            case "cons":
                result = ft.cons(op.arg, self._target(op), meter=meter)
            case "snoc":
                result = ft.snoc(self._target(op), op.arg, meter=meter)
            case _:
                self.main = ft.append(self.main, self.staged, meter=meter)
                self.staged = ft.NIL
                return None
        if op.staged:
            self.staged = result
        else:
            self.main = result
        return None

    def snapshot(self) -> Tuple[ft.Seq, ft.Seq]:
        return self.main, self.staged


MACHINES = {
    StructureKind.STACK: StackMachine,
    StructureKind.HEAP: HeapMachine,
    StructureKind.FINGERTREE: FingerTreeMachine,
}


def new_machine(kind: StructureKind) -> Machine:
    return MACHINES[kind]()


@dataclass(frozen=True)
class ExecutedStep:
    """A script operation together with its accounting record."""

    op: ScriptOp
    record: StepRecord
    metered: int
    result: Any
    state: Any


@dataclass(frozen=True)
class ScriptRun:
    kind: StructureKind
    steps: Tuple[ExecutedStep, ...]

    @property
    def trace(self) -> Trace:
        return build_trace(step.record for step in self.steps)


def execute_step(machine: Machine, op: ScriptOp) -> ExecutedStep:
    """Apply one operation, recording its timing-mirror cost and potentials."""
    phi_before = machine.phi()
    actual = machine.timing(op)
    bound = machine.bound(op)
    meter = CostMeter()
    result = machine.apply(op, meter)
    record = StepRecord(
        op_label=op.op,
        actual_cost=actual,
        phi_before=phi_before,
        phi_after=machine.phi(),
        claimed_bound=bound,
    )
    return ExecutedStep(op, record, meter.units, result, machine.snapshot())


def run_script(kind: StructureKind, ops: Sequence[ScriptOp]) -> ScriptRun:
    """Execute a script from the empty structure."""
    machine = new_machine(kind)
    steps: List[ExecutedStep] = []
    for op in ops:
        if op.op not in STRUCTURE_OPS[kind]:
            raise MalformedScript(f"unknown operation {op.op!r} for {kind}", op.line, op.render())
        try:
            steps.append(execute_step(machine, op))
        except NegativeCount as e:
            raise MalformedScript(e.message, op.line, op.render())
    return ScriptRun(kind, tuple(steps))


class LedgerRow(BaseModel):
    step: int
    op: str
    arg: Optional[int]
    actual: int
    phi_before: int
    phi_after: int
    amortized: int
    bound: int
    balance: int


class Ledger(BaseModel):
    """Per-step ledger of a script run with its telescoping totals."""

    structure: StructureKind
    rows: List[LedgerRow]
    total_actual: int
    total_amortized: int
    residual: int
    telescope_passed: bool
    bound_violations: int
    solvent: bool


def build_ledger(run: ScriptRun, deposit_rule: Optional[Mapping[str, int]] = None) -> Ledger:
    trace = run.trace
    rule = DEPOSIT_RULES[run.kind] if deposit_rule is None else deposit_rule
    bank = banker_simulate(trace, rule)
    telescope = telescope_check(trace)

    rows = [
        LedgerRow(
            step=i,
            op=f"stage {step.op.op}" if step.op.staged else step.op.op,
            arg=step.op.arg,
            actual=step.record.actual_cost,
            phi_before=step.record.phi_before,
            phi_after=step.record.phi_after,
            amortized=step.record.amortized,
            bound=step.record.claimed_bound,
            balance=balance,
        )
        for i, (step, balance) in enumerate(zip(run.steps, bank.balance_history))
    ]
    return Ledger(
        structure=run.kind,
        rows=rows,
        total_actual=telescope.actual_total,
        total_amortized=telescope.amortized_total,
        residual=telescope.residual,
        telescope_passed=telescope.passed,
        bound_violations=sum(1 for row in rows if row.amortized > row.bound),
        solvent=bank.solvent,
    )


def render_ledger(ledger: Ledger) -> str:
    header = f"{'step':>4} {'op':<12} {'arg':>5} {'actual':>6} {'Φ before':>8} {'Φ after':>8} "
    header += f"{'amortized':>9} {'bound':>5} {'balance':>7}"
    lines = [f"structure: {ledger.structure}", header]
    for row in ledger.rows:
        arg = "" if row.arg is None else str(row.arg)
        lines.append(
            f"{row.step:>4} {row.op:<12} {arg:>5} {row.actual:>6} {row.phi_before:>8} "
            f"{row.phi_after:>8} {row.amortized:>9} {row.bound:>5} {row.balance:>7}"
        )
    lines.append(
        f"total actual {ledger.total_actual}, total amortized {ledger.total_amortized}, "
        f"residual Φ {ledger.residual}"
    )
    lines.append(
        f"telescope {'ok' if ledger.telescope_passed else 'FAILED'}, "
        f"bound violations {ledger.bound_violations}, "
        f"bank {'solvent' if ledger.solvent else 'overdrawn'}"
    )
    return "\n".join(lines) + "\n"
