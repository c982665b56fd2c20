"""Structure-agnostic amortized-cost accounting.

A trace records, for each executed operation, its actual cost in abstract time
units and the potential of the structure before and after it. Traces start from
the empty structure, so the first ``phi_before`` is always 0.

Serialized traces are JSON lines, one object per step::

    {"op": "push", "actual": 1, "phi_before": 0, "phi_after": 1, "bound": 2}
"""

import json
from dataclasses import dataclass
from typing import Iterable, List, Mapping, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..utils.errors import MalformedTrace

Cost = int
Potential = int

OP_LABELS = frozenset({"push", "multipop", "insert", "cons", "snoc", "append"})


def amortized_step(actual: Cost, phi_before: Potential, phi_after: Potential) -> int:
    """Amortized cost of one operation: ``actual + phi_after - phi_before``.

    The result may be negative when an operation releases stored potential.
    """
    return actual + phi_after - phi_before


class StepRecord(BaseModel):
    """One executed operation with its cost, potentials and claimed bound."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    op_label: str = Field(alias="op")
    actual_cost: Cost = Field(alias="actual", ge=1)
    phi_before: Potential = Field(ge=0)
    phi_after: Potential = Field(ge=0)
    claimed_bound: int = Field(alias="bound")

    @property
    def amortized(self) -> int:
        return amortized_step(self.actual_cost, self.phi_before, self.phi_after)


class Trace(BaseModel):
    """An ordered sequence of steps starting from the empty structure."""

    model_config = ConfigDict(frozen=True)

    steps: Tuple[StepRecord, ...] = ()
    initial_phi: Potential = Field(default=0, ge=0)

    @property
    def final_phi(self) -> Potential:
        return self.steps[-1].phi_after if self.steps else self.initial_phi

    def prefix(self, n: int) -> "Trace":
        """The trace of the first ``n`` steps."""
        return Trace(steps=self.steps[:n], initial_phi=self.initial_phi)

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class TelescopeResult:
    """Outcome of the telescoping-sum identity check."""

    passed: bool
    residual: int
    actual_total: int
    amortized_total: int


@dataclass(frozen=True)
class BoundViolation:
    """A step whose amortized cost exceeds its claimed bound."""

    index: int
    step: StepRecord
    amortized: int


@dataclass(frozen=True)
class NegativeBalance:
    """A step after which the bank account dropped below zero."""

    index: int
    balance: int


@dataclass(frozen=True)
class BankLedger:
    """Account balance after every step of a banker's-method simulation."""

    balance_history: Tuple[int, ...]
    negative: Tuple[NegativeBalance, ...] = ()

    @property
    def solvent(self) -> bool:
        return not self.negative

    @property
    def final_balance(self) -> int:
        return self.balance_history[-1] if self.balance_history else 0


def validate_trace(trace: Trace) -> None:
    """Raise MalformedTrace unless the trace starts empty and its potentials chain."""
    if trace.initial_phi != 0:
        raise MalformedTrace(
            f"Trace must start from the empty structure, got Φ₀={trace.initial_phi}"
        )

    expected = trace.initial_phi
    for i, step in enumerate(trace.steps):
        if step.op_label not in OP_LABELS:
            raise MalformedTrace(f"Unknown operation label {step.op_label!r}", step=i)
        if step.phi_before != expected:
            raise MalformedTrace(
                f"Step {i} starts at Φ={step.phi_before} "
                f"but the previous step ended at Φ={expected}",
                step=i,
            )
        expected = step.phi_after


def telescope_check(trace: Trace) -> TelescopeResult:
    """Check that summed amortized costs overestimate actual costs by exactly Φ(hₙ)."""
    validate_trace(trace)

    actual_total = sum(step.actual_cost for step in trace.steps)
    amortized_total = sum(step.amortized for step in trace.steps)
    residual = trace.final_phi

    return TelescopeResult(
        passed=actual_total == amortized_total - residual + trace.initial_phi,
        residual=residual,
        actual_total=actual_total,
        amortized_total=amortized_total,
    )


def bound_check(trace: Trace) -> List[BoundViolation]:
    """Every step whose amortized cost exceeds its claimed bound."""
    validate_trace(trace)
    return [
        BoundViolation(index=i, step=step, amortized=step.amortized)
        for i, step in enumerate(trace.steps)
        if step.amortized > step.claimed_bound
    ]


def banker_simulate(trace: Trace, deposit_rule: Mapping[str, int]) -> BankLedger:
    """Replay a trace against a bank account.

    Each step pays ``deposit_rule[op]`` into the account and withdraws its actual
    cost. Labels without a fixed charge pay their claimed bound.
    """
    validate_trace(trace)

    balance = 0
    history: List[int] = []
    negative: List[NegativeBalance] = []
    for i, step in enumerate(trace.steps):
        charge = deposit_rule.get(step.op_label, step.claimed_bound)
        balance += charge - step.actual_cost
        history.append(balance)
        if balance < 0:
            negative.append(NegativeBalance(index=i, balance=balance))

    return BankLedger(balance_history=tuple(history), negative=tuple(negative))


def build_trace(steps: Iterable[StepRecord]) -> Trace:
    return Trace(steps=tuple(steps))


def dump_trace(trace: Trace) -> str:
    """Serialize a trace as JSON lines."""
    return "".join(
        json.dumps(step.model_dump(by_alias=True)) + "\n" for step in trace.steps
    )


def load_trace(text: str, source: Optional[str] = None) -> Trace:
    """Parse a JSON-lines trace; raises MalformedTrace on bad input."""
    steps: List[StepRecord] = []
    where = f" in {source}" if source else ""
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            steps.append(StepRecord.model_validate(json.loads(line)))
        except (json.JSONDecodeError, ValidationError) as e:
            raise MalformedTrace(f"Bad trace record on line {lineno}{where}: {e}", step=len(steps))
    trace = build_trace(steps)
    validate_trace(trace)
    return trace
