"""Suite runners: amortized bounds, oracle equivalence, timing agreement and helper contracts."""

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..core.cost import amortized_step, banker_simulate, bound_check, telescope_check
from ..core.meter import measure
from ..structures import binomial_heap as bh
from ..structures import finger_tree as ft
from ..structures import stack as st
from ..utils.errors import ContractError, LengthContract
from ..utils.logging_config import LoggerMixin, log_suite_completion, log_suite_start
from .generators import (
    MULTIPOP_MAX_COUNT,
    GenConfig,
    carry_chain,
    fresh_label,
    glue_cases,
    heap_orders,
    heap_prefix_forests,
    make_rng,
    random_scripts,
    seq_pool,
    stack_instances,
)
from .oracles import compare_result, new_model
from .report import OracleMismatch, RunSummary, StructureKind, VerifyReport, Violation
from .traces import DEPOSIT_RULES, ScriptOp, execute_step, new_machine, run_script

LOG2_MONO_LIMIT = 4096
TO_TUPLES_LENGTHS = {0: 0, 2: 1, 3: 1, 4: 2, 5: 2, 6: 2, 7: 3, 8: 3, 9: 3}

Describe = Callable[[], str]


class SuiteRecorder(LoggerMixin):
    """Collects cases, violations and mismatches for one suite run."""

    def __init__(self, suite: str, structure: Optional[StructureKind], cfg: GenConfig):
        self.report = VerifyReport(suite=suite, structure=structure, seed=cfg.seed)
        self._start = time.perf_counter()
        log_suite_start(suite, cfg.model_dump(mode="json"))

    def cases(self, n: int) -> None:
        self.report.cases_run += n

    def bound(self, check: str, observed: int, bound: int, describe: Describe) -> None:
        self.report.cases_run += 1
        if observed > bound:
            self.report.violations.append(
                Violation(check=check, case=describe(), expected_bound=bound, observed=observed)
            )

    def exact(self, check: str, expected: Any, observed: Any, describe: Describe) -> None:
        self.report.cases_run += 1
        if expected != observed:
            self.mismatch(check, describe(), repr(expected), repr(observed))

    def holds(self, check: str, condition: bool, describe: Describe) -> None:
        self.report.cases_run += 1
        if not condition:
            self.mismatch(check, describe(), "holds", "fails")

    def mismatch(self, check: str, case: str, expected: str, observed: str) -> None:
        self.report.oracle_mismatches.append(
            OracleMismatch(check=check, case=case, expected=expected, observed=observed)
        )

    def finish(self) -> VerifyReport:
        duration = time.perf_counter() - self._start
        self.report.elapsed_ms = round(duration * 1000, 2)
        log_suite_completion(
            self.report.suite, self.report.passed, duration, cases_run=self.report.cases_run
        )
        if not self.report.passed:
            self.logger.warning(
                f"{self.report.suite}: {len(self.report.violations)} violations, "
                f"{len(self.report.oracle_mismatches)} mismatches"
            )
        return self.report


def _script_case(index: int, script: Sequence[ScriptOp], upto: Optional[int] = None) -> str:
    ops = script if upto is None else script[: upto + 1]
    return f"trace {index}: " + "; ".join(op.render() for op in ops)


# Bound suite


def _stack_bounds(cfg: GenConfig, rec: SuiteRecorder) -> None:
    for s in stack_instances(cfg):
        x = st.height(s)
        pushed = st.push(x, s)
        amortized = amortized_step(st.pushT(x, s), st.phi_stack(s), st.phi_stack(pushed))
        rec.bound("pushP", amortized, st.PUSH_BOUND, lambda: f"push({x!r}, {s!r})")
        rec.exact("pushP is tight", st.PUSH_BOUND, amortized, lambda: f"push({x!r}, {s!r})")

        for k in range(MULTIPOP_MAX_COUNT + 1):
            _, rest = st.multipop(k, s)
            amortized = amortized_step(st.multipopT(k, s), st.phi_stack(s), st.phi_stack(rest))
            rec.bound("multipopP", amortized, st.MULTIPOP_BOUND, lambda: f"multipop({k}, {s!r})")


def _heap_bounds(cfg: GenConfig, rec: SuiteRecorder) -> None:
    for name, order in heap_orders(cfg).items():
        forests = heap_prefix_forests(tuple(order))
        for i, x in enumerate(order):
            for t, suffix, position in carry_chain(bh.Tree(x), forests[i]):
                amortized = amortized_step(
                    bh.insertT(t, suffix),
                    bh.phi_heap(suffix),
                    bh.phi_heap(bh.insert_tree(t, suffix)),
                )
                rec.bound(
                    "insertTreeP",
                    amortized,
                    bh.INSERT_BOUND,
                    lambda: (
                        f"insert_tree({t!r}, {suffix!r}) at position {position}"
                        f" while inserting {x!r} ({name} order, {i} elements present)"
                    ),
                )


def _seq_bounds(cfg: GenConfig, rec: SuiteRecorder) -> None:
    for q in seq_pool(cfg):
        n = fresh_label(q)
        phi_q = ft.phi_seq(q)

        amortized = amortized_step(ft.consT(n, q), phi_q, ft.phi_seq(ft.cons(n, q)))
        rec.bound("consP", amortized, ft.CONS_BOUND, lambda: f"cons({n}, {q!r})")
        amortized = amortized_step(ft.snocT(q, n), phi_q, ft.phi_seq(ft.snoc(q, n)))
        rec.bound("snocAmortized", amortized, ft.SNOC_BOUND, lambda: f"snoc({q!r}, {n})")

        for k in range(4):
            as_ = list(range(n, n + k))
            folded = ft.foldr(ft.cons, q, as_)
            amortized = ft.foldrT(ft.cons, ft.consT, q, as_) + ft.phi_seq(folded) - phi_q
            rec.bound(
                "foldrTCons", amortized, ft.fold_bound(k), lambda: f"foldr cons {q!r} {as_!r}"
            )
            folded = ft.foldl(ft.snoc, q, as_)
            amortized = ft.foldlT(ft.snoc, ft.snocT, q, as_) + ft.phi_seq(folded) - phi_q
            rec.bound(
                "foldlTSnoc", amortized, ft.fold_bound(k), lambda: f"foldl snoc {q!r} {as_!r}"
            )

    for q1, as_, q2 in glue_cases(cfg):
        glued = ft.glue(q1, as_, q2)
        amortized = (
            ft.glueT(q1, as_, q2) + ft.phi_seq(glued) - ft.phi_seq(q1) - ft.phi_seq(q2)
        )
        rec.bound(
            "glueAmortized",
            amortized,
            ft.glue_bound(ft.seq_size(q1), ft.seq_size(q2)),
            lambda: f"glue({q1!r}, {as_!r}, {q2!r})",
        )


def _trace_bounds(kind: StructureKind, cfg: GenConfig, rec: SuiteRecorder) -> None:
    """Per-step bounds, the telescoping identity and the bank account on random traces."""
    rule = DEPOSIT_RULES[kind]
    for index, script in enumerate(random_scripts(cfg)):
        run = run_script(kind, script)
        trace = run.trace

        for window in (trace.prefix(len(trace) // 2), trace):
            telescope = telescope_check(window)
            rec.holds("telescope", telescope.passed, lambda: _script_case(index, script))

        for v in bound_check(trace):
            rec.report.violations.append(
                Violation(
                    check=f"{v.step.op_label} step",
                    case=_script_case(index, script, v.index),
                    expected_bound=v.step.claimed_bound,
                    observed=v.amortized,
                )
            )
        rec.cases(len(trace))

        actual_total = sum(step.actual_cost for step in trace.steps)
        bound_total = sum(step.claimed_bound for step in trace.steps)
        rec.bound(
            "Σ actual ≤ Σ bounds",
            actual_total,
            bound_total,
            lambda: _script_case(index, script),
        )

        bank = banker_simulate(trace, rule)
        for negative in bank.negative:
            rec.mismatch(
                "bank balance ≥ 0",
                _script_case(index, script, negative.index),
                ">= 0",
                str(negative.balance),
            )
        if kind is StructureKind.STACK:
            for i, (step, balance) in enumerate(zip(run.steps, bank.balance_history)):
                rec.exact(
                    "bank = stack height",
                    st.height(step.state),
                    balance,
                    lambda: _script_case(index, script, i),
                )


_BOUND_CHECKS = {
    StructureKind.STACK: _stack_bounds,
    StructureKind.HEAP: _heap_bounds,
    StructureKind.FINGERTREE: _seq_bounds,
}


def run_bound_suite(kind: StructureKind, cfg: GenConfig) -> VerifyReport:
    """Evaluate every amortized-cost inequality of ``kind`` on every generated instance."""
    cfg = cfg.for_structure(kind)
    rec = SuiteRecorder(f"bounds:{kind}", kind, cfg)
    _BOUND_CHECKS[kind](cfg, rec)
    _trace_bounds(kind, cfg, rec)
    return rec.finish()


# Oracle suite


def _replay_against_model(kind: StructureKind, cfg: GenConfig, rec: SuiteRecorder) -> None:
    for index, script in enumerate(random_scripts(cfg)):
        machine = new_machine(kind)
        model = new_model(kind)
        for i, op in enumerate(script):
            executed = execute_step(machine, op)
            expected_result = model.apply(op)
            found = model.compare(executed.state, executed.result)
            if op.op == "multipop":
                mismatch = compare_result(expected_result, executed.result)
                if mismatch:
                    found.append(mismatch)
            rec.cases(1)
            for check, expected, observed in found:
                rec.mismatch(check, _script_case(index, script, i), expected, observed)


def _stack_oracles(cfg: GenConfig, rec: SuiteRecorder) -> None:
    for s in stack_instances(cfg):
        items = st.to_list(s)
        for k in range(MULTIPOP_MAX_COUNT + 1):
            popped, rest = st.multipop(k, s)
            rec.exact("multipop=take/drop", (items[:k], items[k:]), (popped, st.to_list(rest)),
                      lambda: f"multipop({k}, {s!r})")

        pushed = st.push("x", s)
        rec.holds(
            "push shares its tail",
            isinstance(pushed, st.Elem) and pushed.tail is s and st.to_list(s) == items,
            lambda: f"push('x', {s!r})",
        )
        rec.exact("height(push) = height + 1", len(items) + 1, st.height(pushed),
                  lambda: f"push('x', {s!r})")


def _heap_oracles(cfg: GenConfig, rec: SuiteRecorder) -> None:
    for name, order in heap_orders(cfg).items():
        model = new_model(StructureKind.HEAP)
        forests = heap_prefix_forests(tuple(order))
        for i, x in enumerate(order):
            model.apply(ScriptOp("insert", x))
            rec.cases(1)
            for check, expected, observed in model.compare(forests[i + 1], None):
                rec.mismatch(check, f"{name} order, insert #{i} ({x!r})", expected, observed)


def _seq_oracles(cfg: GenConfig, rec: SuiteRecorder) -> None:
    for q in seq_pool(cfg):
        items = ft.seq_to_list(q)
        n = fresh_label(q)
        rec.exact("cons=prepend", [n, *items], ft.seq_to_list(ft.cons(n, q)),
                  lambda: f"cons({n}, {q!r})")
        rec.exact("snoc=append", [*items, n], ft.seq_to_list(ft.snoc(q, n)),
                  lambda: f"snoc({q!r}, {n})")

    for q1, as_, q2 in glue_cases(cfg):
        glued = ft.glue(q1, as_, q2)
        expected = ft.seq_to_list(q1) + list(as_) + ft.seq_to_list(q2)
        rec.exact("glue=concat", expected, ft.seq_to_list(glued),
                  lambda: f"glue({q1!r}, {as_!r}, {q2!r})")
        validation = ft.validate_seq(glued)
        rec.holds("validate_seq(glue)", validation.valid,
                  lambda: f"glue({q1!r}, {as_!r}, {q2!r}): {validation.violations}")


_ORACLE_CHECKS = {
    StructureKind.STACK: _stack_oracles,
    StructureKind.HEAP: _heap_oracles,
    StructureKind.FINGERTREE: _seq_oracles,
}


def oracle_check(kind: StructureKind, cfg: GenConfig) -> VerifyReport:
    """Compare each structure against its naive model after every operation."""
    cfg = cfg.for_structure(kind)
    rec = SuiteRecorder(f"oracles:{kind}", kind, cfg)
    _ORACLE_CHECKS[kind](cfg, rec)
    _replay_against_model(kind, cfg, rec)
    return rec.finish()


# Timing suite


def _stack_timing(cfg: GenConfig, rec: SuiteRecorder) -> None:
    for s in stack_instances(cfg):
        rec.exact("pushT", st.pushT(0, s), measure(st.push, 0, s)[1], lambda: f"push(0, {s!r})")
        for k in range(MULTIPOP_MAX_COUNT + 1):
            rec.exact("multipopT", st.multipopT(k, s), measure(st.multipop, k, s)[1],
                      lambda: f"multipop({k}, {s!r})")


def _heap_timing(cfg: GenConfig, rec: SuiteRecorder) -> None:
    for name, order in heap_orders(cfg).items():
        forests = heap_prefix_forests(tuple(order))
        for i, x in enumerate(order):
            for t, suffix, position in carry_chain(bh.Tree(x), forests[i]):
                rec.exact("insertT", bh.insertT(t, suffix), measure(bh.insert_tree, t, suffix)[1],
                          lambda: f"insert_tree at position {position} ({name} order, #{i})")


def _seq_timing(cfg: GenConfig, rec: SuiteRecorder) -> None:
    for q in seq_pool(cfg):
        n = fresh_label(q)
        rec.exact("consT", ft.consT(n, q), measure(ft.cons, n, q)[1], lambda: f"cons({n}, {q!r})")
        rec.exact("snocT", ft.snocT(q, n), measure(ft.snoc, q, n)[1], lambda: f"snoc({q!r}, {n})")
        for k in range(4):
            as_ = list(range(n, n + k))
            rec.exact("foldrT", ft.foldrT(ft.cons, ft.consT, q, as_),
                      measure(ft.foldr, ft.cons, q, as_)[1], lambda: f"foldr cons {q!r} {as_!r}")
            rec.exact("foldlT", ft.foldlT(ft.snoc, ft.snocT, q, as_),
                      measure(ft.foldl, ft.snoc, q, as_)[1], lambda: f"foldl snoc {q!r} {as_!r}")

    for q1, as_, q2 in glue_cases(cfg):
        rec.exact("glueT", ft.glueT(q1, as_, q2), measure(ft.glue, q1, as_, q2)[1],
                  lambda: f"glue({q1!r}, {as_!r}, {q2!r})")


_TIMING_CHECKS = {
    StructureKind.STACK: _stack_timing,
    StructureKind.HEAP: _heap_timing,
    StructureKind.FINGERTREE: _seq_timing,
}


def timing_crosscheck(kind: StructureKind, cfg: GenConfig) -> VerifyReport:
    """Check that instrumented unit counters equal the timing mirrors, exactly."""
    cfg = cfg.for_structure(kind)
    rec = SuiteRecorder(f"timing:{kind}", kind, cfg)
    _TIMING_CHECKS[kind](cfg, rec)
    for index, script in enumerate(random_scripts(cfg)):
        run = run_script(kind, script)
        for i, step in enumerate(run.steps):
            rec.exact(f"{step.op.op} meter", step.record.actual_cost, step.metered,
                      lambda: _script_case(index, script, i))
    return rec.finish()


# Contract suite


def _raises(exc: type, fn: Callable[..., Any], *args: Any) -> bool:
    try:
        fn(*args)
    except exc:
        return True
    return False


def _tuple_lists(max_len: int) -> Iterable[List[ft.Node]]:
    for length in range(max_len + 1):
        for arities in itertools.product((2, 3), repeat=length):
            label = iter(range(3 * length))
            yield [
                ft.Pair(next(label), next(label))
                if arity == 2
                else ft.Triple(next(label), next(label), next(label))
                for arity in arities
            ]


def run_contract_suite(cfg: GenConfig) -> VerifyReport:
    """Length refinements, logarithm facts and the list length law."""
    cfg = cfg.for_structure(StructureKind.FINGERTREE)
    rec = SuiteRecorder("contracts:fingertree", StructureKind.FINGERTREE, cfg)
    rng = make_rng(cfg.seed, stream=4)

    for n, expected in TO_TUPLES_LENGTHS.items():
        xs = list(range(n))
        out = ft.to_tuples_prime(xs)
        rec.exact("to_tuples_prime length", expected, len(out), lambda: f"{n} elements")
        rec.exact("to_tuples_prime flattens back", xs, ft.tuples_to_list(out),
                  lambda: f"{n} elements")
        if n >= 2:
            rec.holds("to_tuples yields 1..3 tuples", 1 <= len(ft.to_tuples(xs)) <= 3,
                      lambda: f"{n} elements")
    for n in (1, 10, 11):
        rec.holds("to_tuples_prime rejects", _raises(LengthContract, ft.to_tuples_prime,
                                                     list(range(n))), lambda: f"{n} elements")
    for n in (0, 1, 10):
        rec.holds("to_tuples rejects", _raises(LengthContract, ft.to_tuples, list(range(n))),
                  lambda: f"{n} elements")
    rec.holds("glue rejects 4 loose items",
              _raises(LengthContract, ft.glue, ft.NIL, [0, 1, 2, 3], ft.NIL), lambda: "glue")
    rec.holds("glueT rejects 4 loose items",
              _raises(LengthContract, ft.glueT, ft.NIL, [0, 1, 2, 3], ft.NIL), lambda: "glueT")

    for tuples in _tuple_lists(4):
        flat = ft.tuples_to_list(tuples)
        rec.holds("2|x| ≤ |tuples_to_list x| ≤ 3|x|",
                  2 * len(tuples) <= len(flat) <= 3 * len(tuples), lambda: repr(tuples))

    values = np.array([ft.log2(n) for n in range(1, LOG2_MONO_LIMIT + 1)])
    floors = np.array([n.bit_length() - 1 for n in range(1, LOG2_MONO_LIMIT + 1)])
    for n in np.flatnonzero(values != floors):
        rec.mismatch("log2 = floor(log₂ n)", f"n={n + 1}", str(floors[n]), str(values[n]))
    rec.cases(LOG2_MONO_LIMIT)

    # every pair 1 <= x <= y <= limit at once
    ordered = np.triu(np.ones((LOG2_MONO_LIMIT, LOG2_MONO_LIMIT), dtype=bool))
    broken = ordered & (values[:, None] > values[None, :])
    for x, y in np.argwhere(broken)[:100]:
        rec.mismatch("log2Mono", f"x={x + 1}, y={y + 1}", "log2 x ≤ log2 y",
                     f"{values[x]} > {values[y]}")
    rec.cases(int(ordered.sum()))
    for x, y in rng.integers(1, LOG2_MONO_LIMIT + 1, size=(200, 2)):
        lo, hi = sorted((int(x), int(y)))
        rec.holds("log2_mono", ft.log2_mono(lo, hi), lambda: f"x={lo}, y={hi}")
    for n in (0, -1):
        rec.holds("log2 rejects", _raises(ContractError, ft.log2, n), lambda: f"n={n}")

    samples = list(range(-100, 101)) + [int(x) for x in rng.integers(-(2**62), 2**62, size=1000)]
    for x in samples:
        rec.holds("divCancel", ft.div_cancel(x), lambda: f"x={x}")

    for _ in range(200):
        xs = [int(v) for v in rng.integers(0, 100, size=int(rng.integers(0, 20)))]
        ys = [int(v) for v in rng.integers(0, 100, size=int(rng.integers(0, 20)))]
        rec.holds("lengthP", ft.length_law(xs, ys), lambda: f"{xs!r} ++ {ys!r}")

    return rec.finish()


# Running several suites


SuiteTask = Tuple[Callable[..., VerifyReport], Tuple[Any, ...]]


def plan_suites(kinds: Sequence[StructureKind], cfg: GenConfig) -> List[SuiteTask]:
    tasks: List[SuiteTask] = []
    for kind in kinds:
        tasks.append((run_bound_suite, (kind, cfg)))
        tasks.append((oracle_check, (kind, cfg)))
        tasks.append((timing_crosscheck, (kind, cfg)))
        if kind is StructureKind.FINGERTREE:
            tasks.append((run_contract_suite, (cfg,)))
    return tasks


def run_suites(
    kinds: Sequence[StructureKind], cfg: GenConfig, max_workers: int = 1
) -> RunSummary:
    """Run every suite for ``kinds`` in a thread pool; reports keep the planned order."""
    tasks = plan_suites(kinds, cfg)
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        reports = list(pool.map(lambda task: task[0](*task[1]), tasks))
    return RunSummary(seed=cfg.seed, reports=reports)
