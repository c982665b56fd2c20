"""Command-line interface: run verification suites and print per-step cost ledgers."""

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .config import AmortizedBoundsConfig, load_config
from .core.cost import bound_check, dump_trace, load_trace, telescope_check
from .harness.generators import GenConfig, make_rng, random_script
from .harness.report import RunSummary, StructureKind, render_text
from .harness.suites import run_suites
from .harness.traces import (
    Ledger,
    ScriptRun,
    build_ledger,
    parse_script,
    render_ledger,
    run_script,
)
from .utils.cache import enumeration_cache
from .utils.errors import (
    ConfigurationError,
    MalformedScript,
    MalformedTrace,
    format_script_errors,
)
from .utils.logging_config import get_logger, log_command, setup_logging

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_USAGE = 2

# rng stream for scripts generated by the trace command
TRACE_SCRIPT_STREAM = 5

STRUCTURE_CHOICES = [kind.value for kind in StructureKind] + ["all"]

logger = get_logger("cli")


def _positive_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid int value: {value!r}")
    if number < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {number}")
    return number


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--structure",
        "-s",
        choices=STRUCTURE_CHOICES,
        default="all",
        help="Data structure to check (default: all)",
    )
    parser.add_argument("--max-size", type=int, help="Largest structure to enumerate")
    parser.add_argument("--trials", type=int, help="Number of random traces per structure")
    parser.add_argument("--trace-len", type=int, help="Operations per random trace")
    parser.add_argument("--seed", type=int, help="PRNG seed (PCG64)")
    parser.add_argument("--format", choices=["json", "text"], default="text", help="Output format")
    parser.add_argument("--output", "-o", type=str, help="Write output to this file")
    parser.add_argument("--config", "-c", type=str, help="Path to configuration file")
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Log level",
    )
    parser.add_argument("--workers", type=_positive_int, help="Suites run concurrently")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="amortized-bounds",
        description="Check amortized cost bounds of a stack, binomial heap and finger tree",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Every suite for every structure
  amortized-bounds verify

  # Finger-tree suites with a fixed seed, JSON report
  amortized-bounds verify --structure fingertree --max-size 64 --seed 7 --format json

  # Ledger for a hand-written script
  amortized-bounds trace --structure stack --script ops.txt

  # Re-check a saved trace
  amortized-bounds trace --replay trace.jsonl
""",
    )
    parser.add_argument("--version", action="version", version=__version__)
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="Run the verification suites")
    _add_common_arguments(verify)

    trace = commands.add_parser("trace", help="Print the per-step ledger of an operation script")
    _add_common_arguments(trace)
    source = trace.add_mutually_exclusive_group()
    source.add_argument("--script", type=str, help="Operation script file")
    source.add_argument("--replay", type=str, help="JSON-lines trace to re-check")
    trace.add_argument("--save-trace", type=str, help="Also write the trace as JSON lines")

    run_all = commands.add_parser("all", help="Verify every structure and print sample ledgers")
    _add_common_arguments(run_all)
    return parser


def _pick(flag: Optional[int], default: int) -> int:
    return default if flag is None else flag


def generator_config(args: argparse.Namespace, config: AmortizedBoundsConfig) -> GenConfig:
    """Merge command-line flags over the configured harness defaults."""
    harness = config.harness
    try:
        return GenConfig(
            structure=StructureKind.STACK,
            max_size=_pick(args.max_size, harness.max_size),
            num_traces=_pick(args.trials, harness.trials),
            trace_len=_pick(args.trace_len, harness.trace_len),
            seed=_pick(args.seed, harness.seed),
        )
    except ValueError as e:
        raise ConfigurationError(f"Invalid harness settings: {e}")


def selected_kinds(structure: str) -> List[StructureKind]:
    if structure == "all":
        return list(StructureKind)
    return [StructureKind(structure)]


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text)
        logger.info(f"Wrote {output}")
    else:
        sys.stdout.write(text)


def _read_input(path: Path, error: type[MalformedScript] | type[MalformedTrace]) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise error(f"{path} is not valid UTF-8 text: {e.reason} at byte {e.start}")


def _json(data: Any) -> str:
    return json.dumps(data, indent=2) + "\n"


def _ledger_failed(ledger: Ledger) -> bool:
    return not ledger.telescope_passed or ledger.bound_violations > 0 or not ledger.solvent


def _random_run(kind: StructureKind, cfg: GenConfig) -> ScriptRun:
    rng = make_rng(cfg.seed, stream=TRACE_SCRIPT_STREAM)
    return run_script(kind, random_script(kind, cfg.trace_len, rng))


def cmd_verify(args: argparse.Namespace, config: AmortizedBoundsConfig) -> int:
    """Run the selected suites and write the report."""
    cfg = generator_config(args, config)
    workers = _pick(args.workers, config.performance.max_workers)
    summary = run_suites(selected_kinds(args.structure), cfg, max_workers=workers)

    if args.format == "json":
        _emit(summary.model_dump_json(indent=2) + "\n", args.output)
    else:
        _emit(render_text(summary), args.output)
    return EXIT_OK if summary.passed else EXIT_FAILURES


def _replay(args: argparse.Namespace) -> int:
    path = Path(args.replay)
    trace = load_trace(_read_input(path, MalformedTrace), source=str(path))
    telescope = telescope_check(trace)
    violations = bound_check(trace)
    result: Dict[str, Any] = {
        "source": str(path),
        "steps": len(trace),
        "telescope_passed": telescope.passed,
        "actual_total": telescope.actual_total,
        "amortized_total": telescope.amortized_total,
        "residual": telescope.residual,
        "violations": [
            {"index": v.index, "op": v.step.op_label, "amortized": v.amortized,
             "bound": v.step.claimed_bound}
            for v in violations
        ],
    }
    if args.format == "json":
        _emit(_json(result), args.output)
    else:
        lines = [
            f"{result['source']}: {result['steps']} steps",
            f"total actual {telescope.actual_total}, total amortized {telescope.amortized_total}, "
            f"residual Φ {telescope.residual}",
            f"telescope {'ok' if telescope.passed else 'FAILED'}, "
            f"bound violations {len(violations)}",
        ]
        lines.extend(
            f"  step {v['index']} {v['op']}: amortized {v['amortized']} > bound {v['bound']}"
            for v in result["violations"]
        )
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if telescope.passed and not violations else EXIT_FAILURES


def cmd_trace(args: argparse.Namespace, config: AmortizedBoundsConfig) -> int:
    """Print the ledger of a scripted or seeded random operation sequence."""
    if args.replay:
        return _replay(args)

    cfg = generator_config(args, config)
    if args.script:
        if args.structure == "all":
            raise ConfigurationError("--script needs a single --structure")
        kind = StructureKind(args.structure)
        text = _read_input(Path(args.script), MalformedScript)
        run = run_script(kind, parse_script(text, kind))
        runs = [run]
    else:
        runs = [_random_run(kind, cfg) for kind in selected_kinds(args.structure)]

    if args.save_trace:
        if len(runs) != 1:
            raise ConfigurationError("--save-trace needs a single --structure")
        Path(args.save_trace).write_text(dump_trace(runs[0].trace))

    ledgers = [build_ledger(run) for run in runs]
    if args.format == "json":
        _emit(_json([ledger.model_dump(mode="json") for ledger in ledgers]), args.output)
    else:
        _emit("\n".join(render_ledger(ledger) for ledger in ledgers), args.output)
    return EXIT_FAILURES if any(_ledger_failed(ledger) for ledger in ledgers) else EXIT_OK


def cmd_all(args: argparse.Namespace, config: AmortizedBoundsConfig) -> int:
    """Verify every selected structure, then show one sample ledger for each."""
    cfg = generator_config(args, config)
    kinds = selected_kinds(args.structure)
    workers = _pick(args.workers, config.performance.max_workers)
    summary: RunSummary = run_suites(kinds, cfg, max_workers=workers)
    ledgers = [build_ledger(_random_run(kind, cfg)) for kind in kinds]

    if args.format == "json":
        payload = {
            "summary": summary.model_dump(mode="json"),
            "ledgers": [ledger.model_dump(mode="json") for ledger in ledgers],
        }
        _emit(_json(payload), args.output)
    else:
        text = render_text(summary) + "\n" + "\n".join(map(render_ledger, ledgers))
        _emit(text, args.output)

    failed = not summary.passed or any(_ledger_failed(ledger) for ledger in ledgers)
    return EXIT_FAILURES if failed else EXIT_OK


COMMANDS = {"verify": cmd_verify, "trace": cmd_trace, "all": cmd_all}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point; returns the process exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    start = time.perf_counter()
    try:
        config = load_config(args.config)
        if args.log_level:
            config.logging.level = args.log_level
        setup_logging(config.logging)
        enumeration_cache.resize(config.performance.cache_size)
        exit_code = COMMANDS[args.command](args, config)
    except ConfigurationError as e:
        print(f"error: {e.message}", file=sys.stderr)
        exit_code = EXIT_USAGE
    except MalformedScript as e:
        print(format_script_errors([e]), file=sys.stderr)
        exit_code = EXIT_FAILURES
    except MalformedTrace as e:
        print(f"error: {e.message}", file=sys.stderr)
        exit_code = EXIT_FAILURES
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        exit_code = EXIT_USAGE

    log_command(args.command, exit_code, time.perf_counter() - start)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
