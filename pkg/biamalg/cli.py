"""
Command-line front end.

    biamalg run demo/scripts/gaussian_example.bia --json report.json
    biamalg check --ring "Z/2[x]/(x^2)" --property gaussian
    biamalg harness --max-ring 16 --max-instance 128 --seed 0 --json suite.json
    biamalg export-spec demo/scripts/duplication_z6.bia --dot spec.dot
    biamalg search gauss-sufficient --drop 3

Exit codes: 0 when every check passes, 1 when a check fails, 2 on input or
validation errors.
"""
import argparse
import json
import logging
import os
import sys
from typing import List, Optional

from . import __version__
from .config import configure
from .core.bowtie import BiAmalgInstance
from .dsl.ast import BiamalgDecl, RingDecl
from .dsl.dot import export_spec_dot
from .dsl.interpreter import (
    EXIT_CHECK_FAILED,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    ExecutionOptions,
    ExecutionResult,
    Interpreter,
    run_source,
)
from .dsl.parser import parse_dsl
from .errors import BiamalgError, DSLError
from .harness.catalog import Caps, generate_catalog
from .harness.search import counterexample_search
from .harness.suite import parse_ablation, run_suite

logger = logging.getLogger(__name__)

RING_PROPERTIES = ("gaussian", "prufer", "local", "spec")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as in_file:
            return in_file.read()
    except OSError as exc:
        raise BiamalgError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except UnicodeDecodeError as exc:
        raise BiamalgError(f"{path} is not UTF-8: {exc.reason}") from exc


def _write_json(path: str, data) -> None:
    text = json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as out_file:
            out_file.write(text)
    except OSError as exc:
        raise BiamalgError(f"cannot write {path}: {exc.strerror or exc}") from exc
    logger.info(f"Wrote report to {path}")


def _emit(result: ExecutionResult) -> None:
    for line in result.lines:
        print(line)
    for message in result.diagnostics:
        print(message, file=sys.stderr)


def _options(script_path: str) -> ExecutionOptions:
    return ExecutionOptions(base_dir=os.path.dirname(os.path.abspath(script_path)), source_name=script_path)


# --- subcommands ---

def cmd_run(args: argparse.Namespace) -> int:
    result = run_source(_read(args.script), _options(args.script))
    _emit(result)
    if args.json:
        _write_json(args.json, result.report(args.script))
    return result.exit_code


def cmd_check(args: argparse.Namespace) -> int:
    source = f"ring S = {args.ring};\ncheck S {args.property};\n"
    result = run_source(source, ExecutionOptions(source_name="--ring"))
    _emit(result)
    if args.json:
        _write_json(args.json, result.report("--ring"))
    return result.exit_code


def cmd_export_spec(args: argparse.Namespace) -> int:
    script = parse_dsl(_read(args.script))
    subjects = [s.name for s in script if isinstance(s, (RingDecl, BiamalgDecl))]
    instances = [s.name for s in script if isinstance(s, BiamalgDecl)]
    name = args.name or (instances or subjects or [None])[-1]
    if name is None:
        raise BiamalgError(f"{args.script} declares no ring or bi-amalgamation")
    if name not in subjects:
        raise BiamalgError(f"{args.script} does not declare {name!r}")

    interpreter = Interpreter(_options(args.script))
    result = interpreter.run(script)
    _emit(result)
    if result.exit_code == EXIT_INPUT_ERROR:
        return result.exit_code
    export_spec_dot(interpreter.env[name], args.dot)
    kind = "bi-amalgamation" if isinstance(interpreter.env[name], BiAmalgInstance) else "ring"
    print(f"spec {name} ({kind}): written to {args.dot}")
    return result.exit_code


def _caps(args: argparse.Namespace) -> Caps:
    return Caps(max_ring=args.max_ring, max_instance=args.max_instance, max_instances=args.max_instances)


def cmd_harness(args: argparse.Namespace) -> int:
    if args.workers:
        configure(workers=args.workers)
    ablation = parse_ablation(args.ablate or ())
    catalog = generate_catalog(_caps(args), seed=args.seed)
    logger.info(f"Catalog: {len(catalog.rings)} rings, {len(catalog)} instances")
    report = run_suite(catalog, selection=args.theorem or None, ablation=ablation, workers=args.workers)
    print(report.summary())
    for theorem_id, failure in report.counterexamples:
        print(f"\n{theorem_id} fails on {failure.subject} ({failure.case}); replay:")
        print(failure.replay.rstrip() or "  (no script form)")
    if args.json:
        _write_json(args.json, report.to_dict(include_timing=not args.no_timing))
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def cmd_search(args: argparse.Namespace) -> int:
    result = counterexample_search(args.theorem, args.drop or (), caps=_caps(args), seed=args.seed)
    print(result.describe())
    if result.found and result.failure.replay:
        print(result.failure.replay.rstrip())
    if args.json:
        _write_json(args.json, result.to_dict())
    return EXIT_OK if result.found else EXIT_CHECK_FAILED


# --- argument parsing ---

def _add_caps(parser: argparse.ArgumentParser) -> None:
    defaults = Caps()
    parser.add_argument("--max-ring", type=int, default=defaults.max_ring, help="largest |A|, |B|, |C| (default: %(default)s)")
    parser.add_argument("--max-instance", type=int, default=defaults.max_instance, help="largest |R| (default: %(default)s)")
    parser.add_argument("--max-instances", type=int, default=defaults.max_instances,
                        help="instances kept after seeded sampling (default: %(default)s)")
    parser.add_argument("--seed", type=int, default=0, help="sampling seed (default: %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="biamalg", description="Bi-amalgamated algebras of finite commutative rings.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for progress, -vv for debug output")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    s = subparsers.add_parser("run", help="execute a DSL script")
    s.add_argument("script")
    s.add_argument("--json", metavar="PATH", help="write the JSON report ('-' for stdout)")
    s.set_defaults(func=cmd_run)

    s = subparsers.add_parser("check", help="check one property of a ring expression")
    s.add_argument("--ring", required=True, metavar="REXPR", help='ring expression, e.g. "Z/4 * GF(4)"')
    s.add_argument("--property", required=True, choices=RING_PROPERTIES)
    s.add_argument("--json", metavar="PATH")
    s.set_defaults(func=cmd_check)

    s = subparsers.add_parser("harness", help="run the theorem suite over the generated catalog")
    _add_caps(s)
    s.add_argument("--json", metavar="PATH", help="write the suite report ('-' for stdout)")
    s.add_argument("--ablate", action="append", metavar="THM:CLAUSE", help="drop a hypothesis clause (repeatable)")
    s.add_argument("--theorem", action="append", metavar="ID", help="run only these theorems (repeatable)")
    s.add_argument("--workers", type=int, help="thread pool size (default: BIAMALG_WORKERS or 1)")
    s.add_argument("--no-timing", action="store_true", help="omit timings so reports compare byte for byte")
    s.set_defaults(func=cmd_harness)

    s = subparsers.add_parser("export-spec", help="write the prime spectrum of a script's subject as DOT")
    s.add_argument("script")
    s.add_argument("--dot", required=True, metavar="PATH")
    s.add_argument("--name", help="subject to export (default: last bi-amalgamation, else last ring)")
    s.set_defaults(func=cmd_export_spec)

    s = subparsers.add_parser("search", help="smallest catalog counterexample once clauses are dropped")
    s.add_argument("theorem")
    s.add_argument("--drop", action="append", metavar="CLAUSE", help="clause to treat as absent (repeatable)")
    _add_caps(s)
    s.add_argument("--json", metavar="PATH")
    s.set_defaults(func=cmd_search)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT_ERROR if exc.code else EXIT_OK

    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        return args.func(args)
    except DSLError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT_ERROR
    except BiamalgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
