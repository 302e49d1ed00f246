"""Command-line interface.

Exit codes: 0 success, 1 validation failure, 2 rule-language lex/parse
failure, 3 I/O failure, 4 usage error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import tempfile
from pathlib import Path

from pmsmetrics import metrics, render
from pmsmetrics.errors import (
    DocumentSyntaxError,
    MetricsError,
    RangeError,
    RuleSyntaxError,
    SchemaError,
    SourceReadError,
    TooFewCandidatesError,
    TooFewPanelsError,
)
from pmsmetrics.model import config_from_json, decode_json, dump_json, parse_assessment, validate_assessment
from pmsmetrics.report import (
    compare_candidates,
    comparison_from_json,
    comparison_to_json,
    evaluate_pms,
    load_report,
    report_from_json,
    report_to_json,
)
from pmsmetrics.rules import analyze

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_IO = 3
EXIT_USAGE = 4

log = logging.getLogger("pmsmetrics")


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def write_atomic(path: str | Path, data: bytes) -> None:
    """Write ``data`` to ``path`` via a temporary file and rename.

    On any failure the temporary file is removed and ``path`` is untouched.
    """
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def _emit(data: bytes, out: str | None) -> None:
    if out:
        write_atomic(out, data)
        log.info("wrote %s", out)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _read(path: str) -> bytes:
    return Path(path).read_bytes()


# -- subcommands -------------------------------------------------------------

def cmd_validate(args) -> int:
    doc = parse_assessment(_read(args.assessment))
    violations = validate_assessment(doc)
    if violations:
        for v in violations:
            print(f"{args.assessment}: {v}", file=sys.stderr)
        return EXIT_INVALID
    if not args.quiet:
        print(f"{args.assessment}: valid ({len(doc.modules)} modules)")
    return EXIT_OK


def cmd_analyze(args) -> int:
    config = None
    if args.config:
        config = config_from_json(decode_json(_read(args.config)))
    source = _read(args.module).decode("utf-8")
    result = analyze(source, config)
    mc = metrics.module_complexity(result.inputs, Path(args.module).stem)
    inputs, io = result.inputs, result.io
    if args.json:
        payload = {
            "module": mc.module,
            "readability": inputs.readability,
            "mccabe": inputs.mccabe,
            "fan_in": inputs.fan_in,
            "fan_out": inputs.fan_out,
            "c": mc.c,
            "zero_io_warning": mc.zero_io_warning,
            "inputs": sorted(io.inputs),
            "outputs": sorted(io.outputs),
            "internals": sorted(io.internals),
            "excluded": sorted(io.excluded),
        }
        _emit(dump_json(payload), None)
    else:
        lines = [
            f"module:      {mc.module}",
            f"readability: {inputs.readability:g}",
            f"mccabe:      {inputs.mccabe}",
            f"fan_in:      {inputs.fan_in}  {', '.join(sorted(io.inputs))}",
            f"fan_out:     {inputs.fan_out}  {', '.join(sorted(io.outputs))}",
            f"internal:    {', '.join(sorted(io.internals))}",
            f"excluded:    {', '.join(sorted(io.excluded))}",
            f"c:           {mc.c:g}",
        ]
        _emit(("\n".join(lines) + "\n").encode("utf-8"), None)
    if mc.zero_io_warning:
        log.info("zero fan-in or fan-out; complexity is 0")
    return EXIT_OK


def cmd_evaluate(args) -> int:
    doc = parse_assessment(_read(args.assessment))
    violations = validate_assessment(doc)
    if violations:
        for v in violations:
            print(f"{args.assessment}: {v}", file=sys.stderr)
        return EXIT_INVALID
    report = evaluate_pms(doc, Path(args.assessment).parent)
    _emit(dump_json(report_to_json(report)), args.out)
    return EXIT_OK


def cmd_compare(args) -> int:
    if len(args.reports) < 2:
        raise UsageError("compare needs at least two reports")
    reports = [load_report(_read(p)) for p in args.reports]
    _emit(dump_json(comparison_to_json(compare_candidates(reports))), args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    data = decode_json(_read(args.input))
    try:
        spec = render.RenderSpec(
            width=args.width, height=args.height,
            normalization=render.ComplexityNormalization(args.ref_complexity) if args.ref_complexity is not None else None,
        )
    except RangeError as exc:
        raise UsageError(str(exc)) from exc
    if isinstance(data, dict) and "candidates" in data:
        comparison = comparison_from_json(data)
        if args.figure != "panels":
            raise UsageError(f"a comparison renders only with --figure panels, not {args.figure}")
        items = list(zip(comparison.labels, comparison.candidates))
        svg = render.render_panels(items, spec, args.panel_figure)
    else:
        report = report_from_json(data)
        if args.figure == "modifiability":
            svg = render.render_modifiability(report, spec)
        elif args.figure == "surface":
            svg = render.render_surface(report, spec)
        elif args.figure == "autonomy":
            svg = render.render_autonomy(report.autonomy, spec, f"{report.pms.name} {report.pms.version}")
        else:
            raise UsageError("--figure panels needs a comparison file (see the compare command)")
    _emit(svg.encode("utf-8"), args.out)
    return EXIT_OK


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    noise = common.add_mutually_exclusive_group()
    # SUPPRESS keeps a subcommand's defaults from overwriting flags given before it.
    noise.add_argument("--verbose", "-v", action="store_true", default=argparse.SUPPRESS,
                       help="report progress on stderr")
    noise.add_argument("--quiet", "-q", action="store_true", default=argparse.SUPPRESS, help="print only errors")

    parser = _ArgumentParser(prog="pmsmetrics", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_ArgumentParser)
    sub.required = True

    p = sub.add_parser("validate", parents=[common], help="check an assessment document")
    p.add_argument("assessment")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", parents=[common], help="extract complexity inputs from a rule module")
    p.add_argument("module")
    p.add_argument("--config", help="JSON file holding analyzer settings")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("evaluate", parents=[common], help="compute a metrics report")
    p.add_argument("assessment")
    p.add_argument("--out")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("compare", parents=[common], help="rank several metrics reports")
    p.add_argument("reports", nargs="+")
    p.add_argument("--out")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("render", parents=[common], help="draw a figure as SVG")
    p.add_argument("input", help="report or comparison JSON")
    p.add_argument("--figure", required=True, choices=("modifiability", "surface", "autonomy", "panels"))
    p.add_argument("--panel-figure", default="autonomy", choices=render.FIGURES,
                   help="figure drawn in each panel (default: autonomy)")
    p.add_argument("--ref-complexity", type=float, help="complexity that maps to full axis length")
    p.add_argument("--width", type=float, default=600)
    p.add_argument("--height", type=float, default=600)
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    args.verbose = getattr(args, "verbose", False)
    args.quiet = getattr(args, "quiet", False)
    level = logging.INFO if args.verbose else logging.ERROR if args.quiet else logging.WARNING
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(level)
    log.propagate = False

    try:
        return args.func(args)
    except (UsageError, TooFewCandidatesError, TooFewPanelsError) as exc:
        print(f"pmsmetrics: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RuleSyntaxError as exc:
        print(f"pmsmetrics: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DocumentSyntaxError, SchemaError, RangeError) as exc:
        print(f"pmsmetrics: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (SourceReadError, OSError, UnicodeDecodeError) as exc:
        print(f"pmsmetrics: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except MetricsError as exc:
        print(f"pmsmetrics: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
