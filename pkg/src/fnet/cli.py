"""Command-line front end: check, export-dot, report, fmt.

Exit codes: 0 when everything checked is consistent, 1 when findings with
error severity exist (or fmt --check found drift), 2 on parse or usage
errors. All output is deterministic for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analysis, modes
from .consistency import check_all
from .diagnostics import ERROR
from .dot import UnknownTarget, export_dot
from .model import Model
from .parser import ParseError, ParseFailure, parse_file, parse_model
from .printer import print_document


def _read_sources(paths: list[str]) -> list[tuple[str, str]] | None:
    sources = []
    for path in paths:
        try:
            sources.append((path, Path(path).read_text(encoding="utf-8")))
        except OSError as exc:
            print(f"error: cannot read '{path}': {exc.strerror}",
                  file=sys.stderr)
            return None
    return sources


def _parse_error_dicts(errors: list[ParseError]) -> list[dict]:
    return [
        {
            "code": "PARSE",
            "severity": ERROR,
            "file": err.span.file,
            "line": err.span.line,
            "column": err.span.column,
            "subject": err.found,
            "message": err.message,
        }
        for err in errors
    ]


def _print_parse_errors(errors: list[ParseError], as_json: bool) -> None:
    if as_json:
        print(json.dumps(_parse_error_dicts(errors), indent=2))
    else:
        for err in errors:
            print(f"PARSE error {err.span} {err.found}: {err.message}")


def _load_model(paths: list[str], as_json: bool) -> Model | None:
    sources = _read_sources(paths)
    if sources is None:
        if as_json:
            print(json.dumps([]))
        return None
    try:
        return parse_model(sources)
    except ParseFailure as failure:
        _print_parse_errors(failure.errors, as_json)
        return None


def cmd_check(args: argparse.Namespace) -> int:
    model = _load_model(args.paths, args.json)
    if model is None:
        return 2
    reports = check_all(model)
    net_report = reports[model.net.name]
    for flag, namespace in ((args.view, model.views),
                            (args.machine, model.machines)):
        if flag is None:
            continue
        if flag not in namespace:
            print(f"error: unknown target '{flag}'", file=sys.stderr)
            return 2
        reports = {k: v for k, v in reports.items() if k == flag}
        if net_report.verdict == "inconsistent":
            # a broken net suppresses per-view checks; surface it
            reports[model.net.name] = net_report

    findings = [d for report in reports.values() for d in report.diagnostics]
    if args.json:
        print(json.dumps([d.to_json_dict() for d in findings], indent=2))
    else:
        for diagnostic in findings:
            print(diagnostic.format_line())
        if not any(d.severity == ERROR for d in findings):
            print("all targets consistent")
    has_errors = any(
        report.verdict == "inconsistent" for report in reports.values()
    )
    return 1 if has_errors else 0


def cmd_export_dot(args: argparse.Namespace) -> int:
    model = _load_model(args.paths, as_json=False)
    if model is None:
        return 2
    try:
        text = export_dot(model, args.target)
    except UnknownTarget as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out is None:
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
    return 0


def _print_table(rows: list[tuple[str, str]]) -> None:
    width = max((len(key) for key, _ in rows), default=0)
    for key, value in rows:
        print(f"{key.ljust(width)}  {value}")


def cmd_report(args: argparse.Namespace) -> int:
    selected = [
        flag
        for flag, value in (
            ("--variants", args.variants),
            ("--trace", args.trace),
            ("--mode-diff", args.mode_diff),
        )
        if value is not None
    ]
    if len(selected) != 1:
        print(
            "error: give exactly one of --variants, --trace, --mode-diff",
            file=sys.stderr,
        )
        return 2
    model = _load_model(args.paths, args.json)
    if model is None:
        return 2

    if args.variants is not None:
        try:
            report = analysis.variant_report(args.variants, model)
        except (analysis.UnknownGroup,
                analysis.InconsistentVariantView) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        if args.json:
            print(json.dumps(report.to_json_dict(), indent=2))
        else:
            print(f"variant group {report.group}")
            rows = []
            for name, sets in report.per_variant.items():
                rows.append((f"variant {name} blocks",
                             ", ".join(sets["blocks"]) or "-"))
                rows.append((f"variant {name} signals",
                             ", ".join(sets["signals"]) or "-"))
            rows.append(("common", ", ".join(report.common) or "-"))
            for path, variants in report.variant_specific.items():
                rows.append((f"only in {', '.join(variants)}", path))
            rows.append(("uncovered", ", ".join(report.uncovered) or "-"))
            _print_table(rows)
        return 0

    if args.trace is not None:
        try:
            report = analysis.trace(args.trace, model)
        except analysis.UnknownSubject as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        if args.json:
            print(json.dumps(report.to_json_dict(), indent=2))
        else:
            print(f"trace of {report.kind} {report.subject}")
            _print_table(
                [
                    (
                        "views",
                        ", ".join(
                            f"{name} ({kind})"
                            for name, kind in report.referencing_views
                        )
                        or "-",
                    ),
                    (
                        "machines",
                        ", ".join(report.referencing_machines) or "-",
                    ),
                ]
            )
        return 0

    machine_name, mode_a, mode_b = args.mode_diff
    machine = model.machines.get(machine_name)
    if machine is None:
        print(f"error: unknown machine '{machine_name}'", file=sys.stderr)
        return 2
    try:
        diff = modes.mode_diff(machine, mode_a, mode_b, model)
    except modes.UnknownMode as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(diff.to_json_dict(), indent=2))
    else:
        print(f"mode diff {machine_name}: {mode_a} vs {mode_b}")
        _print_table(
            [
                (f"only in {mode_a} blocks",
                 ", ".join(diff.only_in_a.blocks) or "-"),
                (f"only in {mode_a} signals",
                 ", ".join(diff.only_in_a.signals) or "-"),
                (f"only in {mode_b} blocks",
                 ", ".join(diff.only_in_b.blocks) or "-"),
                (f"only in {mode_b} signals",
                 ", ".join(diff.only_in_b.signals) or "-"),
            ]
        )
    return 0


def cmd_fmt(args: argparse.Namespace) -> int:
    sources = _read_sources(args.paths)
    if sources is None:
        return 2
    drift = False
    for path, text in sources:
        docs, errors = parse_file(path, text)
        if errors:
            _print_parse_errors(errors, as_json=False)
            return 2
        canonical = "\n".join(print_document(doc) for doc in docs)
        if canonical == text:
            continue
        drift = True
        if args.check:
            print(f"would reformat {path}")
        else:
            Path(path).write_text(canonical, encoding="utf-8")
            print(f"reformatted {path}")
    return 1 if (drift and args.check) else 0


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fnet",
        description="Function-net modelling toolkit: parse, check, "
        "analyse and export .fnet models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="check well-formedness and "
                             "view consistency")
    p_check.add_argument("paths", nargs="+")
    p_check.add_argument("--json", action="store_true")
    p_check.add_argument("--view", metavar="NAME")
    p_check.add_argument("--machine", metavar="NAME")
    p_check.set_defaults(func=cmd_check)

    p_dot = sub.add_parser("export-dot", help="export a net or view as "
                           "Graphviz DOT")
    p_dot.add_argument("paths", nargs="+")
    p_dot.add_argument("--target", required=True,
                       help="net name or view name")
    p_dot.add_argument("--out", metavar="FILE")
    p_dot.set_defaults(func=cmd_export_dot)

    p_report = sub.add_parser("report", help="variant coverage, traces, "
                              "and mode diffs")
    p_report.add_argument("paths", nargs="+")
    p_report.add_argument("--variants", metavar="GROUP")
    p_report.add_argument("--trace", metavar="SUBJECT")
    p_report.add_argument("--mode-diff", nargs=3,
                          metavar=("MACHINE", "A", "B"))
    p_report.add_argument("--json", action="store_true")
    p_report.set_defaults(func=cmd_report)

    p_fmt = sub.add_parser("fmt", help="rewrite files in canonical form")
    p_fmt.add_argument("paths", nargs="+")
    p_fmt.add_argument("--check", action="store_true")
    p_fmt.set_defaults(func=cmd_fmt)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalise other codes
        return 2 if exc.code not in (0,) else 0
    return args.func(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
