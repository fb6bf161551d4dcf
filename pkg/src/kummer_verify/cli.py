"""Command line entry point: ``kummer-verify verify|show-config|demo``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .curves import build_standard_configuration
from .manifest import (
    DEFAULT_DEPTH,
    EXIT_ERROR,
    EXIT_OK,
    ManifestError,
    golden_manifest_names,
    golden_manifest_text,
    parse_manifest,
    run_manifest,
)


def _print_report(report, machine: bool) -> None:
    print(report.format_machine() if machine else report.format_text())


def cmd_verify(args) -> int:
    try:
        text = Path(args.manifest).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    try:
        manifest = parse_manifest(text)
    except ManifestError as exc:
        print(f"{args.manifest}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    report = run_manifest(manifest, depth=args.depth)
    _print_report(report, args.machine)
    return report.exit_status


def cmd_show_config(args) -> int:
    print(build_standard_configuration().format_gram())
    return EXIT_OK


def cmd_demo(args) -> int:
    status = EXIT_OK
    for name in golden_manifest_names():
        report = run_manifest(parse_manifest(golden_manifest_text(name)), depth=args.depth)
        if not args.machine:
            print(f"== {name}")
        _print_report(report, args.machine)
        status = max(status, report.exit_status)
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kummer-verify", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--machine", action="store_true", help="tab-separated output: status, claim, computed, expected")
    common.add_argument("--depth", type=int, default=DEFAULT_DEPTH, help="depth of non-finite-generation certificates")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check every claim in a manifest")
    p.add_argument("manifest")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("show-config", help="print the 24x24 intersection matrix")
    p.set_defaults(func=cmd_show_config)

    p = sub.add_parser("demo", parents=[common], help="run the built-in golden manifests")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "depth", 1) < 1:
        print("error: --depth must be positive", file=sys.stderr)
        return EXIT_ERROR
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
