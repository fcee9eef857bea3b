"""Command line entry point: ``kstab report|sweep|export-preset``.

Exit codes: 0 on a successful computation, 2 on schema or validation
errors, 3 when --assert-unstable is given and the verdict is not
NotKSemistable.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .presets import FAMILIES, PRESETS, BadParameters, preset_dict, rows_to_csv, sweep
from .scenario import ScenarioError, dumps, format_text, load_scenario, locate_line, parse_scenario, run

EXIT_OK, EXIT_INVALID, EXIT_NOT_UNSTABLE = 0, 2, 3


def _range(text: str) -> range:
    """'a:b' (inclusive) or a single integer."""
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            return range(int(lo), int(hi) + 1)
        v = int(text)
        return range(v, v + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A:B, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kstab", description="Exact K-instability certificates for index-2 weighted del Pezzo hypersurfaces.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("report", help="run a scenario file or a shipped preset")
    r.add_argument("scenario", nargs="?", help="scenario JSON file")
    r.add_argument("--preset", choices=PRESETS)
    r.add_argument("--n", type=int)
    r.add_argument("--m", type=int)
    r.add_argument("--allow-boundary", action="store_true", help="allow n = m for fam-11nm")
    r.add_argument("--json", action="store_true", help="emit the machine-readable report")
    r.add_argument("--assert-unstable", action="store_true", help="exit 3 unless the verdict is NotKSemistable")

    s = sub.add_parser("sweep", help="run a parametric family over ranges and check its closed form")
    s.add_argument("family", choices=FAMILIES)
    s.add_argument("--n", type=_range, required=True, help="N or A:B (inclusive)")
    s.add_argument("--m", type=_range, help="N or A:B (inclusive), fam-11nm only")
    s.add_argument("--allow-boundary", action="store_true")
    s.add_argument("--json", action="store_true", help="JSON instead of CSV")
    s.add_argument("--workers", type=int, default=1)

    e = sub.add_parser("export-preset", help="write a preset as a scenario JSON file")
    e.add_argument("name", choices=PRESETS)
    e.add_argument("--n", type=int)
    e.add_argument("--m", type=int)
    e.add_argument("--allow-boundary", action="store_true")
    e.add_argument("-o", "--output", help="output file (default: stdout)")
    return p


def _fail(where: str, message: str) -> int:
    print(f"{where}: error: {message}", file=sys.stderr)
    return EXIT_INVALID


def _report(args) -> int:
    if args.scenario and args.preset:
        return _fail("kstab", "give either a scenario file or --preset, not both")
    if args.scenario:
        path = Path(args.scenario)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            return _fail(str(path), str(exc))
        try:
            rep = run(load_scenario(text))
        except ScenarioError as exc:
            line = locate_line(text, exc.path) if exc.path else None
            return _fail(f"{path}:{line}" if line else str(path), str(exc))
    elif args.preset:
        try:
            rep = run(parse_scenario(preset_dict(args.preset, args.n, args.m, args.allow_boundary)))
        except (BadParameters, ScenarioError) as exc:
            return _fail(args.preset, str(exc))
    else:
        return _fail("kstab", "report needs a scenario file or --preset")
    sys.stdout.write(dumps(rep) if args.json else format_text(rep))
    if args.assert_unstable and rep["verdict"] != "NotKSemistable":
        return EXIT_NOT_UNSTABLE
    return EXIT_OK


def _sweep(args) -> int:
    try:
        rows = sweep(args.family, args.n, args.m, args.allow_boundary, workers=args.workers)
    except BadParameters as exc:
        return _fail(args.family, str(exc))
    sys.stdout.write(json.dumps(rows, indent=2) + "\n" if args.json else rows_to_csv(rows))
    return EXIT_OK


def _export(args) -> int:
    try:
        data = preset_dict(args.name, args.n, args.m, args.allow_boundary)
    except BadParameters as exc:
        return _fail(args.name, str(exc))
    text = dumps(data)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"report": _report, "sweep": _sweep, "export-preset": _export}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
