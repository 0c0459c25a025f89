"""Command-line interface: classify, batch, eval, gen, volume.

Exit status is 0 on success, 2 for bad invocations or unreadable inputs,
and 1 for internal failures. The status never encodes a verdict; scripts
read the records.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from contextlib import nullcontext
from pathlib import Path

from .classify import classify_batch, classify_frame, write_records
from .evaluate import (
    EvaluationError,
    ManifestError,
    evaluate,
    load_manifest,
    render_table,
)
from .frames import DecodeError, decode_frame
from .rules import PRESETS, ColorRangeRule, RuleFormatError, parse_rule, rule_volume
from .synth import gen_corpus

IMAGE_SUFFIXES = {".png", ".jpg", ".jpeg", ".bmp", ".ppm"}


class CliError(Exception):
    """Bad invocation or unreadable input; maps to exit status 2."""


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _nonnegative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _load_rule(source: str) -> ColorRangeRule:
    """Resolve a preset name or a rule-document path."""
    if source in PRESETS:
        return PRESETS[source]()
    try:
        text = Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read rule {source!r}: {exc}") from exc
    try:
        return parse_rule(text)
    except RuleFormatError as exc:
        raise CliError(f"bad rule document {source!r}: {exc}") from exc


def _batch_paths(target: str) -> list[Path]:
    """A directory (sorted by file name) or a list file (order as given)."""
    root = Path(target)
    if root.is_dir():
        paths = sorted(
            (p for p in root.iterdir() if p.suffix.lower() in IMAGE_SUFFIXES),
            key=lambda p: p.name,
        )
        if not paths:
            raise CliError(f"directory {target!r} contains no image files")
        return paths
    try:
        lines = root.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise CliError(f"cannot read batch input {target!r}: {exc}") from exc
    paths = []
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        entry = Path(line)
        paths.append(entry if entry.is_absolute() else root.parent / entry)
    if not paths:
        raise CliError(f"list file {target!r} names no files")
    return paths


def _open_output(path: str | None):
    if path is None or path == "-":
        return nullcontext(sys.stdout)
    return open(path, "w", encoding="utf-8", newline="")


def _cmd_classify(args: argparse.Namespace) -> int:
    rule = _load_rule(args.rule)
    try:
        frame = decode_frame(args.image)
    except DecodeError as exc:
        raise CliError(str(exc)) from exc
    verdict = classify_frame(frame, rule, args.min_count)
    if args.format == "structured":
        record = {
            "source": verdict.source,
            "rule_id": verdict.rule_id,
            "matching_count": verdict.matching_count,
            "min_count": verdict.min_count,
            "verdict": verdict.verdict.value,
        }
        print(json.dumps(record, indent=2))
    else:
        write_records([verdict], sys.stdout)
    return 0


def _cmd_batch(args: argparse.Namespace) -> int:
    rule = _load_rule(args.rule)
    paths = _batch_paths(args.input)
    entries = classify_batch(paths, rule, min_count=args.min_count, workers=args.workers)
    with _open_output(args.output) as stream:
        write_records(entries, stream)
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    rule = _load_rule(args.rule)
    try:
        samples = load_manifest(args.manifest)
    except OSError as exc:
        raise CliError(f"cannot read manifest {args.manifest!r}: {exc}") from exc
    except ManifestError as exc:
        raise CliError(str(exc)) from exc
    report = evaluate(samples, rule, min_count=args.min_count, workers=args.workers)
    with _open_output(args.output) as stream:
        print(json.dumps(report.to_dict(), indent=2), file=stream)
        if args.table:
            print(render_table([report]), file=stream)
    return 0


def _cmd_gen(args: argparse.Namespace) -> int:
    try:
        manifest = gen_corpus(
            args.seed,
            args.n,
            args.bleeding_fraction,
            args.out,
            width=args.width,
            height=args.height,
            blob_fraction=args.blob_fraction,
        )
    except OSError as exc:
        raise CliError(f"cannot write corpus to {args.out!r}: {exc}") from exc
    print(manifest)
    return 0


def _cmd_volume(args: argparse.Namespace) -> int:
    print(rule_volume(_load_rule(args.rule)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wcescan",
        description="Classify endoscopy frames as bleeding or non-bleeding "
        "by counting pixels inside RGB color-range rules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rule_help = "preset name (purity_red, range_ratio) or path to a rule document"

    p = sub.add_parser("classify", help="classify a single image")
    p.add_argument("image", help="image file (PNG, JPEG, BMP or binary PPM)")
    p.add_argument("--rule", required=True, help=rule_help)
    p.add_argument("--min-count", type=_positive_int, default=1,
                   help="matching pixels needed for a bleeding verdict (default 1)")
    p.add_argument("--format", choices=("csv", "structured"), default="csv",
                   help="record format (default csv)")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("batch", help="classify a directory or list of images")
    p.add_argument("input", help="directory (scanned in name order) or list file")
    p.add_argument("--rule", required=True, help=rule_help)
    p.add_argument("--min-count", type=_positive_int, default=1)
    p.add_argument("--workers", type=_positive_int, default=os.cpu_count() or 1,
                   help="parallel decode workers; never changes the output")
    p.add_argument("--output", help="write CSV records here instead of stdout")
    p.set_defaults(func=_cmd_batch)

    p = sub.add_parser("eval", help="evaluate a rule against a labeled manifest")
    p.add_argument("--manifest", required=True, help="manifest of <path>,<label> lines")
    p.add_argument("--rule", required=True, help=rule_help)
    p.add_argument("--min-count", type=_positive_int, default=1)
    p.add_argument("--workers", type=_positive_int, default=os.cpu_count() or 1)
    p.add_argument("--table", action="store_true",
                   help="also print the comparison table row")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("gen", help="generate a labeled synthetic corpus")
    p.add_argument("--seed", type=_nonnegative_int, required=True)
    p.add_argument("--n", type=_positive_int, required=True, help="number of frames")
    p.add_argument("--bleeding-fraction", type=float, default=0.5,
                   help="fraction of bleeding frames (default 0.5)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--width", type=_positive_int, default=64)
    p.add_argument("--height", type=_positive_int, default=64)
    p.add_argument("--blob-fraction", type=float, default=0.02,
                   help="bleeding blob area as a fraction of the frame (default 0.02)")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("volume", help="print how many colors a rule matches")
    p.add_argument("--rule", required=True, help=rule_help)
    p.set_defaults(func=_cmd_volume)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ManifestError, RuleFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EvaluationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # internal failure contract: exit 1
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
