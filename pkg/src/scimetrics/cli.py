"""Command-line interface.

Usage::

    scimetrics analyze --corpus corpus.csv --rules rules.txt \
        --scheme regions=regions.csv --scheme income=income.csv \
        --window 1998:2012 --census 2013 --min-degree 12 --seed 0 --out report/

Exit codes: 0 success, 1 input error, 2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .pipeline import (
    DEFAULT_DOC_TYPES,
    InputError,
    InternalInvariantViolation,
    RunConfig,
    run_pipeline,
)


def _parse_window(text: str) -> tuple[int, int]:
    try:
        start, end = text.split(":")
        return int(start), int(end)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected START:END, got {text!r}")


def _parse_scheme(text: str) -> tuple[str, Path]:
    name, sep, path = text.partition("=")
    if not sep or not name or not path:
        raise argparse.ArgumentTypeError(f"expected NAME=PATH, got {text!r}")
    return name, Path(path)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scimetrics",
        description="Macro-level bibliometric analysis of a publication corpus.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    analyze = sub.add_parser("analyze", help="run the full pipeline and write a report bundle")
    analyze.add_argument("--corpus", required=True, type=Path, help="corpus CSV file")
    analyze.add_argument("--rules", type=Path, help="affiliation cleaning rules file")
    analyze.add_argument(
        "--scheme",
        action="append",
        default=[],
        type=_parse_scheme,
        metavar="NAME=PATH",
        help="country grouping scheme (repeatable)",
    )
    analyze.add_argument("--window", type=_parse_window, default=(1998, 2012), metavar="START:END")
    analyze.add_argument("--census", type=int, default=2013, help="citation census year")
    analyze.add_argument(
        "--doc-types",
        default=",".join(DEFAULT_DOC_TYPES),
        help="comma-separated document types to keep",
    )
    analyze.add_argument("--min-degree", type=int, default=12, help="network degree filter")
    analyze.add_argument("--seed", type=int, default=0)
    analyze.add_argument("--out", required=True, type=Path, help="output directory")
    analyze.add_argument("--subjects-filter", type=Path, help="subject allow-list file")
    analyze.add_argument("--top-threshold", type=float, default=1000.0)
    analyze.add_argument("--format", choices=("csv", "markdown"), default="csv")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = RunConfig(
        corpus_path=args.corpus,
        rules_path=args.rules,
        scheme_paths=tuple(args.scheme),
        study_window=args.window,
        census_year=args.census,
        doc_type_filter=tuple(t.strip() for t in args.doc_types.split(",") if t.strip()),
        min_degree=args.min_degree,
        seed=args.seed,
        output_dir=args.out,
        output_format=args.format,
        top_threshold=args.top_threshold,
        subjects_filter=args.subjects_filter,
    )
    try:
        result = run_pipeline(config)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InternalInvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {len(result.files)} files to {result.output_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
