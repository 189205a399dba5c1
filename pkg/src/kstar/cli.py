"""Command-line interface: analyze, compare, synth, oracle-check.

Exit codes, one per error family:

    0  success
    1  oracle-check found disagreements
    2  usage error (argparse)
    3  invalid input values (validation family)
    4  malformed file (format family)
    5  filesystem error
    6  instance too large for the quadratic reference
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .analysis import analyze
from .errors import FormatError, InstanceTooLarge, InvalidSpec, KstarError, ValidationError
from .io import (
    REPORT_FORMATS,
    load_embedding_set,
    read_report,
    write_kse,
    write_report,
)
from .neighbors import METRICS, ORACLE_MAX_N, equivalence_sweep
from .synth import SynthSpec, generate
from .types import Pattern, SpaceReport

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_VALIDATION = 3
EXIT_FORMAT = 4
EXIT_IO = 5
EXIT_TOO_LARGE = 6

WORKERS_ENV = "KSTAR_WORKERS"


def _default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def _parse_metadata(pairs: list[str]) -> dict:
    meta = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise InvalidSpec(f"metadata must be key=value, got {pair!r}")
        meta[key] = _coerce(value)
    return meta


def _coerce(value: str):
    try:
        return int(value)
    except ValueError:
        pass
    try:
        return float(value)
    except ValueError:
        return value


def _fmt_gamma(g) -> str:
    return "undef" if g is None else f"{g:+.4f}"


def _print_table(headers: list[str], rows: list[list[str]]) -> None:
    widths = [
        max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
        for i, h in enumerate(headers)
    ]
    line = "  ".join(h.ljust(w) for h, w in zip(headers, widths))
    print(line)
    print("  ".join("-" * w for w in widths))
    for r in rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)))


def _print_report_summary(report: SpaceReport) -> None:
    rows = []
    for s in report.concept_summaries:
        label = s.pattern.value
        if s.degenerate_leaning is not None:
            label += f"({s.degenerate_leaning.value})"
        rows.append(
            [
                str(s.concept_id),
                s.name,
                str(s.sample_count),
                _fmt_gamma(s.gamma),
                f"{s.mean_kstar:.4f}",
                label,
            ]
        )
    _print_table(["id", "name", "n", "gamma", "mean", "pattern"], rows)
    print()
    print(
        f"n={report.n} d={report.d} concepts={report.concept_count} "
        f"metric={report.metric}"
    )
    print(f"pooled skewness (true):      {_fmt_gamma(report.gamma_true)}")
    print(
        f"averaged skewness (approx):  {_fmt_gamma(report.gamma_approx)} "
        f"over {report.gamma_approx_concepts} concepts "
        f"({report.degenerate_excluded} degenerate excluded)"
    )
    counts = report.pattern_counts
    print(
        "patterns: "
        + "  ".join(f"{p.value}={counts[p.value]}" for p in Pattern)
    )


def cmd_analyze(args) -> int:
    embedding_set = load_embedding_set(args.input)
    if args.bins < 2:
        raise InvalidSpec(f"histogram bins must be >= 2, got {args.bins}")
    if args.workers < 0:
        raise InvalidSpec(f"workers must be >= 0, got {args.workers}")
    report = analyze(
        embedding_set,
        metric=args.metric,
        bins=args.bins,
        workers=args.workers,
        metadata=_parse_metadata(args.metadata),
        include_raw=args.include_raw_kstar,
    )
    _print_report_summary(report)
    if args.output:
        write_report(report, args.output, fmt=args.format, tool_version=__version__)
        print(f"\nreport written to {args.output}")
    if args.figures is not None:
        from .io import report_to_dict
        from .plots import save_report_figure

        fig_dir = Path(args.figures)
        fig_dir.mkdir(parents=True, exist_ok=True)
        stem = Path(args.output).stem if args.output else Path(args.input).stem
        path = save_report_figure(
            report_to_dict(report, __version__), fig_dir / f"{stem}_distributions.png"
        )
        print(f"figure written to {path}")
    return EXIT_OK


COMPARE_COLUMNS = [
    "source",
    "metric",
    "n",
    "concept_count",
    "gamma_true",
    "gamma_approx",
    "fractured",
    "overlapped",
    "clustered",
    "degenerate",
]


def _compare_rows(reports: list[dict]) -> tuple[list[str], list[list]]:
    shared = set(reports[0]["metadata"])
    for r in reports[1:]:
        shared &= set(r["metadata"])
    meta_keys = sorted(shared)
    rows = []
    for r in reports:
        row = [
            r.get("source") or "",
            r["metric"],
            r["n"],
            r["concept_count"],
            r["gamma_true"],
            r["gamma_approx"],
            r["pattern_counts"]["fractured"],
            r["pattern_counts"]["overlapped"],
            r["pattern_counts"]["clustered"],
            r["pattern_counts"]["degenerate"],
        ]
        row.extend(r["metadata"][k] for k in meta_keys)
        rows.append(row)
    return meta_keys, rows


def cmd_compare(args) -> int:
    if len(args.reports) < 2:
        raise InvalidSpec("compare needs at least 2 report files")
    reports = [read_report(p) for p in args.reports]
    meta_keys, rows = _compare_rows(reports)
    headers = COMPARE_COLUMNS + meta_keys

    def cell(v) -> str:
        if v is None:
            return "undef"
        if isinstance(v, float):
            return f"{v:+.4f}"
        return str(v)

    _print_table(headers, [[cell(v) for v in row] for row in rows])

    if args.output:
        import csv as csv_mod

        with open(args.output, "w", newline="") as fh:
            writer = csv_mod.writer(fh, lineterminator="\n")
            writer.writerow(headers)
            for row in rows:
                writer.writerow(["" if v is None else v for v in row])
        print(f"\nplot-ready table written to {args.output}")

    if args.figures is not None:
        from .plots import save_compare_figure

        fig_dir = Path(args.figures)
        fig_dir.mkdir(parents=True, exist_ok=True)
        stem = Path(args.output).stem if args.output else "compare"
        path = save_compare_figure(reports, meta_keys, fig_dir / f"{stem}_scatter.png")
        print(f"figure written to {path}")
    return EXIT_OK


def cmd_synth(args) -> int:
    spec = SynthSpec(
        pattern=Pattern(args.pattern),
        concepts=args.concepts,
        samples_per_concept=args.per_concept,
        dim=args.dim,
        seed=args.seed,
        noise_scale=args.noise_scale,
    )
    embedding_set = generate(spec)
    write_kse(embedding_set, args.output)
    print(
        f"wrote {args.output}: n={embedding_set.n} d={embedding_set.dim} "
        f"concepts={embedding_set.concept_count} ({args.pattern})"
    )
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    n_values = (args.n,) if args.n else (200, 1000, 2000)
    for n in n_values:
        if n > ORACLE_MAX_N:
            raise InstanceTooLarge(
                f"n={n} exceeds the oracle guard of {ORACLE_MAX_N}"
            )
    mismatches = equivalence_sweep(
        instances=args.instances, seed=args.seed, n_values=n_values
    )
    if not mismatches:
        print(f"PASS, 0 mismatches over {args.instances} instances")
        return EXIT_OK
    first = mismatches[0]
    print(f"FAIL, {len(mismatches)} mismatches over {args.instances} instances")
    print(
        f"first: instance {first.instance} {first.config} sample "
        f"{first.sample_index}: fast={first.fast_value} oracle={first.oracle_value}"
    )
    return EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kstar",
        description=(
            "Quantify latent-space quality from cross-class nearest-neighbor "
            "rank distributions."
        ),
    )
    parser.add_argument("--version", action="version", version=f"kstar {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze an embedding set and write a report")
    p.add_argument("input", help="input file (.kse binary or .csv)")
    p.add_argument("-o", "--output", help="report output path")
    p.add_argument("--metric", choices=METRICS, default="euclidean")
    p.add_argument("--bins", type=int, default=50, help="histogram bins (default 50)")
    p.add_argument(
        "--include-raw-kstar",
        action="store_true",
        help="embed per-sample raw ranks in the report",
    )
    p.add_argument(
        "--workers",
        type=int,
        default=_default_workers(),
        help=f"worker threads, 0 = all CPUs (default from ${WORKERS_ENV})",
    )
    p.add_argument(
        "--metadata",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="attach external metadata (repeatable), e.g. natural_accuracy=0.92",
    )
    p.add_argument("--format", choices=REPORT_FORMATS, default="json")
    p.add_argument(
        "--figures",
        nargs="?",
        const=".",
        default=None,
        metavar="DIR",
        help="also render figures into DIR (default: current directory)",
    )
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("compare", help="tabulate several reports side by side")
    p.add_argument("reports", nargs="+", help="report JSON files (at least 2)")
    p.add_argument("-o", "--output", help="write the plot-ready CSV here")
    p.add_argument(
        "--figures",
        nargs="?",
        const=".",
        default=None,
        metavar="DIR",
        help="also render a comparison figure into DIR",
    )
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("synth", help="generate a synthetic embedding set")
    p.add_argument(
        "--pattern",
        required=True,
        choices=[x.value for x in Pattern if x != Pattern.DEGENERATE],
    )
    p.add_argument("--concepts", type=int, default=4)
    p.add_argument("--per-concept", type=int, default=60)
    p.add_argument("--dim", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--noise-scale", type=float, default=1.0)
    p.add_argument("-o", "--output", required=True, help="output .kse path")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser(
        "oracle-check",
        help="sweep random instances through the fast scan and the reference",
    )
    p.add_argument("--instances", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--n", type=int, default=None, help="fix the instance size (default grid)"
    )
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as e:
        print(f"kstar: invalid input: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except FormatError as e:
        print(f"kstar: malformed file: {e}", file=sys.stderr)
        return EXIT_FORMAT
    except InstanceTooLarge as e:
        print(f"kstar: {e}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except OSError as e:
        print(f"kstar: i/o error: {e}", file=sys.stderr)
        return EXIT_IO
    except KstarError as e:
        print(f"kstar: {e}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
