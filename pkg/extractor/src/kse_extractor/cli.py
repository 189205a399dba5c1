"""kse-extract: one-shot CLI for exporting vision-model features as KSE.

Exit codes: 0 success, 2 usage, 3 invalid job, 4 model not found,
5 dataset not found, 6 feature-shape mismatch, 7 filesystem error.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .errors import DatasetNotFound, InvalidJob, ModelNotFound, ShapeMismatch
from .extract import extract
from .jobs import ExtractionJob


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kse-extract",
        description="Run a vision model over a dataset and write features "
        "plus labels as a KSE file.",
    )
    parser.add_argument("--version", action="version", version=f"kse-extract {__version__}")
    parser.add_argument("--model", required=True, help="torchvision model name")
    parser.add_argument(
        "--dataset",
        required=True,
        help="dataset id: zoo name, 'fake[:n=..,classes=..,size=..]', or 'folder:PATH'",
    )
    parser.add_argument("--split", default="test")
    parser.add_argument("--out", required=True, help="output .kse path")
    parser.add_argument("--batch-size", type=int, default=32)
    parser.add_argument("--device", default="cpu")
    parser.add_argument(
        "--feature-layer",
        default="default",
        help="graph node to export ('default' = pre-classifier flatten)",
    )
    parser.add_argument(
        "--weights",
        default="none",
        help="'none', 'default' (zoo pretrained), or a state_dict path",
    )
    parser.add_argument("--limit", type=int, default=None, help="cap sample count")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    job = ExtractionJob(
        model=args.model,
        dataset=args.dataset,
        output=args.out,
        split=args.split,
        batch_size=args.batch_size,
        device=args.device,
        feature_layer=args.feature_layer,
        weights=args.weights,
        limit=args.limit,
    )
    try:
        path = extract(job)
    except InvalidJob as e:
        print(f"kse-extract: invalid job: {e}", file=sys.stderr)
        return 3
    except ModelNotFound as e:
        print(f"kse-extract: model: {e}", file=sys.stderr)
        return 4
    except DatasetNotFound as e:
        print(f"kse-extract: dataset: {e}", file=sys.stderr)
        return 5
    except ShapeMismatch as e:
        print(f"kse-extract: {e}", file=sys.stderr)
        return 6
    except OSError as e:
        print(f"kse-extract: i/o error: {e}", file=sys.stderr)
        return 7
    print(f"wrote {path} (+ {path}.meta.json)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
