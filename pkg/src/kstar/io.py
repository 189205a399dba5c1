"""Interchange formats: the KSE binary container, CSV ingestion, and
report serialization.

KSE layout (little-endian throughout):

    offset  size      field
    0       4         magic "KSE1"
    4       8         n  (uint64)  number of samples
    12      4         d  (uint32)  dimensions
    16      4         C  (uint32)  number of concepts
    20      4*n*d     points, float32, row-major
    ..      4*n       labels, uint32, each < C
    ..      4         names_len (uint32)
    ..      names_len UTF-8 JSON object {label: name}, may be {}

File size is exactly 24 + 4nd + 4n + names_len bytes. Round-trips are
bit-exact. Report JSON uses shortest round-trip float formatting and a
fixed field order, so identical analyses serialize to identical bytes.
"""

from __future__ import annotations

import csv
import json
import struct
from pathlib import Path
from typing import Optional

import numpy as np

from .types import EmbeddingSet, SpaceReport, build_embedding_set
from .errors import (
    BadMagic,
    LabelOutOfRange,
    ParseError,
    RaggedRows,
    SchemaMismatch,
    Truncated,
)

KSE_MAGIC = b"KSE1"
_HEADER = struct.Struct("<QII")

REPORT_VERSION = "kstar-report/1"
REPORT_FORMATS = ("json", "csv-summary")


def write_kse(embedding_set: EmbeddingSet, path) -> None:
    """Serialize a set to the binary container (inverse of read_kse)."""
    names = {
        str(c): name for c, name in sorted(embedding_set.concept_names.items())
    }
    names_bytes = json.dumps(
        names, ensure_ascii=False, sort_keys=True, separators=(",", ":")
    ).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(KSE_MAGIC)
        fh.write(
            _HEADER.pack(
                embedding_set.n, embedding_set.dim, embedding_set.concept_count
            )
        )
        fh.write(embedding_set.points.astype("<f4", copy=False).tobytes())
        fh.write(embedding_set.labels.astype("<u4").tobytes())
        fh.write(struct.pack("<I", len(names_bytes)))
        fh.write(names_bytes)


def read_kse(path) -> EmbeddingSet:
    """Parse and validate a KSE file into an EmbeddingSet.

    Raises BadMagic, Truncated (short or oversized payload), and
    LabelOutOfRange; value-level validation (finiteness, concept count)
    happens in build_embedding_set.
    """
    blob = Path(path).read_bytes()
    if len(blob) < 4 or blob[:4] != KSE_MAGIC:
        raise BadMagic(f"{path}: not a KSE file")
    if len(blob) < 4 + _HEADER.size:
        raise Truncated(f"{path}: header incomplete")
    n, d, c = _HEADER.unpack_from(blob, 4)

    pos = 4 + _HEADER.size
    points_bytes = 4 * n * d
    labels_bytes = 4 * n
    if len(blob) < pos + points_bytes + labels_bytes + 4:
        raise Truncated(f"{path}: payload shorter than header promises")
    points = np.frombuffer(blob, dtype="<f4", count=n * d, offset=pos).reshape(n, d)
    pos += points_bytes
    labels = np.frombuffer(blob, dtype="<u4", count=n, offset=pos)
    pos += labels_bytes
    (names_len,) = struct.unpack_from("<I", blob, pos)
    pos += 4
    if len(blob) != pos + names_len:
        raise Truncated(
            f"{path}: expected {pos + names_len} bytes total, file has {len(blob)}"
        )
    try:
        names_raw = json.loads(blob[pos:].decode("utf-8")) if names_len else {}
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ParseError(f"{path}: names block is not valid JSON: {e}") from e

    if labels.size and int(labels.max()) >= c:
        raise LabelOutOfRange(
            f"{path}: label {int(labels.max())} >= declared concept count {c}"
        )
    names = {}
    for key, value in names_raw.items():
        try:
            ki = int(key)
        except ValueError as e:
            raise ParseError(f"{path}: non-integer names key {key!r}") from e
        if not 0 <= ki < c:
            raise LabelOutOfRange(f"{path}: names key {ki} outside [0, {c})")
        names[ki] = str(value)

    # Stem, not full path: reports must not vary with the directory the
    # input happened to live in.
    return build_embedding_set(
        points, labels.astype(np.int64), names=names, source=Path(path).stem
    )


def read_csv(path) -> EmbeddingSet:
    """Load `label,f0,f1,...` rows. Labels are kept as strings (exposed via
    concept names) and indexed densely in sorted order."""
    labels: list[str] = []
    rows: list[list[float]] = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{path}: empty file") from None
        if not header or header[0].strip() != "label":
            raise ParseError(f"{path}: first header column must be 'label'")
        width = len(header)
        if width < 2:
            raise ParseError(f"{path}: no feature columns in header")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != width:
                raise RaggedRows(
                    f"{path}: line {lineno} has {len(row)} fields, expected {width}"
                )
            labels.append(row[0])
            try:
                rows.append([float(x) for x in row[1:]])
            except ValueError:
                col = next(
                    i for i, x in enumerate(row[1:], start=2)
                    if not _is_float(x)
                )
                raise ParseError(
                    f"{path}: line {lineno}, column {col}: not a number: "
                    f"{row[col - 1]!r}"
                ) from None
    if not rows:
        raise ParseError(f"{path}: no data rows")
    distinct = sorted(set(labels))
    index = {s: i for i, s in enumerate(distinct)}
    dense = np.array([index[s] for s in labels], dtype=np.int64)
    return build_embedding_set(
        np.array(rows, dtype=np.float32),
        dense,
        names={i: s for s, i in index.items()},
        source=Path(path).stem,
    )


def _is_float(s: str) -> bool:
    try:
        float(s)
        return True
    except ValueError:
        return False


def load_embedding_set(path) -> EmbeddingSet:
    """Dispatch on extension: .kse binary, anything else as CSV."""
    if str(path).endswith(".kse"):
        return read_kse(path)
    return read_csv(path)


def report_to_dict(report: SpaceReport, tool_version: str) -> dict:
    """JSON-ready dict with a fixed field order."""
    concepts = []
    for s in report.concept_summaries:
        concepts.append(
            {
                "id": s.concept_id,
                "name": s.name,
                "sample_count": s.sample_count,
                "gamma": s.gamma,
                "mean_kstar": s.mean_kstar,
                "pattern": s.pattern.value,
                "degenerate_leaning": (
                    s.degenerate_leaning.value if s.degenerate_leaning else None
                ),
                "histogram": [int(x) for x in s.histogram],
            }
        )
    raw = None
    if report.raw is not None:
        raw = {
            "per_sample": [int(x) for x in report.raw.per_sample_kstar],
            "per_sample_normalized": [
                float(x) for x in report.raw.per_sample_normalized
            ],
        }
    return {
        "version": REPORT_VERSION,
        "source": report.source,
        "metric": report.metric,
        "n": report.n,
        "d": report.d,
        "concept_count": report.concept_count,
        "histogram_bins": report.histogram_bins,
        "tie_break": report.tie_break,
        "tool_version": tool_version,
        "gamma_true": report.gamma_true,
        "gamma_true_n": report.gamma_true_n,
        "gamma_approx": report.gamma_approx,
        "gamma_approx_concepts": report.gamma_approx_concepts,
        "degenerate_excluded": report.degenerate_excluded,
        "pattern_counts": dict(report.pattern_counts),
        "metadata": dict(report.metadata),
        "concepts": concepts,
        "raw_kstar": raw,
    }


def write_report(
    report: SpaceReport,
    path,
    fmt: str = "json",
    tool_version: Optional[str] = None,
) -> None:
    """Write a report as canonical JSON or as a per-concept CSV summary."""
    if tool_version is None:
        from . import __version__ as tool_version
    if fmt == "json":
        payload = json.dumps(
            report_to_dict(report, tool_version), indent=2, ensure_ascii=False
        )
        Path(path).write_bytes(payload.encode("utf-8") + b"\n")
    elif fmt == "csv-summary":
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["id", "name", "n", "gamma", "pattern"])
            for s in report.concept_summaries:
                writer.writerow(
                    [
                        s.concept_id,
                        s.name,
                        s.sample_count,
                        "" if s.gamma is None else repr(s.gamma),
                        s.pattern.value,
                    ]
                )
    else:
        raise ValueError(f"unknown report format {fmt!r}; expected {REPORT_FORMATS}")


def read_report(path) -> dict:
    """Load a report JSON, checking the schema version."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: not valid JSON: {e}") from e
    version = data.get("version") if isinstance(data, dict) else None
    if version != REPORT_VERSION:
        raise SchemaMismatch(
            f"{path}: report version {version!r}, this tool reads {REPORT_VERSION!r}"
        )
    return data
