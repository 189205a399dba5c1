"""Standalone KSE writer (and a reader for self-checks).

Deliberately independent of the analysis toolkit: the two packages talk
through this file format only. Layout (little-endian):

    "KSE1" | n:u64 | d:u32 | C:u32 | points:f32[n*d] | labels:u32[n]
    | names_len:u32 | names: UTF-8 JSON {label: name}
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

MAGIC = b"KSE1"
_HEADER = struct.Struct("<QII")


def write_kse(points: np.ndarray, labels: np.ndarray, names: dict[int, str], path) -> None:
    pts = np.ascontiguousarray(points, dtype="<f4")
    labs = np.ascontiguousarray(labels, dtype="<u4")
    if pts.ndim != 2:
        raise ValueError(f"points must be 2-D, got {pts.shape}")
    n, d = pts.shape
    if labs.shape != (n,):
        raise ValueError(f"expected {n} labels, got {labs.shape}")
    c = int(labs.max()) + 1 if n else 0
    c = max(c, (max(names) + 1) if names else 0)
    names_bytes = json.dumps(
        {str(k): str(v) for k, v in sorted(names.items())},
        ensure_ascii=False, sort_keys=True, separators=(",", ":"),
    ).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(_HEADER.pack(n, d, c))
        fh.write(pts.tobytes())
        fh.write(labs.tobytes())
        fh.write(struct.pack("<I", len(names_bytes)))
        fh.write(names_bytes)


def read_kse(path) -> tuple[np.ndarray, np.ndarray, dict[int, str]]:
    """Minimal reader used by tests; raises ValueError on malformed input."""
    blob = Path(path).read_bytes()
    if blob[:4] != MAGIC:
        raise ValueError("bad magic")
    n, d, c = _HEADER.unpack_from(blob, 4)
    pos = 4 + _HEADER.size
    points = np.frombuffer(blob, dtype="<f4", count=n * d, offset=pos).reshape(n, d)
    pos += 4 * n * d
    labels = np.frombuffer(blob, dtype="<u4", count=n, offset=pos)
    pos += 4 * n
    (names_len,) = struct.unpack_from("<I", blob, pos)
    pos += 4
    if len(blob) != pos + names_len:
        raise ValueError("size mismatch")
    if n and labels.max() >= c:
        raise ValueError("label out of range")
    names = {int(k): v for k, v in json.loads(blob[pos:].decode("utf-8")).items()}
    return points, labels, names
