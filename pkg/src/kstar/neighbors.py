"""Exact distance computation and class-aware nearest-neighbor ranking.

The scan answers, for every sample, "at what neighbor rank does the first
point of a different concept appear?" (self excluded, 1-based). Rather
than sorting each neighborhood, the kernel uses the equivalent counting
form: the first cross-class neighbor is the cross-class point with the
smallest (distance, index) key, and its rank is one plus the number of
same-class points with a strictly smaller key. This is mathematically
identical to fully sorting and scanning, and never materializes a sort.

Determinism contract: distances for a given query row are always computed
by a GEMM over that row's home tile (a fixed 128-row grid aligned to row
0), regardless of worker count or requested block shape. BLAS results are
reproducible for identical call shapes and data, so results are
bit-stable across worker counts, block sizes, and repeated runs. Ties in
distance are broken toward the lower sample index.

Storage is float32; all distance arithmetic is float64. Euclidean
comparisons use squared distances (rank-equivalent, avoids the sqrt) via
the expanded form |a|^2 + |b|^2 - 2ab with negatives clamped to zero.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import InstanceTooLarge, InvalidSpec, ZeroNormVector
from .types import EmbeddingSet

METRICS = ("euclidean", "cosine")

# Home-tile height for the blocked kernel. Fixed (not tunable) because the
# bit-stability contract depends on every row being computed by an
# identically-shaped GEMM no matter how work is divided.
TILE = 128

ORACLE_MAX_N = 10_000


@dataclass(frozen=True)
class NeighborRank:
    """One entry of a query's sorted neighbor list (rank is 1-based)."""

    query_index: int
    rank: int
    neighbor_index: int
    distance: float


def check_metric(metric: str) -> str:
    if metric not in METRICS:
        raise InvalidSpec(f"unknown metric {metric!r}; expected one of {METRICS}")
    return metric


def _prepare(embedding_set: EmbeddingSet, metric: str) -> tuple[np.ndarray, np.ndarray]:
    """Float64 working copy plus per-row squared norms (euclidean) or
    row-normalized copy (cosine)."""
    pts = embedding_set.points.astype(np.float64)
    if metric == "euclidean":
        sq = np.einsum("ij,ij->i", pts, pts)
        return pts, sq
    norms = np.sqrt(np.einsum("ij,ij->i", pts, pts))
    zero = np.flatnonzero(norms == 0.0)
    if zero.size:
        raise ZeroNormVector(
            f"cosine distance undefined for zero-norm row {int(zero[0])}"
        )
    return pts / norms[:, None], norms


def _tile_comparable(pts: np.ndarray, sq: np.ndarray, metric: str, t0: int, t1: int) -> np.ndarray:
    """Rank-comparable distances for rows [t0, t1) against all rows.

    Euclidean: squared distance. Cosine: 1 - similarity (pts pre-normalized).
    """
    gram = pts[t0:t1] @ pts.T
    if metric == "euclidean":
        d = sq[t0:t1, None] + sq[None, :] - 2.0 * gram
        np.maximum(d, 0.0, out=d)
        return d
    d = 1.0 - gram
    np.maximum(d, 0.0, out=d)
    return d


def _tile_bounds(start: int, stop: int, n: int) -> list[tuple[int, int]]:
    """Home tiles covering [start, stop). Tile ends clamp to n (never to
    stop): a partial request still computes whole canonical tiles, which
    is what keeps rows bit-identical across request shapes."""
    first = (start // TILE) * TILE
    return [(t, min(t + TILE, n)) for t in range(first, stop, TILE)]


def pairwise_distance_block(
    embedding_set: EmbeddingSet,
    start: int,
    stop: int,
    metric: str = "euclidean",
) -> np.ndarray:
    """Actual distances (float64, shape (stop-start, n)) for a query row range.

    Rows are computed on the fixed home-tile grid and sliced, so the same
    row always yields the same bits whatever range requested it.
    """
    check_metric(metric)
    n = embedding_set.n
    if not (0 <= start <= stop <= n):
        raise InvalidSpec(f"row range [{start}, {stop}) outside [0, {n})")
    pts, sq = _prepare(embedding_set, metric)
    out = np.empty((stop - start, n), dtype=np.float64)
    for t0, t1 in _tile_bounds(start, stop, n):
        d = _tile_comparable(pts, sq, metric, t0, t1)
        lo, hi = max(t0, start), min(t1, stop)
        out[lo - start : hi - start] = d[lo - t0 : hi - t0]
    if metric == "euclidean":
        np.sqrt(out, out=out)
    return out


def _scan_tile(
    pts: np.ndarray,
    sq: np.ndarray,
    labels: np.ndarray,
    metric: str,
    t0: int,
    t1: int,
    out: np.ndarray,
) -> None:
    d = _tile_comparable(pts, sq, metric, t0, t1)
    rows = np.arange(t1 - t0)
    d[rows, np.arange(t0, t1)] = np.inf  # exclude self

    same = labels[t0:t1, None] == labels[None, :]
    d_other = np.where(same, np.inf, d)
    # argmin returns the first occurrence, which is the lowest index: this
    # is the tie-break rule.
    jmin = np.argmin(d_other, axis=1)
    dstar = d_other[rows, jmin]

    cols = np.arange(len(labels))
    nearer = same & (
        (d < dstar[:, None]) | ((d == dstar[:, None]) & (cols[None, :] < jmin[:, None]))
    )
    out[t0:t1] = 1 + nearer.sum(axis=1)


def kstar_scan(
    embedding_set: EmbeddingSet,
    metric: str = "euclidean",
    workers: int = 1,
) -> np.ndarray:
    """Raw cross-class neighbor rank for every sample (int64, length n).

    For sample p of concept c the value lies in [1, |S_c|]. workers=0
    uses all CPUs; the result is identical for any worker count.
    """
    check_metric(metric)
    pts, sq = _prepare(embedding_set, metric)
    labels = embedding_set.labels
    n = embedding_set.n
    out = np.empty(n, dtype=np.int64)
    tiles = _tile_bounds(0, n, n)

    if workers == 0:
        workers = os.cpu_count() or 1
    if workers <= 1 or len(tiles) <= 1:
        for t0, t1 in tiles:
            _scan_tile(pts, sq, labels, metric, t0, t1, out)
        return out

    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_scan_tile, pts, sq, labels, metric, t0, t1, out)
            for t0, t1 in tiles
        ]
        for f in futures:
            f.result()
    return out


def _naive_row(pts: np.ndarray, norms: np.ndarray, metric: str, p: int) -> np.ndarray:
    """Reference distance row: direct per-pair arithmetic, no shared GEMM."""
    if metric == "euclidean":
        diff = pts - pts[p]
        return np.einsum("ij,ij->i", diff, diff)
    sims = (pts @ pts[p]) / (norms * norms[p])
    return 1.0 - sims


def sorted_neighbors(
    embedding_set: EmbeddingSet,
    query_index: int,
    metric: str = "euclidean",
) -> list[NeighborRank]:
    """Full neighbor list of one sample, sorted by (distance, index), self
    excluded. This is the reference ordering the fast scan must agree with."""
    check_metric(metric)
    pts = embedding_set.points.astype(np.float64)
    if metric == "cosine":
        norms = np.sqrt(np.einsum("ij,ij->i", pts, pts))
        zero = np.flatnonzero(norms == 0.0)
        if zero.size:
            raise ZeroNormVector(
                f"cosine distance undefined for zero-norm row {int(zero[0])}"
            )
    else:
        norms = np.empty(0)
    d = _naive_row(pts, norms, metric, query_index)
    order = np.lexsort((np.arange(len(d)), d))
    order = order[order != query_index]
    if metric == "euclidean":
        d = np.sqrt(d)
    return [
        NeighborRank(
            query_index=query_index,
            rank=r + 1,
            neighbor_index=int(j),
            distance=float(d[j]),
        )
        for r, j in enumerate(order)
    ]


def kstar_scan_oracle(embedding_set: EmbeddingSet, metric: str = "euclidean") -> np.ndarray:
    """Slow reference: per query, naive distances, full lexicographic sort,
    linear scan for the first label mismatch.

    Kept deliberately independent of the blocked kernel (different distance
    arithmetic, explicit sort). Guarded to n <= 10,000.
    """
    check_metric(metric)
    n = embedding_set.n
    if n > ORACLE_MAX_N:
        raise InstanceTooLarge(f"oracle limited to n <= {ORACLE_MAX_N}, got {n}")
    pts = embedding_set.points.astype(np.float64)
    labels = embedding_set.labels
    if metric == "cosine":
        norms = np.sqrt(np.einsum("ij,ij->i", pts, pts))
        zero = np.flatnonzero(norms == 0.0)
        if zero.size:
            raise ZeroNormVector(
                f"cosine distance undefined for zero-norm row {int(zero[0])}"
            )
    else:
        norms = np.empty(0)

    idx = np.arange(n)
    out = np.empty(n, dtype=np.int64)
    for p in range(n):
        d = _naive_row(pts, norms, metric, p)
        order = np.lexsort((idx, d))
        order = order[order != p]
        out[p] = int(np.argmax(labels[order] != labels[p])) + 1
    return out


@dataclass(frozen=True)
class SweepMismatch:
    instance: int
    config: dict
    sample_index: int
    fast_value: int
    oracle_value: int


def equivalence_sweep(
    instances: int = 50,
    seed: int = 0,
    n_values: tuple[int, ...] = (200, 1000, 2000),
    d_values: tuple[int, ...] = (2, 16, 64),
    scan=kstar_scan,
    oracle=kstar_scan_oracle,
) -> list[SweepMismatch]:
    """Run `instances` random configurations through both implementations
    and return every elementwise disagreement (empty list = pass).

    Configurations cycle the n/d grids, both metrics, and 2..20 classes.
    """
    from .types import build_embedding_set

    rng = np.random.default_rng(seed)
    mismatches: list[SweepMismatch] = []
    for i in range(instances):
        config = {
            "n": n_values[i % len(n_values)],
            "d": d_values[(i // len(n_values)) % len(d_values)],
            "classes": 2 + i % 19,
            "metric": METRICS[i % 2],
            "seed": int(rng.integers(2**63)),
        }
        g = np.random.default_rng(config["seed"])
        points = g.standard_normal((config["n"], config["d"])).astype(np.float32)
        labels = g.integers(0, config["classes"], size=config["n"])
        labels[: config["classes"]] = np.arange(config["classes"])  # all present
        es = build_embedding_set(points, labels)
        fast = scan(es, metric=config["metric"])
        ref = oracle(es, metric=config["metric"])
        bad = np.flatnonzero(fast != ref)
        for j in bad:
            mismatches.append(
                SweepMismatch(
                    instance=i,
                    config=config,
                    sample_index=int(j),
                    fast_value=int(fast[j]),
                    oracle_value=int(ref[j]),
                )
            )
    return mismatches
