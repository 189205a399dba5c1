"""Core domain types for labeled embedding sets and analysis results.

Labels are re-indexed densely to 0..C-1 at construction; the original
identifiers are kept so reports can show them. All arrays are frozen
(non-writeable) after validation, so instances are safe to share across
threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    LengthMismatch,
    NonFiniteValue,
    SingleConcept,
    TooFewSamples,
)


class Pattern(enum.Enum):
    """How one concept's samples sit in the latent space.

    FRACTURED   concept split into sub-clusters with other concepts between
                them (skewness > 0.5).
    OVERLAPPED  concept intermixed with others (skewness in [-0.5, 0.5]).
    CLUSTERED   concept forms one homogeneous cluster (skewness < -0.5).
    DEGENERATE  zero-variance rank distribution; skewness undefined. A
                leaning (clustered- or fractured-like) is assigned from the
                mean instead.
    """

    FRACTURED = "fractured"
    OVERLAPPED = "overlapped"
    CLUSTERED = "clustered"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class EmbeddingSet:
    """n labeled points in d-dimensional latent space.

    points (n, d) float32; labels (n,) int32 dense in 0..C-1;
    original_ids (C,) maps dense id -> the label value passed at
    construction; concept_names maps dense id -> display name.
    """

    points: np.ndarray
    labels: np.ndarray
    original_ids: np.ndarray
    concept_names: dict[int, str] = field(default_factory=dict)
    source: Optional[str] = None

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def concept_count(self) -> int:
        return len(self.original_ids)

    def concept_sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.concept_count)

    def original_labels(self) -> np.ndarray:
        """Recover the label array as passed to build_embedding_set."""
        return self.original_ids[self.labels]

    def concept_name(self, concept_id: int) -> str:
        return self.concept_names.get(concept_id, str(self.original_ids[concept_id]))


@dataclass(frozen=True)
class ConceptPartition:
    """Row indices of one concept's members, strictly increasing."""

    concept_id: int
    member_indices: np.ndarray


@dataclass(frozen=True)
class KStarResult:
    """Per-sample cross-class neighbor ranks.

    per_sample_kstar[p] is the 1-based rank (self excluded) of the nearest
    neighbor whose concept differs from p's; per_sample_normalized divides
    by the size of p's concept, landing in (0, 1].
    """

    per_sample_kstar: np.ndarray
    per_sample_normalized: np.ndarray
    metric: str


@dataclass(frozen=True)
class ConceptSummary:
    """One concept's rank distribution summarized for reporting."""

    concept_id: int
    name: str
    sample_count: int
    gamma: Optional[float]
    mean_kstar: float
    pattern: Pattern
    degenerate_leaning: Optional[Pattern]
    histogram: np.ndarray


@dataclass(frozen=True)
class SpaceReport:
    """Whole-space analysis: pooled and averaged skewness plus per-concept
    summaries. gamma_true is the skewness of all normalized ranks pooled;
    gamma_approx averages the finite per-concept skewness values
    (degenerate concepts excluded, their count recorded)."""

    metric: str
    n: int
    d: int
    concept_count: int
    histogram_bins: int
    gamma_true: Optional[float]
    gamma_true_n: int
    gamma_approx: Optional[float]
    gamma_approx_concepts: int
    degenerate_excluded: int
    concept_summaries: list[ConceptSummary]
    pattern_counts: dict[str, int]
    metadata: dict
    source: Optional[str] = None
    tie_break: str = "ascending-index"
    raw: Optional[KStarResult] = None


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def build_embedding_set(
    points,
    labels,
    names: Optional[dict] = None,
    source: Optional[str] = None,
) -> EmbeddingSet:
    """Validate raw arrays and construct an EmbeddingSet.

    Labels may be any integers; they are re-indexed densely (sorted order
    of the distinct values) and the originals preserved. `names` is keyed
    by the original label values.

    Raises TooFewSamples (n < 2), LengthMismatch, NonFiniteValue, and
    SingleConcept (fewer than 2 distinct labels).
    """
    pts = np.ascontiguousarray(points, dtype=np.float32)
    if pts.ndim != 2:
        raise LengthMismatch(f"points must be 2-D, got shape {pts.shape}")
    n, d = pts.shape
    if n < 2:
        raise TooFewSamples(f"need at least 2 samples, got {n}")
    if d < 1:
        raise LengthMismatch("points must have at least 1 dimension")

    lab = np.asarray(labels)
    if lab.ndim != 1:
        raise LengthMismatch(f"labels must be 1-D, got shape {lab.shape}")
    if len(lab) != n:
        raise LengthMismatch(f"{n} points but {len(lab)} labels")
    if not np.issubdtype(lab.dtype, np.integer):
        raise LengthMismatch(f"labels must be integers, got dtype {lab.dtype}")
    if lab.min() < 0:
        raise LengthMismatch("concept identifiers must be non-negative")

    if not np.all(np.isfinite(pts)):
        bad = int(np.flatnonzero(~np.isfinite(pts).all(axis=1))[0])
        raise NonFiniteValue(f"non-finite coordinate in row {bad}")

    original_ids = np.unique(lab)
    if len(original_ids) < 2:
        raise SingleConcept(
            "need at least 2 distinct concepts; cross-class ranks are "
            f"undefined with {len(original_ids)}"
        )
    dense = np.searchsorted(original_ids, lab).astype(np.int32)

    concept_names: dict[int, str] = {}
    if names:
        by_original = {int(k): str(v) for k, v in names.items()}
        for c, orig in enumerate(original_ids):
            if int(orig) in by_original:
                concept_names[c] = by_original[int(orig)]

    return EmbeddingSet(
        points=_freeze(pts),
        labels=_freeze(dense),
        original_ids=_freeze(original_ids.astype(np.int64)),
        concept_names=concept_names,
        source=source,
    )


def partition_by_concept(embedding_set: EmbeddingSet) -> list[ConceptPartition]:
    """Group row indices by concept; the partitions disjointly cover 0..n-1."""
    return [
        ConceptPartition(
            concept_id=c,
            member_indices=_freeze(np.flatnonzero(embedding_set.labels == c)),
        )
        for c in range(embedding_set.concept_count)
    ]
