"""Per-concept normalized rank distributions.

Each concept's raw ranks are divided by that concept's sample count, so
every value lies in (0, 1] and concepts of different sizes become
comparable. Values within a concept follow member-index order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyInput, LengthMismatch
from .types import EmbeddingSet, partition_by_concept


@dataclass(frozen=True)
class ConceptDistribution:
    concept_id: int
    normalized_values: np.ndarray


def build_distributions(
    embedding_set: EmbeddingSet, raw_kstar: np.ndarray
) -> list[ConceptDistribution]:
    """Split raw ranks by concept and normalize by each concept's size."""
    raw = np.asarray(raw_kstar)
    if len(raw) != embedding_set.n:
        raise LengthMismatch(
            f"expected {embedding_set.n} rank values, got {len(raw)}"
        )
    sizes = embedding_set.concept_sizes()
    out = []
    for part in partition_by_concept(embedding_set):
        size = int(sizes[part.concept_id])
        values = raw[part.member_indices]
        assert values.min() >= 1 and values.max() <= size, "rank outside [1, |S_c|]"
        out.append(
            ConceptDistribution(
                concept_id=part.concept_id,
                normalized_values=values.astype(np.float64) / size,
            )
        )
    return out


def pool_distributions(distributions: list[ConceptDistribution]) -> np.ndarray:
    """Concatenate all concepts' normalized values: the whole-space
    distribution used for the pooled skewness coefficient."""
    if not distributions:
        raise EmptyInput("no distributions to pool")
    return np.concatenate([d.normalized_values for d in distributions])
