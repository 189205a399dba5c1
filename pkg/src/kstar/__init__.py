"""Latent-space quality analysis from cross-class nearest-neighbor ranks.

For every labeled sample, find the 1-based neighbor rank at which a
sample of a different concept first appears; normalize by the concept's
size; summarize each concept's distribution by its skewness; classify it
as fractured, overlapped, or clustered; and aggregate per-space
coefficients (pooled skewness and the per-concept average) so latent
spaces of different models can be compared objectively.
"""

__version__ = "0.1.0"

from .types import (  # noqa: E402
    ConceptPartition,
    ConceptSummary,
    EmbeddingSet,
    KStarResult,
    Pattern,
    SpaceReport,
    build_embedding_set,
    partition_by_concept,
)
from .neighbors import (  # noqa: E402
    NeighborRank,
    equivalence_sweep,
    kstar_scan,
    kstar_scan_oracle,
    pairwise_distance_block,
    sorted_neighbors,
)
from .distribution import (  # noqa: E402
    ConceptDistribution,
    build_distributions,
    pool_distributions,
)
from .stats import (  # noqa: E402
    SkewnessValue,
    classify_pattern,
    count_patterns,
    gamma_approx,
    gamma_true,
    histogram_counts,
    skewness,
)
from .analysis import analyze  # noqa: E402
from .synth import SynthSpec, generate  # noqa: E402
from .io import (  # noqa: E402
    read_csv,
    read_kse,
    read_report,
    write_kse,
    write_report,
)

__all__ = [
    "__version__",
    "ConceptPartition",
    "ConceptSummary",
    "EmbeddingSet",
    "KStarResult",
    "Pattern",
    "SpaceReport",
    "build_embedding_set",
    "partition_by_concept",
    "NeighborRank",
    "equivalence_sweep",
    "kstar_scan",
    "kstar_scan_oracle",
    "pairwise_distance_block",
    "sorted_neighbors",
    "ConceptDistribution",
    "build_distributions",
    "pool_distributions",
    "SkewnessValue",
    "classify_pattern",
    "count_patterns",
    "gamma_approx",
    "gamma_true",
    "histogram_counts",
    "skewness",
    "analyze",
    "SynthSpec",
    "generate",
    "read_csv",
    "read_kse",
    "read_report",
    "write_kse",
    "write_report",
]
