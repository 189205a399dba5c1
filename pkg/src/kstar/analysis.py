"""End-to-end pipeline: embedding set in, space report out."""

from __future__ import annotations

from typing import Optional

import numpy as np

from .distribution import build_distributions, pool_distributions
from .errors import AllDegenerate
from .neighbors import check_metric, kstar_scan
from .stats import (
    DEFAULT_BINS,
    SkewnessValue,
    classify_pattern,
    count_patterns,
    gamma_approx,
    gamma_true,
    histogram_counts,
    skewness,
)
from .types import ConceptSummary, EmbeddingSet, KStarResult, SpaceReport


def analyze(
    embedding_set: EmbeddingSet,
    metric: str = "euclidean",
    bins: int = DEFAULT_BINS,
    workers: int = 1,
    metadata: Optional[dict] = None,
    include_raw: bool = False,
) -> SpaceReport:
    """Scan cross-class ranks, build per-concept distributions, classify
    each concept, and aggregate the pooled and averaged skewness.

    When every concept is degenerate the averaged coefficient has no finite
    inputs and is reported as undefined rather than raising.
    """
    check_metric(metric)
    raw = kstar_scan(embedding_set, metric=metric, workers=workers)
    sizes = embedding_set.concept_sizes()
    normalized = raw.astype(np.float64) / sizes[embedding_set.labels]
    result = KStarResult(
        per_sample_kstar=raw, per_sample_normalized=normalized, metric=metric
    )

    distributions = build_distributions(embedding_set, raw)
    summaries: list[ConceptSummary] = []
    per_concept_skew: list[SkewnessValue] = []
    for dist in distributions:
        c = dist.concept_id
        sk = skewness(dist.normalized_values)
        per_concept_skew.append(sk)
        mean = float(dist.normalized_values.mean())
        pattern, leaning = classify_pattern(sk.value, mean)
        members = np.flatnonzero(embedding_set.labels == c)
        summaries.append(
            ConceptSummary(
                concept_id=c,
                name=embedding_set.concept_name(c),
                sample_count=int(sizes[c]),
                gamma=sk.value,
                mean_kstar=mean,
                pattern=pattern,
                degenerate_leaning=leaning,
                histogram=histogram_counts(raw[members], int(sizes[c]), bins),
            )
        )

    pooled = pool_distributions(distributions)
    g_true = gamma_true(pooled)
    try:
        g_approx = gamma_approx(per_concept_skew)
    except AllDegenerate:
        g_approx = SkewnessValue(value=None, n_used=0)

    return SpaceReport(
        metric=metric,
        n=embedding_set.n,
        d=embedding_set.dim,
        concept_count=embedding_set.concept_count,
        histogram_bins=bins,
        gamma_true=g_true.value,
        gamma_true_n=g_true.n_used,
        gamma_approx=g_approx.value,
        gamma_approx_concepts=g_approx.n_used,
        degenerate_excluded=embedding_set.concept_count - g_approx.n_used,
        concept_summaries=summaries,
        pattern_counts=count_patterns(summaries),
        metadata=dict(metadata or {}),
        source=embedding_set.source,
        raw=result if include_raw else None,
    )
