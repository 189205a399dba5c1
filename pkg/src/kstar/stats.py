"""Skewness coefficients and pattern classification.

Skewness here is the population (moment) form m3 / m2^(3/2) with central
moments divided by N -- no small-sample bias correction. It is undefined
when the variance vanishes (or with fewer than 3 values), which genuinely
happens: a perfectly isolated concept has every normalized rank equal
to 1. Such degenerate distributions get no skewness; they are excluded
from the averaged coefficient and classified by their mean instead.

Band boundaries: skewness exactly +/-0.5 counts as overlapped (the open
inequalities belong to the fractured and clustered bands).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import AllDegenerate, EmptyInput, NonFiniteValue
from .types import ConceptSummary, Pattern

VARIANCE_FLOOR = 1e-24
MIN_SAMPLES = 3

FRACTURED_ABOVE = 0.5
CLUSTERED_BELOW = -0.5

DEFAULT_BINS = 50


@dataclass(frozen=True)
class SkewnessValue:
    """A skewness coefficient, or the undefined marker (value None)."""

    value: Optional[float]
    n_used: int

    @property
    def is_defined(self) -> bool:
        return self.value is not None


def skewness(values) -> SkewnessValue:
    """Population skewness of an array: mean cubed deviation over the
    variance to the 3/2. Undefined for degenerate variance or n < 3."""
    v = np.asarray(values, dtype=np.float64)
    if v.size == 0:
        raise EmptyInput("skewness of an empty array")
    if not np.all(np.isfinite(v)):
        raise NonFiniteValue("skewness input contains non-finite values")
    n = v.size
    if n < MIN_SAMPLES:
        return SkewnessValue(value=None, n_used=n)
    dev = v - v.mean()
    m2 = np.mean(dev * dev)
    if m2 < VARIANCE_FLOOR:
        return SkewnessValue(value=None, n_used=n)
    m3 = np.mean(dev * dev * dev)
    return SkewnessValue(value=float(m3 / m2**1.5), n_used=n)


def classify_pattern(
    gamma: Optional[float], mean_normalized: float
) -> tuple[Pattern, Optional[Pattern]]:
    """Map a concept's skewness (and mean, for the degenerate case) to a
    pattern. Returns (pattern, degenerate_leaning); the leaning is set only
    when the skewness is undefined: a degenerate distribution with mean at
    or above 0.5 behaves like a cluster (deep samples), below 0.5 like a
    fracture (uniformly shallow samples)."""
    if gamma is None:
        leaning = Pattern.CLUSTERED if mean_normalized >= 0.5 else Pattern.FRACTURED
        return Pattern.DEGENERATE, leaning
    if gamma > FRACTURED_ABOVE:
        return Pattern.FRACTURED, None
    if gamma < CLUSTERED_BELOW:
        return Pattern.CLUSTERED, None
    return Pattern.OVERLAPPED, None


def gamma_true(pooled_values) -> SkewnessValue:
    """Skewness of the pooled normalized ranks over the whole set."""
    return skewness(pooled_values)


def gamma_approx(per_concept: list[SkewnessValue]) -> SkewnessValue:
    """Arithmetic mean of the finite per-concept skewness values.

    n_used counts the concepts that contributed; degenerate concepts are
    excluded. Raises AllDegenerate when no finite value exists.
    """
    finite = [s.value for s in per_concept if s.value is not None]
    if not finite:
        raise AllDegenerate("every concept has undefined skewness")
    return SkewnessValue(value=float(np.mean(finite)), n_used=len(finite))


def count_patterns(summaries: list[ConceptSummary]) -> dict[str, int]:
    """Tally pattern labels; keys always cover all four patterns."""
    counts = {p.value: 0 for p in Pattern}
    for s in summaries:
        counts[s.pattern.value] += 1
    return counts


def histogram_counts(raw_kstar: np.ndarray, concept_size: int, bins: int) -> np.ndarray:
    """Fixed-bin counts of normalized ranks over (0, 1], right-closed bins.

    Bin b covers (b/bins, (b+1)/bins]. Computed on the integer ranks so bin
    assignment is exact: rank k of size s falls in bin ceil(k*bins/s) - 1.
    """
    raw = np.asarray(raw_kstar, dtype=np.int64)
    idx = (raw * bins + concept_size - 1) // concept_size - 1
    return np.bincount(idx, minlength=bins)
