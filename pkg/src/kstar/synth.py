"""Seeded generators for latent spaces that exhibit each spatial pattern.

All three recipes place Gaussian blobs (standard deviation = noise_scale
per coordinate) at deterministic centers:

  clustered   one blob per concept; centers stacked along coordinate axes
              25 noise units apart, far beyond any blob's extent.
  fractured   each concept split into 3 sub-blobs on a chain along the
              first axis, adjacent sites 2 noise units apart, with sites
              cycling through the concepts -- so between any two sub-blobs
              of a concept sit sub-blobs of every other concept, and
              neighborhoods mix at low rank.
  overlapped  half of each concept in a single blob shared by all
              concepts, the other half in a private blob 50 noise units
              away -- shallow samples meet other classes immediately,
              deep samples sit behind roughly half their class.

The separation ratios were chosen empirically so the analysis recovers
the intended skewness band with wide margin at the defaults; they are
module constants, not promises of the only workable geometry.

Randomness: numpy PCG64 (default_rng) seeded with spec.seed. Draw order
is fixed: concepts in id order, sub-blobs in recipe order, one
standard_normal((blob_size, dim)) call per sub-blob. Equal specs produce
byte-identical sets. Reference fixtures are also shipped as data files so
tests do not hinge on the generator's bit stream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpec
from .types import EmbeddingSet, Pattern, build_embedding_set

CLUSTER_SPACING = 25.0
FRACTURE_GAP = 2.0
FRACTURE_SUB_BLOBS = 3
OVERLAP_PRIVATE_DISTANCE = 50.0

MIN_SAMPLES_PER_CONCEPT = 8


@dataclass(frozen=True)
class SynthSpec:
    pattern: Pattern
    concepts: int = 4
    samples_per_concept: int = 60
    dim: int = 8
    seed: int = 0
    noise_scale: float = 1.0


def _validate(spec: SynthSpec) -> None:
    if spec.pattern == Pattern.DEGENERATE:
        raise InvalidSpec("degenerate is an analysis outcome, not a recipe")
    if spec.concepts < 2:
        raise InvalidSpec(f"need at least 2 concepts, got {spec.concepts}")
    if spec.samples_per_concept < MIN_SAMPLES_PER_CONCEPT:
        raise InvalidSpec(
            f"need at least {MIN_SAMPLES_PER_CONCEPT} samples per concept, "
            f"got {spec.samples_per_concept}"
        )
    if spec.dim < 2:
        raise InvalidSpec(f"need dim >= 2, got {spec.dim}")
    if not spec.noise_scale > 0:
        raise InvalidSpec(f"noise_scale must be positive, got {spec.noise_scale}")


def _axis_center(c: int, dim: int, distance: float) -> np.ndarray:
    """Deterministic well-separated center: walk the axes, stepping further
    out each full cycle. Any two centers are >= distance/sqrt(2) apart."""
    center = np.zeros(dim)
    center[c % dim] = (1 + c // dim) * distance
    return center


def _blob_plan(spec: SynthSpec) -> list[tuple[int, int, np.ndarray]]:
    """(concept, blob_size, center) triples in generation order."""
    m, d, s = spec.samples_per_concept, spec.dim, spec.noise_scale
    plan: list[tuple[int, int, np.ndarray]] = []
    if spec.pattern == Pattern.CLUSTERED:
        for c in range(spec.concepts):
            plan.append((c, m, _axis_center(c, d, CLUSTER_SPACING * s)))
    elif spec.pattern == Pattern.FRACTURED:
        k = FRACTURE_SUB_BLOBS
        sizes = [m // k + (1 if i < m % k else 0) for i in range(k)]
        for c in range(spec.concepts):
            for b in range(k):
                site = b * spec.concepts + c
                center = np.zeros(d)
                center[0] = site * FRACTURE_GAP * s
                plan.append((c, sizes[b], center))
    else:  # overlapped
        for c in range(spec.concepts):
            shared = m // 2
            plan.append((c, shared, np.zeros(d)))
            plan.append((c, m - shared, _axis_center(c, d, OVERLAP_PRIVATE_DISTANCE * s)))
    return plan


def generate(spec: SynthSpec) -> EmbeddingSet:
    """Build the synthetic space described by spec (deterministic)."""
    _validate(spec)
    rng = np.random.default_rng(spec.seed)
    points, labels = [], []
    for concept, size, center in _blob_plan(spec):
        points.append(center + spec.noise_scale * rng.standard_normal((size, spec.dim)))
        labels.append(np.full(size, concept))
    source = (
        f"synth:{spec.pattern.value}"
        f"/concepts={spec.concepts},m={spec.samples_per_concept},"
        f"dim={spec.dim},seed={spec.seed},noise={spec.noise_scale!r}"
    )
    return build_embedding_set(
        np.vstack(points), np.concatenate(labels), source=source
    )
