"""Run an extraction job: batched inference, features + labels to KSE,
provenance to a sidecar JSON."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import torch
from torch.utils.data import DataLoader

from . import __version__
from .datasets import resolve_dataset
from .errors import ShapeMismatch
from .jobs import ExtractionJob
from .kse import write_kse
from .models import FEATURE_KEY, build_feature_extractor, resolve_model


def extract(job: ExtractionJob, model=None, dataset=None, names=None) -> Path:
    """Write the job's KSE file and return its path.

    `model`, `dataset`, `names` can be pre-resolved (tests inject stubs);
    by default they come from the job's identifiers. The dataset is
    traversed in its native order without shuffling, so labels are
    reproducible run to run.
    """
    job.validate()
    resolved_layer = job.feature_layer
    if model is None:
        base = resolve_model(job.model, job.weights, job.device)
        model, resolved_layer = build_feature_extractor(base, job.feature_layer)
    if dataset is None:
        dataset, names = resolve_dataset(job.dataset, job.split)
    names = names or {}

    loader = DataLoader(
        dataset, batch_size=job.batch_size, shuffle=False, num_workers=0
    )
    chunks: list[np.ndarray] = []
    labels: list[np.ndarray] = []
    dim = None
    taken = 0
    with torch.no_grad():
        for images, targets in loader:
            out = model(images.to(job.device))
            feats = out[FEATURE_KEY] if isinstance(out, dict) else out
            feats = torch.flatten(feats, start_dim=1)
            if dim is None:
                dim = feats.shape[1]
            elif feats.shape[1] != dim:
                raise ShapeMismatch(
                    f"feature width changed from {dim} to {feats.shape[1]}"
                )
            chunks.append(feats.cpu().to(torch.float32).numpy())
            labels.append(np.asarray(targets, dtype=np.int64))
            taken += len(images)
            if job.limit is not None and taken >= job.limit:
                break

    points = np.concatenate(chunks)
    label_arr = np.concatenate(labels)
    if job.limit is not None:
        points = points[: job.limit]
        label_arr = label_arr[: job.limit]

    out_path = Path(job.output)
    write_kse(points, label_arr, names, out_path)
    sidecar = {
        "model": job.model,
        "weights": job.weights,
        "feature_layer": resolved_layer,
        "dataset": job.dataset,
        "split": job.split,
        "n": int(len(points)),
        "d": int(points.shape[1]),
        "class_names": {str(k): v for k, v in sorted(names.items())},
        "tool": f"kse-extract {__version__}",
    }
    Path(str(out_path) + ".meta.json").write_text(
        json.dumps(sidecar, indent=2) + "\n", encoding="utf-8"
    )
    return out_path
