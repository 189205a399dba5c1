from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .errors import InvalidJob


@dataclass(frozen=True)
class ExtractionJob:
    """One extraction run: a model over a dataset split, features to a
    KSE file.

    model: torchvision zoo name (e.g. "resnet18", "mobilenet_v3_small").
    weights: "none" (random init), "default" (zoo pretrained, needs
        network or a local cache), or a path to a state_dict checkpoint.
    dataset: zoo name ("cifar10", "mnist", ...), "fake[:n=..,classes=..,
        size=..]" for a synthetic smoke-test set, or "folder:PATH" for an
        ImageFolder tree.
    feature_layer: graph node to export; "default" picks the
        pre-classifier "flatten" node when the model has one.
    limit: cap on the number of samples (None = whole split).
    """

    model: str
    dataset: str
    output: str
    split: str = "test"
    batch_size: int = 32
    device: str = "cpu"
    feature_layer: str = "default"
    weights: str = "none"
    limit: Optional[int] = None

    def validate(self) -> None:
        if self.batch_size < 1:
            raise InvalidJob(f"batch_size must be >= 1, got {self.batch_size}")
        if self.limit is not None and self.limit < 2:
            raise InvalidJob(f"limit must be >= 2, got {self.limit}")
        parent = Path(self.output).resolve().parent
        if not parent.is_dir():
            raise InvalidJob(f"output directory does not exist: {parent}")
