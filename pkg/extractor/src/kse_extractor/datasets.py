"""Dataset resolution: torchvision names, synthetic smoke-test data, or
image folders. Returns (dataset, names) where names maps label -> class
name in the dataset's canonical order."""

from __future__ import annotations

import os
from pathlib import Path

import torchvision.datasets as tvd
import torchvision.transforms as T

from .errors import DatasetNotFound

DATA_ROOT_ENV = "KSE_DATA_ROOT"

_FOLDER_TRANSFORM = T.Compose(
    [T.Resize(256), T.CenterCrop(224), T.ToTensor()]
)

_ZOO = {
    "cifar10": (tvd.CIFAR10, T.ToTensor()),
    "cifar100": (tvd.CIFAR100, T.ToTensor()),
    "mnist": (tvd.MNIST, T.Compose([T.Grayscale(3), T.ToTensor()])),
    "fashion-mnist": (tvd.FashionMNIST, T.Compose([T.Grayscale(3), T.ToTensor()])),
}


def _data_root() -> str:
    return os.environ.get(DATA_ROOT_ENV, str(Path.home() / ".cache" / "kse-extractor"))


def _parse_fake(spec: str):
    params = {"n": 256, "classes": 10, "size": 32}
    _, _, tail = spec.partition(":")
    if tail:
        for item in tail.split(","):
            key, _, value = item.partition("=")
            if key not in params or not value.isdigit():
                raise DatasetNotFound(f"bad fake dataset parameter {item!r}")
            params[key] = int(value)
    return params


def resolve_dataset(spec: str, split: str):
    if spec == "fake" or spec.startswith("fake:"):
        p = _parse_fake(spec)
        ds = tvd.FakeData(
            size=p["n"],
            image_size=(3, p["size"], p["size"]),
            num_classes=p["classes"],
            transform=T.ToTensor(),
        )
        return ds, {i: f"class{i}" for i in range(p["classes"])}

    if spec.startswith("folder:"):
        root = spec[len("folder:"):]
        if not Path(root).is_dir():
            raise DatasetNotFound(f"image folder not found: {root}")
        ds = tvd.ImageFolder(root, transform=_FOLDER_TRANSFORM)
        return ds, {i: name for i, name in enumerate(ds.classes)}

    if spec in _ZOO:
        cls, transform = _ZOO[spec]
        try:
            ds = cls(
                root=_data_root(),
                train=(split == "train"),
                transform=transform,
                download=False,
            )
        except RuntimeError as e:
            raise DatasetNotFound(
                f"{spec} not present under {_data_root()} "
                f"(set ${DATA_ROOT_ENV} or pre-download): {e}"
            ) from e
        names = {i: str(name) for i, name in enumerate(getattr(ds, "classes", []))}
        return ds, names

    raise DatasetNotFound(
        f"unknown dataset {spec!r}; expected one of {sorted(_ZOO)}, "
        "'fake[:n=..,classes=..,size=..]', or 'folder:PATH'"
    )
