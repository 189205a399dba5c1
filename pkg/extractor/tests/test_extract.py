import json

import numpy as np
import pytest
import torch

from kse_extractor import ExtractionJob, extract, read_kse
from kse_extractor.datasets import resolve_dataset
from kse_extractor.errors import ShapeMismatch
from kse_extractor.models import resolve_model

MODEL = "mobilenet_v3_small"
FAKE = "fake:n=64,classes=5,size=32"


def make_job(tmp_path, **kw):
    base = dict(model=MODEL, dataset=FAKE, output=str(tmp_path / "out.kse"),
                batch_size=16, limit=48)
    base.update(kw)
    return ExtractionJob(**base)


def test_extract_writes_valid_kse(tmp_path):
    path = extract(make_job(tmp_path))
    points, labels, names = read_kse(path)
    assert points.shape == (48, 576)  # pre-classifier width of this model
    assert points.dtype == np.float32
    assert len(labels) == 48
    assert names == {i: f"class{i}" for i in range(5)}
    assert np.all(np.isfinite(points))


def test_sidecar_metadata(tmp_path):
    path = extract(make_job(tmp_path))
    meta = json.loads(open(str(path) + ".meta.json").read())
    assert meta["model"] == MODEL
    assert meta["feature_layer"] == "flatten"
    assert meta["n"] == 48 and meta["d"] == 576
    assert meta["class_names"]["0"] == "class0"


def test_labels_reproducible_across_runs(tmp_path):
    a = extract(make_job(tmp_path, output=str(tmp_path / "a.kse")))
    b = extract(make_job(tmp_path, output=str(tmp_path / "b.kse")))
    _, labels_a, _ = read_kse(a)
    _, labels_b, _ = read_kse(b)
    assert list(labels_a) == list(labels_b)


def test_checkpoint_weights_give_identical_features(tmp_path):
    model = resolve_model(MODEL, "none", "cpu")
    ckpt = tmp_path / "weights.pt"
    torch.save(model.state_dict(), ckpt)
    a = extract(make_job(tmp_path, output=str(tmp_path / "a.kse"), weights=str(ckpt)))
    b = extract(make_job(tmp_path, output=str(tmp_path / "b.kse"), weights=str(ckpt)))
    pa, la, _ = read_kse(a)
    pb, lb, _ = read_kse(b)
    assert pa.tobytes() == pb.tobytes()
    assert list(la) == list(lb)


def test_limit_truncates_mid_batch(tmp_path):
    path = extract(make_job(tmp_path, limit=20, batch_size=16))
    points, labels, _ = read_kse(path)
    assert len(points) == 20 and len(labels) == 20


def test_shape_mismatch_detected(tmp_path):
    class Erratic(torch.nn.Module):
        def __init__(self):
            super().__init__()
            self.calls = 0

        def forward(self, x):
            self.calls += 1
            width = 8 if self.calls == 1 else 9
            return {"feat": torch.zeros(len(x), width)}

    ds, names = resolve_dataset("fake:n=32,classes=3,size=16", "test")
    with pytest.raises(ShapeMismatch):
        extract(
            make_job(tmp_path, batch_size=16, limit=None),
            model=Erratic(),
            dataset=ds,
            names=names,
        )
