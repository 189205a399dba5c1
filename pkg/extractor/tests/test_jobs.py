import pytest

from kse_extractor.datasets import resolve_dataset
from kse_extractor.errors import DatasetNotFound, InvalidJob, ModelNotFound
from kse_extractor.jobs import ExtractionJob
from kse_extractor.models import build_feature_extractor, resolve_model


def job(tmp_path, **kw):
    base = dict(model="mobilenet_v3_small", dataset="fake:n=16",
                output=str(tmp_path / "o.kse"))
    base.update(kw)
    return ExtractionJob(**base)


def test_batch_size_validated(tmp_path):
    with pytest.raises(InvalidJob):
        job(tmp_path, batch_size=0).validate()


def test_output_dir_must_exist(tmp_path):
    with pytest.raises(InvalidJob):
        job(tmp_path, output=str(tmp_path / "missing" / "o.kse")).validate()


def test_unknown_model():
    with pytest.raises(ModelNotFound):
        resolve_model("definitely_not_a_model", "none", "cpu")


def test_missing_checkpoint():
    with pytest.raises(ModelNotFound):
        resolve_model("mobilenet_v3_small", "/nonexistent/weights.pt", "cpu")


def test_unknown_dataset():
    with pytest.raises(DatasetNotFound):
        resolve_dataset("no_such_dataset", "test")


def test_missing_folder():
    with pytest.raises(DatasetNotFound):
        resolve_dataset("folder:/nonexistent/path", "test")


def test_bad_fake_params():
    with pytest.raises(DatasetNotFound):
        resolve_dataset("fake:bogus=3", "test")


def test_fake_dataset_names():
    ds, names = resolve_dataset("fake:n=8,classes=3,size=16", "test")
    assert len(ds) == 8
    assert names == {0: "class0", 1: "class1", 2: "class2"}


def test_unknown_layer_rejected():
    model = resolve_model("mobilenet_v3_small", "none", "cpu")
    with pytest.raises(InvalidJob):
        build_feature_extractor(model, "not_a_node")


def test_default_layer_is_flatten():
    model = resolve_model("mobilenet_v3_small", "none", "cpu")
    _, resolved = build_feature_extractor(model, "default")
    assert resolved == "flatten"
