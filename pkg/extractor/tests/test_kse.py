import struct

import numpy as np
import pytest

from kse_extractor.kse import read_kse, write_kse


def test_layout_is_exact(tmp_path):
    points = np.array([[1.0, 2.0], [3.0, 4.0]], dtype=np.float32)
    labels = np.array([0, 1])
    path = tmp_path / "t.kse"
    write_kse(points, labels, {0: "a", 1: "b"}, path)
    blob = path.read_bytes()
    assert blob[:4] == b"KSE1"
    n, d, c = struct.unpack_from("<QII", blob, 4)
    assert (n, d, c) == (2, 2, 2)
    assert blob[20:36] == points.astype("<f4").tobytes()
    assert blob[36:44] == np.array([0, 1], dtype="<u4").tobytes()
    (names_len,) = struct.unpack_from("<I", blob, 44)
    names = blob[48:48 + names_len].decode()
    assert names == '{"0":"a","1":"b"}'
    assert len(blob) == 48 + names_len


def test_roundtrip(tmp_path):
    rng = np.random.default_rng(0)
    points = rng.standard_normal((7, 5)).astype(np.float32)
    labels = rng.integers(0, 3, 7)
    labels[:3] = [0, 1, 2]
    path = tmp_path / "r.kse"
    write_kse(points, labels, {0: "x"}, path)
    back_points, back_labels, names = read_kse(path)
    assert back_points.tobytes() == points.tobytes()
    assert list(back_labels) == list(labels)
    assert names == {0: "x"}


def test_shape_validation(tmp_path):
    with pytest.raises(ValueError):
        write_kse(np.zeros(4, dtype=np.float32), np.zeros(4), {}, tmp_path / "x.kse")
    with pytest.raises(ValueError):
        write_kse(
            np.zeros((4, 2), dtype=np.float32), np.zeros(3), {}, tmp_path / "x.kse"
        )
