from pathlib import Path

import numpy as np
import pytest

from kstar import build_embedding_set

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def sep1d():
    """Two well-separated 1-D classes of three points each.

    Exhaustive pairwise enumeration: each point's two classmates are
    strictly nearer than any cross-class point, so every rank is 3.
    """
    points = np.array([[0.0], [1.0], [2.0], [10.0], [11.0], [12.0]], dtype=np.float32)
    return build_embedding_set(
        points, np.array([0, 0, 0, 1, 1, 1]), names={0: "left", 1: "right"}
    )


@pytest.fixture
def frac1d():
    """Class A at 0 and 10 with class B (5.0, 5.1) in between.

    By enumeration: both A points have a B point as nearest neighbor
    (rank 1); each B point sees its B partner first, then A (rank 2, with
    5.0's two A neighbors tied at distance 5 and broken toward index 0).
    """
    points = np.array([[0.0], [10.0], [5.0], [5.1]], dtype=np.float32)
    return build_embedding_set(points, np.array([0, 0, 1, 1]))


def random_set(seed: int, n: int, d: int, classes: int, scale: float = 1.0):
    """Gaussian cloud with all `classes` labels guaranteed present."""
    rng = np.random.default_rng(seed)
    points = (scale * rng.standard_normal((n, d))).astype(np.float32)
    labels = rng.integers(0, classes, size=n)
    labels[:classes] = np.arange(classes)
    return build_embedding_set(points, labels)


def exact_skewness(values):
    """Arbitrary-precision population skewness (mpmath, 60 digits).

    Independent oracle for the float64 implementation: same formula, exact
    arithmetic on the binary values of the inputs. Returns None when the
    variance vanishes.
    """
    import mpmath as mp

    with mp.workdps(60):
        vals = [mp.mpf(float(v)) for v in values]
        n = len(vals)
        mu = mp.fsum(vals) / n
        m2 = mp.fsum((v - mu) ** 2 for v in vals) / n
        if m2 == 0:
            return None
        m3 = mp.fsum((v - mu) ** 3 for v in vals) / n
        return float(m3 / m2 ** mp.mpf("1.5"))
