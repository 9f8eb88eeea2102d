import numpy as np
import pytest


def random_sample_pairs(count=500, seed=2024, tie_fraction=0.3):
    """Sample pairs with n in 3..50; a share of them drawn from a few
    integers so that ties occur within and across samples."""
    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(count):
        n = int(rng.integers(3, 51))
        if rng.random() < tie_fraction:
            k = int(rng.integers(2, max(3, n // 3) + 1))
            a = rng.integers(0, k, n).astype(float)
            b = rng.integers(0, k, n).astype(float)
        else:
            shift = rng.uniform(-1, 1)
            a = rng.normal(0, 1, n)
            b = rng.normal(shift, rng.uniform(0.5, 2), n)
        pairs.append((a, b))
    return pairs


@pytest.fixture(scope="session")
def sample_pairs():
    return random_sample_pairs()
