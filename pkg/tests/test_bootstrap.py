import csv

import numpy as np
import pytest

from stochdom import analytic_rv as rv
from stochdom.bootstrap import (ConfidenceBand, band_bounds, bootstrap_band, feasible_limit,
                                write_band_csv)
from stochdom.cases import CASE2_A, CASE2_B
from stochdom.errors import InputError
from stochdom.quantile_rv import c_d_from_diff, c_p_from_diff

U01 = rv.uniform(0, 1)


def null_pair(n, seed):
    return rv.sample(U01, n, [seed, 0]), rv.sample(U01, n, [seed, 1])


@pytest.fixture(scope="module")
def case2_band():
    a = rv.sample(CASE2_A, 400, [1, 0])
    b = rv.sample(CASE2_B, 400, [1, 1])
    return bootstrap_band(a, b, 0.05, seed=42)


class TestShape:
    def test_ordering_and_clamp(self, sample_pairs):
        for a, b in sample_pairs[:40]:
            band = bootstrap_band(a, b, resamples=100, seed=1)
            lim = feasible_limit(band.x)
            assert np.all(band.lower <= band.upper)
            assert np.all(np.abs(band.lower) <= lim) and np.all(np.abs(band.upper) <= lim)
            assert band.lower[0] == band.upper[0] == band.lower[-1] == band.upper[-1] == 0

    def test_grid(self):
        a, b = null_pair(50, 0)
        band = bootstrap_band(a, b, resamples=100)
        assert band.n == 50
        np.testing.assert_array_equal(band.x, np.arange(101) / 100)

    def test_degenerate_input_collapses(self):
        band = bootstrap_band(np.full(20, 3.0), np.full(20, 3.0), resamples=100)
        assert not np.any(band.lower) and not np.any(band.upper)


class TestValidation:
    @pytest.mark.parametrize("alpha", [0.0, 1.0, -0.5])
    def test_alpha(self, alpha):
        with pytest.raises(InputError):
            bootstrap_band([1, 2], [3, 4], alpha=alpha)

    def test_resamples(self):
        with pytest.raises(InputError):
            bootstrap_band([1, 2], [3, 4], resamples=50)

    def test_size_mismatch(self):
        with pytest.raises(InputError):
            bootstrap_band([1, 2], [3], resamples=100)


def test_deterministic():
    a, b = null_pair(200, 3)
    b1 = bootstrap_band(a, b, seed=9)
    b2 = bootstrap_band(a, b, seed=9)
    np.testing.assert_array_equal(b1.lower, b2.lower)
    np.testing.assert_array_equal(b1.upper, b2.upper)
    b3 = bootstrap_band(a, b, seed=10)
    assert not np.array_equal(b1.upper, b3.upper)


def test_wider_level_contains_narrower():
    for seed in range(5):
        a, b = null_pair(150, seed)
        narrow = bootstrap_band(a, b, 0.05, seed=seed)
        wide = bootstrap_band(a, b, 0.01, seed=seed)
        assert np.all(wide.lower <= narrow.lower)
        assert np.all(wide.upper >= narrow.upper)


def test_band_shrinks_with_sample_size():
    def width(n):
        out = []
        for seed in range(20):
            a, b = null_pair(n, seed)
            band = bootstrap_band(a, b, resamples=300, seed=seed)
            mid = band.x.size // 2
            out.append(band.upper[mid] - band.lower[mid])
        return np.median(out)

    assert width(1000) < width(100)


class TestBounds:
    def test_zero_width_band_gives_point_estimates(self):
        a, b = null_pair(80, 2)
        band = bootstrap_band(a, b, resamples=100)
        flat = ConfidenceBand(band.alpha, band.x, band.diff, band.diff, band.diff,
                              band.resamples, band.seed)
        c_p = c_p_from_diff(flat.curve())
        c_d = c_d_from_diff(flat.curve())
        assert band_bounds(flat) == (c_p, c_p, c_d, c_d)

    def test_bounds_bracket_point_estimates(self, sample_pairs):
        for a, b in sample_pairs[:40]:
            band = bootstrap_band(a, b, resamples=100, seed=0)
            lo_p, hi_p, lo_d, hi_d = band_bounds(band)
            assert 0 <= lo_p <= c_p_from_diff(band.curve()) <= hi_p <= 1
            assert 0 <= lo_d <= c_d_from_diff(band.curve()) <= hi_d <= 1

    def test_disjoint_samples(self):
        band = bootstrap_band(np.arange(1, 101), np.arange(101, 201), 0.05)
        assert band_bounds(band)[0] > 0.9

    def test_null_c_d_interval_contains_half(self):
        hits = 0
        for seed in range(200):
            a, b = null_pair(100, seed)
            lo_d, hi_d = band_bounds(bootstrap_band(a, b, seed=seed))[2:]
            hits += lo_d <= 0.5 <= hi_d
        assert hits >= 0.95 * 200


def test_case2_shape(case2_band):
    x = case2_band.x
    early = (x > 0) & (x <= 0.1)
    assert np.any(case2_band.upper[early] < 0)
    bulk = (x >= 0.25) & (x <= 0.95)
    assert np.all(case2_band.lower[bulk] > 0)


def test_csv(tmp_path, case2_band):
    path = tmp_path / "band.csv"
    write_band_csv(case2_band, path)
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["x", "lower", "diff", "upper"]
    assert len(rows) == case2_band.x.size + 1
    data = np.array(rows[1:], dtype=float)
    np.testing.assert_array_equal(data[:, 1], case2_band.lower)
    np.testing.assert_array_equal(data[:, 3], case2_band.upper)
