import itertools
import math

import numpy as np
import pytest

from detboot import GridConfig, compute_distribution, efron_mean, moving_block, quantile, support_bounds
from detboot.adapters import block_statistics
from detboot.errors import BlockLengthMismatch, EmptySample
from detboot.oracle import brute_force_cdf, ks_distance


def test_efron_structure():
    spec = efron_mean([1, 2, 3, 4])
    assert spec.m == 4 and spec.shift == 0.0
    assert spec.coefficients == [0.5] * 4
    (_, d), = set(spec.components)
    assert d.atoms() == [(-1.5, 0.25), (-0.5, 0.25), (0.5, 0.25), (1.5, 0.25)]


def test_efron_constant_sample():
    spec = efron_mean([3.3, 3.3, 3.3])
    d, c = compute_distribution(spec, GridConfig(32))
    assert d.z_L == 0.0 and d.bins[0] == 1.0
    for alpha in (0.05, 0.5, 0.95):
        assert 0.0 <= quantile(c, alpha) <= c.width


def test_efron_empty():
    with pytest.raises(EmptySample):
        efron_mean([])


def test_efron_two_points_against_resampling():
    x = [0.0, 1.0]
    n = len(x)
    # every equally likely resample, binned on the pipeline grid
    outcomes = [math.sqrt(n) * (sum(r) / n - sum(x) / n) for r in itertools.product(x, repeat=n)]
    T = 2 * math.sqrt(2)
    width = T / 8
    expected = np.zeros(8)
    for z in outcomes:
        expected[int(round((z - min(outcomes)) / width))] += 1 / len(outcomes)
    assert expected.tolist() == [0.25, 0, 0.5, 0, 0.25, 0, 0, 0]
    d, _ = compute_distribution(efron_mean(x), GridConfig(8, pad=2.0))
    np.testing.assert_allclose(d.bins, expected, rtol=0, atol=1e-8)


def test_efron_support_width():
    x = np.random.default_rng(0).normal(size=17)
    b = support_bounds(efron_mean(x))
    assert b.T_Z == pytest.approx(math.sqrt(17) * (x.max() - x.min()), rel=1e-13)


@pytest.mark.parametrize("seed", range(5))
def test_efron_centred(seed):
    x = np.random.default_rng(seed).exponential(size=30)
    d, _ = compute_distribution(efron_mean(x), GridConfig(2048, pad=1.25))
    assert abs(d.mean()) <= d.width


def test_block_example():
    spec, stats = moving_block([1, 2, 3, 4, 5, 6], 2)
    np.testing.assert_allclose(stats.block_means, [1.5, 2.5, 3.5, 4.5, 5.5], atol=0)
    assert stats.grand_mean == 3.5 and stats.block_count == 3 and stats.block_length == 2
    assert spec.m == 3
    assert spec.coefficients == [1 / math.sqrt(3)] * 3
    (_, d), = set(spec.components)
    assert d.values.tolist() == [-2.0, -1.0, 0.0, 1.0, 2.0]
    np.testing.assert_allclose(d.masses, 0.2, atol=1e-15)


def test_block_single_block_is_point_mass():
    spec, stats = moving_block([1, 2, 3, 4], 4)
    assert stats.block_count == 1 and spec.m == 1
    d, _ = compute_distribution(spec, GridConfig(16))
    assert d.z_L == 0.0 and d.bins[0] == 1.0


def test_block_errors():
    with pytest.raises(BlockLengthMismatch):
        moving_block([1, 2, 3], 2)
    with pytest.raises(BlockLengthMismatch):
        moving_block([1, 2, 3], 0)
    with pytest.raises(EmptySample):
        moving_block([], 1)


def test_block_statistics_invariants():
    x = np.random.default_rng(3).normal(size=60)
    s = block_statistics(x, 6)
    assert s.block_means.size == 60 - 6 + 1 and s.block_count * s.block_length == 60
    assert abs(s.grand_mean - np.mean(s.block_means)) <= 1e-12
    np.testing.assert_allclose(s.block_means[7], x[7:13].mean(), atol=1e-14)


@pytest.mark.parametrize("seed", range(5))
def test_block_length_one_is_efron(seed):
    x = np.random.default_rng(seed).normal(size=12)
    spec, _ = moving_block(x, 1)
    assert spec == efron_mean(x)


@pytest.mark.parametrize("x", [[0, 1, 3], [2.0, -1.0, 0.0, 4.0], [1, 2, 2, 7, 9]])
def test_efron_small_against_enumeration_on_grid(x):
    # integer data and a period that puts every resample mean on a grid point
    n = len(x)
    spec = efron_mean(x)
    b = support_bounds(spec)
    steps = round((max(x) - min(x)) * n)
    cfg = GridConfig(steps + 1, period=b.T_Z * (steps + 1) / steps)
    from detboot.oracle import brute_force_density

    d, c = compute_distribution(spec, cfg)
    np.testing.assert_allclose(d.bins, brute_force_density(spec, cfg).bins, rtol=0, atol=1e-8)
    assert ks_distance(c, brute_force_cdf(spec, cfg)) <= 1e-8
