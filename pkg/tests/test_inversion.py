import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detboot import (
    GridCdf,
    GridConfig,
    GridDensity,
    MixtureSpec,
    SupportBounds,
    component_char,
    compute_distribution,
    density_to_cdf,
    from_sample,
    invert_to_density,
    mixture_char,
    quantile,
    support_bounds,
)
from detboot.errors import AlphaOutOfRange, TotalMassError
from detboot.fft import ifft
from detboot.inversion import hermitian_inverse


def _enumerate_on_grid(atoms_per_component, coeffs, z_L, width, N):
    bins = np.zeros(N)
    for combo in itertools.product(*atoms_per_component):
        z = sum(a * x for a, x in zip(coeffs, combo))
        p = math.prod(1 / len(v) for v in atoms_per_component)
        bins[int(round((z - z_L) / width)) % N] += p
    return bins


def test_point_mass_support():
    g = component_char(from_sample([2.5]), 1.0, 1.0, 6)
    d = invert_to_density(g, SupportBounds(2.5, 2.5))
    assert d.bins.tolist() == [1, 0, 0, 0, 0, 0]
    assert d.T == 1.0 and d.z_L == 2.5


def test_two_coins_on_grid(coin):
    expected = _enumerate_on_grid([[0, 1], [0, 1]], [1, 1], 0.0, 1.0, 4)
    assert expected.tolist() == [0.25, 0.5, 0.25, 0.0]
    g = mixture_char([component_char(coin, 1.0, 4.0, 4)] * 2)
    d = invert_to_density(g, SupportBounds(0.0, 2.0))
    np.testing.assert_allclose(d.bins, expected, rtol=0, atol=1e-12)
    assert d.edges()[:4].tolist() == [0.0, 1.0, 2.0, 3.0]


def test_reference_scale_mass_and_mean(uniform_sample):
    spec = MixtureSpec.iid(from_sample(uniform_sample), [1.0] * 5)
    d, _ = compute_distribution(spec, GridConfig(1000))
    assert abs(d.total() - 1) <= 1e-9
    assert abs(d.mean() - 5 * uniform_sample.mean()) <= d.width


def test_hermitian_inverse_is_two_re_minus_one_over_n():
    rng = np.random.default_rng(0)
    for N in (1, 2, 5, 40, 101, 1000):
        g = rng.normal(size=N) + 1j * rng.normal(size=N)
        g[0] = 1.0
        half = np.zeros(N, complex)
        half[: N // 2 + 1] = g[: N // 2 + 1]
        if N % 2 == 0:
            half[N // 2] /= 2
        expected = 2 * ifft(half).real - 1 / N if N > 1 else np.array([1.0])
        np.testing.assert_allclose(hermitian_inverse(g), expected, atol=1e-13)


def test_hermitian_inverse_matches_plain_inverse_for_periodic_spectra():
    # a spectrum of on-grid atoms is N-periodic and conjugate symmetric
    rng = np.random.default_rng(1)
    N = 48
    p = rng.dirichlet(np.ones(N))
    g = np.fft.fft(p)
    np.testing.assert_allclose(hermitian_inverse(g), p, atol=1e-14)


def test_cdf_examples():
    c = density_to_cdf(GridDensity(0.0, 4.0, [1, 0, 0, 0]))
    assert c.cum.tolist() == [1, 1, 1, 1]
    c = density_to_cdf(GridDensity(0.0, 4.0, [0.25, 0.5, 0.25, 0.0]))
    assert c.cum.tolist() == [0.25, 0.75, 1.0, 1.0]
    c = density_to_cdf(GridDensity(0.0, 4.0, [0.5, -1e-12, 0.5 + 1e-12, 0.0]))
    assert np.all(np.diff(c.cum) >= 0) and c.cum[-1] == 1.0


def test_cdf_total_mass_error():
    with pytest.raises(TotalMassError):
        density_to_cdf(GridDensity(0.0, 1.0, [0.5, 0.49]))


def test_quantile_examples():
    c = GridCdf(0.0, 4.0, np.array([0.25, 0.75, 1.0, 1.0]))
    assert quantile(c, 0.5) == 2.0
    assert quantile(c, 0.25) == 1.0
    assert quantile(c, 0.999) <= c.z_L + c.T
    for bad in (0.0, 1.0, -0.1, 1.5):
        with pytest.raises(AlphaOutOfRange):
            quantile(c, bad)


def test_quantile_point_mass():
    spec = MixtureSpec.iid(from_sample([3.0, 3.0]), [1.0, 1.0])
    _, c = compute_distribution(spec, GridConfig(64))
    for alpha in (0.01, 0.5, 0.99):
        q = quantile(c, alpha)
        assert 6.0 < q <= 6.0 + c.width


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(0.001, 0.999), min_size=2, max_size=10), st.integers(0, 2**32 - 1))
def test_quantile_monotone(alphas, seed):
    rng = np.random.default_rng(seed)
    spec = MixtureSpec.iid(from_sample(rng.normal(size=8)), rng.uniform(-1, 1, size=3))
    _, c = compute_distribution(spec, GridConfig(256, pad=1.25))
    alphas = sorted(alphas)
    qs = [quantile(c, a) for a in alphas]
    assert qs == sorted(qs)


def test_grid_cdf_evaluate_rule():
    c = GridCdf(0.0, 4.0, np.array([0.25, 0.75, 1.0, 1.0]))
    assert c.evaluate([-1.0, 0.0, 0.5, 1.0, 1.5, 2.0, 3.9, 4.0, 9.0]).tolist() == [
        0.0, 0.0, 0.25, 0.25, 0.75, 0.75, 1.0, 1.0, 1.0,
    ]


@pytest.mark.parametrize("lows", [(3, 7), (-9, -2), (-4, 5)], ids=["positive", "negative", "spanning"])
@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_on_grid_exactness_any_sign(lows, seed):
    rng = np.random.default_rng(seed)
    lo, hi = lows
    atoms = [sorted(rng.choice(np.arange(lo, hi + 1), size=3, replace=False).tolist()) for _ in range(3)]
    spec = MixtureSpec(tuple((1.0, from_sample(a)) for a in atoms))
    b = support_bounds(spec)
    N = int(b.T_Z) + 1
    d, _ = compute_distribution(spec, GridConfig(N, period=float(N)))
    expected = _enumerate_on_grid(atoms, [1, 1, 1], b.z_L, 1.0, N)
    np.testing.assert_allclose(d.bins, expected, rtol=0, atol=1e-8)


@pytest.mark.parametrize("shift", [0.0, 13.37, -101.9])
@pytest.mark.parametrize("N", [40, 97, 256])
def test_rotation_of_uncentred_spectrum(shift, N):
    # raw spectra (no origin subtraction) must land on the same bins once rotated
    rng = np.random.default_rng(N)
    dists = [from_sample(rng.uniform(-4, 6, size=5) + shift) for _ in range(3)]
    coeffs = [1.0, -0.5, 2.0]
    spec = MixtureSpec(tuple(zip(coeffs, dists)))
    b = support_bounds(spec)
    T = 1.2 * b.T_Z
    raw = mixture_char([component_char(d, a, T, N) for a, d in zip(coeffs, dists)])
    assert raw.offset == 0.0
    d_raw = invert_to_density(raw, b)
    d_ref, _ = compute_distribution(spec, GridConfig(N, pad=1.2))
    np.testing.assert_allclose(d_raw.bins, d_ref.bins, rtol=0, atol=1e-9)
    assert d_raw.z_L == b.z_L


def test_negative_leakage_kept_in_density():
    spec = MixtureSpec.iid(from_sample([0.0, 0.37, 1.0]), [1.0, 1.0])
    d, c = compute_distribution(spec, GridConfig(64, pad=1.25))
    assert d.bins.min() < 0
    assert np.all(np.diff(c.cum) >= 0) and c.cum.min() >= 0
