"""Ground truth for the pipeline: exact enumeration, seeded resampling, KS distance."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .charfn import GridConfig
from .distribution import DiscreteDistribution, _unshifted_bounds, component_range, support_bounds
from .errors import EnumerationTooLarge
from .inversion import GridCdf, GridDensity, point_mass_density
from .mixture import MixtureSpec

DEFAULT_LIMIT = 10_000_000
MC_CHUNK = 8192
# relative distance to an integer grid position below which an outcome counts as on-grid
ON_GRID_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class EmpiricalCdf:
    """Step CDF of a finite set of points, ``F(z) = (weight of points <= z)``.

    Without weights every point carries ``1/B``.
    """

    sorted_values: np.ndarray
    weights: np.ndarray | None = None

    def __post_init__(self):
        v = np.asarray(self.sorted_values, dtype=np.float64)
        if v.ndim != 1 or v.size == 0:
            raise ValueError("need at least one value")
        order = np.argsort(v, kind="stable")
        v = v[order]
        cum = None
        if self.weights is not None:
            w = np.asarray(self.weights, dtype=np.float64)[order]
            cum = np.cumsum(w)
            cum /= cum[-1]
        object.__setattr__(self, "sorted_values", v)
        object.__setattr__(self, "_cum", cum)

    @classmethod
    def from_distribution(cls, dist: DiscreteDistribution) -> "EmpiricalCdf":
        return cls(dist.values, dist.masses)

    @property
    def B(self) -> int:
        return int(self.sorted_values.size)

    def evaluate(self, z) -> np.ndarray:
        idx = np.searchsorted(self.sorted_values, np.asarray(z, dtype=np.float64), side="right")
        if self._cum is None:
            return idx / self.B
        return np.where(idx == 0, 0.0, self._cum[np.maximum(idx - 1, 0)])


def _check_size(spec: MixtureSpec, limit: int) -> int:
    total = math.prod(d.size for _, d in spec.components)
    if total > limit:
        raise EnumerationTooLarge(f"{total} outcomes exceed the enumeration limit {limit}")
    return total


def enumerate_outcomes(spec: MixtureSpec, limit: int = DEFAULT_LIMIT) -> tuple[np.ndarray, np.ndarray]:
    """Every outcome of ``Z - shift - z_L`` with its probability (unmerged)."""
    _check_size(spec, limit)
    values = np.zeros(1)
    probs = np.ones(1)
    for a, d in spec.components:
        low = component_range(a, d)[0]
        values = (values[:, None] + (a * d.values - low)[None, :]).ravel()
        probs = (probs[:, None] * d.masses[None, :]).ravel()
    return values, probs


def exact_distribution(spec: MixtureSpec, limit: int = DEFAULT_LIMIT) -> DiscreteDistribution:
    """The law of ``Z`` by full enumeration, equal outcomes merged."""
    values, probs = enumerate_outcomes(spec, limit)
    lo, _ = _unshifted_bounds(spec)
    return DiscreteDistribution.from_atoms(values + (lo + spec.shift), probs)


def bin_index(offsets: np.ndarray, width: float, N: int) -> np.ndarray:
    """Bin of each distance above ``z_L``; values within tolerance of an edge snap to it."""
    pos = offsets / width
    near = np.round(pos)
    on_grid = np.abs(pos - near) <= ON_GRID_TOL * np.maximum(1.0, np.abs(pos))
    idx = np.where(on_grid, near, np.floor(pos)).astype(np.int64)
    return np.mod(idx, N)


def brute_force_density(spec: MixtureSpec, cfg: GridConfig, limit: int = DEFAULT_LIMIT) -> GridDensity:
    """Exact bin masses on the pipeline's grid (same period, same edges, same wrap)."""
    _check_size(spec, limit)
    support = support_bounds(spec)
    lo, hi = _unshifted_bounds(spec)
    width = hi - lo
    N = int(cfg.N)
    if width == 0:
        return point_mass_density(support.z_L, N)
    T = cfg.resolve_period(width)
    offsets, probs = enumerate_outcomes(spec, limit)
    bins = np.bincount(bin_index(offsets, T / N, N), weights=probs, minlength=N)
    return GridDensity(support.z_L, T, bins)


def brute_force_cdf(spec: MixtureSpec, cfg: GridConfig, limit: int = DEFAULT_LIMIT) -> GridCdf:
    d = brute_force_density(spec, cfg, limit)
    cum = np.minimum(np.cumsum(d.bins), 1.0)
    cum[-1] = 1.0
    return GridCdf(d.z_L, d.T, cum)


def _mc_chunk(spec: MixtureSpec, seed: int, chunk: int, size: int) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(chunk,))))
    # one row of m uniforms per replicate keeps replicate r independent of B
    u = rng.random((size, spec.m)).T
    z = np.full(size, spec.shift)
    cums = {}
    for j, (a, d) in enumerate(spec.components):
        cum = cums.get(d)
        if cum is None:
            cum = cums[d] = np.cumsum(d.masses)
        idx = np.minimum(np.searchsorted(cum, u[j], side="right"), d.size - 1)
        z += a * d.values[idx]
    return z


def monte_carlo_sample(spec: MixtureSpec, B: int, seed: int, *, workers: int = 1) -> np.ndarray:
    """``B`` independent draws of ``Z`` in replicate order.

    Replicates are generated in fixed chunks, chunk ``c`` from its own Philox
    stream ``SeedSequence(seed, spawn_key=(c,))``, so the output does not depend
    on ``workers``.
    """
    if B < 1:
        raise ValueError("B must be at least 1")
    sizes = [min(MC_CHUNK, B - s) for s in range(0, B, MC_CHUNK)]
    jobs = list(enumerate(sizes))
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: _mc_chunk(spec, seed, *job), jobs))
    else:
        parts = [_mc_chunk(spec, seed, c, s) for c, s in jobs]
    return np.concatenate(parts)


def monte_carlo_cdf(spec: MixtureSpec, B: int, seed: int, *, workers: int = 1) -> EmpiricalCdf:
    return EmpiricalCdf(monte_carlo_sample(spec, B, seed, workers=workers))


def _points(c) -> np.ndarray:
    if isinstance(c, GridCdf):
        return c.right_edges()
    return c.sorted_values


def ks_distance(a, b) -> float:
    """Largest ``|F_a - F_b|`` over the grid right edges and sample points of both."""
    pts = np.unique(np.concatenate([_points(a), _points(b)]))
    return float(np.max(np.abs(a.evaluate(pts) - b.evaluate(pts))))


def direct_idft(x) -> np.ndarray:
    """Inverse DFT by the defining O(N^2) sum, one output at a time."""
    x = np.asarray(x, dtype=np.complex128)
    N = x.size
    k = np.arange(N, dtype=np.int64)
    out = np.empty(N, dtype=np.complex128)
    for j in range(N):
        out[j] = np.sum(x * np.exp(2j * np.pi * ((j * k) % N) / N))
    return out / N
