"""End-to-end pipeline for ``Z = shift + sum_j a_j X_j`` and cascading of results."""

from __future__ import annotations

import math
import warnings
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .charfn import CharVector, GridConfig, mixture_char_fast
from .distribution import (
    DiscreteDistribution,
    SupportBounds,
    _unshifted_bounds,
    component_range,
    support_bounds,
)
from .errors import AllMassDropped, InvalidSpec
from .inversion import GridCdf, GridDensity, density_to_cdf, invert_to_density, point_mass_density

DEFAULT_MASS_FLOOR = 1e-12


@dataclass(frozen=True)
class MixtureSpec:
    """Independent components ``(a_j, dist_j)`` plus a deterministic shift."""

    components: tuple[tuple[float, DiscreteDistribution], ...]
    shift: float = 0.0

    def __post_init__(self):
        comps = tuple((float(a), d) for a, d in self.components)
        if not comps:
            raise InvalidSpec("a mixture needs at least one component")
        for a, d in comps:
            if not math.isfinite(a):
                raise InvalidSpec(f"coefficient {a!r} is not finite")
            if not isinstance(d, DiscreteDistribution):
                raise InvalidSpec(f"component law must be a DiscreteDistribution, got {type(d).__name__}")
        if not math.isfinite(self.shift):
            raise InvalidSpec("shift must be finite")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "shift", float(self.shift))

    @classmethod
    def iid(cls, dist: DiscreteDistribution, coeffs: Iterable[float], shift: float = 0.0) -> "MixtureSpec":
        """Every component follows ``dist``; one component per coefficient."""
        return cls(tuple((a, dist) for a in coeffs), shift)

    @property
    def m(self) -> int:
        return len(self.components)

    @property
    def coefficients(self) -> list[float]:
        return [a for a, _ in self.components]

    def mean(self) -> float:
        return self.shift + math.fsum(a * d.mean() for a, d in self.components)

    def groups(self) -> list[tuple[float, DiscreteDistribution, int]]:
        """Identical ``(a, dist)`` pairs with their multiplicity, in canonical order."""
        counts = Counter((a, d) for a, d in self.components)
        return sorted(
            ((a, d, c) for (a, d), c in counts.items()),
            key=lambda t: (t[0], t[1].size, t[1].values.tolist(), t[1].masses.tolist()),
        )


def forward(spec: MixtureSpec, T: float, N: int, *, workers: int = 1) -> CharVector:
    """Spectrum of ``Z - shift - z_L`` sampled at ``k = 0..N-1`` on period ``T``.

    Components sharing the same coefficient and law go through the integer
    power fast path; groups are multiplied in canonical order.
    """
    groups = spec.groups()

    def one(group):
        a, d, count = group
        low = component_range(a, d)[0]
        return mixture_char_fast(d, a, count, T, N, origin=low, workers=1)

    if workers > 1 and len(groups) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one, groups))
    elif len(groups) == 1:
        a, d, count = groups[0]
        parts = [mixture_char_fast(d, a, count, T, N, origin=component_range(a, d)[0], workers=workers)]
    else:
        parts = [one(g) for g in groups]
    values = parts[0].values.copy()
    for p in parts[1:]:
        values *= p.values
    return CharVector(values, float(T), math.fsum(p.offset for p in parts))


def compute_distribution(
    spec: MixtureSpec, cfg: GridConfig, *, workers: int = 1
) -> tuple[GridDensity, GridCdf]:
    """Binned density and CDF of the mixture on ``cfg.N`` bins.

    The shift is applied after inversion by translating the grid, so it never
    enters the spectrum.
    """
    lo, hi = _unshifted_bounds(spec)
    support = support_bounds(spec)
    width = hi - lo
    N = int(cfg.N)
    if width == 0:
        density = point_mass_density(support.z_L, N)
        return density, density_to_cdf(density)
    T = cfg.resolve_period(width)
    n_atoms = max(d.size for _, d in spec.components)
    if N < n_atoms:
        warnings.warn(f"grid size N={N} is below the atom count {n_atoms}", RuntimeWarning, stacklevel=2)
    g = forward(spec, T, N, workers=workers)
    inner = invert_to_density(g, SupportBounds(lo, hi))
    density = GridDensity(support.z_L, inner.T, inner.bins)
    return density, density_to_cdf(density)


def cascade_atomize(d: GridDensity, mass_floor: float = DEFAULT_MASS_FLOOR) -> DiscreteDistribution:
    """Turn a grid density back into atoms at the bin centres.

    Negative bins are zeroed, atoms lighter than ``mass_floor`` dropped and
    the rest renormalized. Each cascade stage therefore quantizes to one grid
    step.
    """
    if not 0 <= mass_floor < 1.0 / d.N:
        raise ValueError(f"mass_floor must lie in [0, 1/N), got {mass_floor!r}")
    masses = np.maximum(d.bins, 0.0)
    keep = (masses > 0) & (masses >= mass_floor)
    total = math.fsum(masses[keep])
    if total < 0.5:
        raise AllMassDropped(f"only {total!r} of the mass survives atomization")
    return DiscreteDistribution.from_atoms(d.centers()[keep], masses[keep] / total)

