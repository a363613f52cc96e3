"""Finite discrete distributions and exact support bounds of linear mixtures."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .errors import EmptySample, InvalidSpec, NonFiniteValue

MASS_TOL = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DiscreteDistribution:
    """A finite set of weighted real atoms in canonical form.

    Values are strictly increasing and finite, masses strictly positive and
    summing to one. Use :meth:`from_atoms` or :func:`from_sample` rather than
    the constructor when the input may contain duplicates or be unsorted.
    """

    values: np.ndarray
    masses: np.ndarray
    _key: bytes = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        values = _frozen(self.values)
        masses = _frozen(self.masses)
        if values.ndim != 1 or values.shape != masses.shape:
            raise ValueError("values and masses must be 1-D arrays of equal length")
        if values.size == 0:
            raise EmptySample("a distribution needs at least one atom")
        if not np.all(np.isfinite(values)):
            raise NonFiniteValue("atom values must be finite")
        if not np.all(np.isfinite(masses)) or np.any(masses <= 0):
            raise ValueError("atom masses must be finite and strictly positive")
        if values.size > 1 and not np.all(np.diff(values) > 0):
            raise ValueError("atom values must be strictly increasing")
        if abs(math.fsum(masses) - 1.0) > MASS_TOL:
            raise ValueError(f"masses sum to {math.fsum(masses)!r}, not 1")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "masses", masses)
        object.__setattr__(self, "_key", values.tobytes() + b"|" + masses.tobytes())

    @classmethod
    def from_atoms(cls, values: Iterable[float], masses: Iterable[float]) -> "DiscreteDistribution":
        """Sort, merge equal values, drop zero masses and renormalize."""
        values = np.asarray(list(values) if not isinstance(values, np.ndarray) else values, dtype=np.float64)
        masses = np.asarray(list(masses) if not isinstance(masses, np.ndarray) else masses, dtype=np.float64)
        if values.size == 0:
            raise EmptySample("no atoms given")
        if values.shape != masses.shape:
            raise ValueError("values and masses must have equal length")
        if not np.all(np.isfinite(values)):
            raise NonFiniteValue("atom values must be finite")
        if np.any(masses < 0) or not np.all(np.isfinite(masses)):
            raise ValueError("masses must be finite and non-negative")
        uniq, inverse = np.unique(values, return_inverse=True)
        merged = np.bincount(inverse.ravel(), weights=masses, minlength=uniq.size)
        keep = merged > 0
        uniq, merged = uniq[keep], merged[keep]
        if uniq.size == 0:
            raise ValueError("all masses are zero")
        total = math.fsum(merged)
        if total != 1.0:
            merged = merged / total
        return cls(uniq, merged)

    @classmethod
    def point_mass(cls, value: float) -> "DiscreteDistribution":
        return cls(np.array([value], dtype=np.float64), np.array([1.0]))

    @property
    def size(self) -> int:
        return int(self.values.size)

    @property
    def min(self) -> float:
        return float(self.values[0])

    @property
    def max(self) -> float:
        return float(self.values[-1])

    def mean(self) -> float:
        return math.fsum(self.values * self.masses)

    def atoms(self) -> list[tuple[float, float]]:
        return list(zip(self.values.tolist(), self.masses.tolist()))

    def __eq__(self, other):
        if not isinstance(other, DiscreteDistribution):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"DiscreteDistribution(n={self.size}, min={self.min!r}, max={self.max!r})"


def from_sample(values: Iterable[float]) -> DiscreteDistribution:
    """Empirical distribution of a sample: mass multiplicity/n per distinct value."""
    x = np.asarray(list(values) if not isinstance(values, np.ndarray) else values, dtype=np.float64).ravel()
    if x.size == 0:
        raise EmptySample("sample is empty")
    if not np.all(np.isfinite(x)):
        raise NonFiniteValue("sample contains NaN or infinite values")
    uniq, counts = np.unique(x, return_counts=True)
    return DiscreteDistribution(uniq, counts / x.size)


def transform(dist: DiscreteDistribution, h: Callable[[float], float]) -> DiscreteDistribution:
    """Push ``dist`` forward through ``h``; colliding images have their masses summed.

    ``h`` is applied to each atom value separately, so it need not be vectorized.
    """
    images = np.array([float(h(v)) for v in dist.values.tolist()], dtype=np.float64)
    if not np.all(np.isfinite(images)):
        raise NonFiniteValue("transform produced a NaN or infinite value")
    return DiscreteDistribution.from_atoms(images, dist.masses)


@dataclass(frozen=True)
class SupportBounds:
    z_L: float
    z_U: float

    def __post_init__(self):
        if not self.z_L <= self.z_U:
            raise ValueError(f"z_L={self.z_L!r} exceeds z_U={self.z_U!r}")

    @property
    def T_Z(self) -> float:
        return self.z_U - self.z_L

    def contains(self, z: float) -> bool:
        return self.z_L <= z <= self.z_U


def component_range(a: float, dist: DiscreteDistribution) -> tuple[float, float]:
    """Smallest and largest value of ``a * X`` for ``X ~ dist``."""
    if a >= 0:
        return a * dist.min, a * dist.max
    return a * dist.max, a * dist.min


def _unshifted_bounds(spec) -> tuple[float, float]:
    comps = list(spec.components)
    if not comps:
        raise InvalidSpec("a mixture needs at least one component")
    lows, highs = zip(*(component_range(a, d) for a, d in comps))
    # fsum is exactly rounded, so the bounds do not depend on component order
    return math.fsum(lows), math.fsum(highs)


def support_bounds(spec) -> SupportBounds:
    """Exact range of ``Z = shift + sum_j a_j X_j`` for a mixture spec.

    Each component contributes ``a*max`` to the upper bound when ``a > 0`` and
    ``a*min`` otherwise (mirrored for the lower bound), so components may
    have different distributions.
    """
    lo, hi = _unshifted_bounds(spec)
    shift = float(getattr(spec, "shift", 0.0))
    return SupportBounds(lo + shift, hi + shift)
