"""Sampled characteristic functions of scaled discrete components and their products.

For a component ``a*X`` with atoms ``x_i`` and masses ``p_i`` the k-th sample
on a circle of circumference ``T`` is

    g_k = sum_i p_i * exp(-2*pi*i * (a*x_i - origin) * k / T),   k = 0..N-1.

Only one complex exponential per atom is evaluated; the k-th powers come from
repeated multiplication.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .distribution import DiscreteDistribution
from .errors import InvalidPeriod, MismatchedGrid

# Fixed chunk sizes keep the reduction order independent of the worker count.
ATOM_CHUNK = 512
POWER_BLOCK = 64


@dataclass(frozen=True, eq=False)
class CharVector:
    """N samples of a characteristic function on a grid of period ``period``.

    ``offset`` is the location that was subtracted from the variable before
    sampling, so the vector describes ``Z - offset``.
    """

    values: np.ndarray
    period: float
    offset: float = 0.0

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.complex128)
        if v.ndim != 1 or v.size == 0:
            raise ValueError("values must be a non-empty 1-D array")
        if not (self.period > 0 and math.isfinite(self.period)):
            raise InvalidPeriod(f"period must be positive and finite, got {self.period!r}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def N(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class GridConfig:
    """Grid size ``N`` and circle circumference, either ``pad * T_Z`` or ``period``."""

    N: int
    pad: float = 1.0
    period: float | None = None

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N!r}")
        if not (self.pad >= 1 and math.isfinite(self.pad)):
            raise ValueError(f"pad must be >= 1, got {self.pad!r}")
        if self.period is not None and not (self.period > 0 and math.isfinite(self.period)):
            raise InvalidPeriod(f"period must be positive, got {self.period!r}")

    def resolve_period(self, width: float) -> float:
        """Circumference used for a mixture whose support has width ``width``."""
        if self.period is not None:
            if self.period < width:
                raise InvalidPeriod(f"period {self.period!r} is shorter than the support width {width!r}")
            return float(self.period)
        return self.pad * width


def _chunk_sum(w: np.ndarray, p: np.ndarray, N: int) -> np.ndarray:
    # powers[r] = w**r for r < POWER_BLOCK, then each block advances by w**POWER_BLOCK
    K = min(POWER_BLOCK, N)
    base = np.empty((K, w.size), dtype=np.complex128)
    base[0] = 1.0
    for r in range(1, K):
        base[r] = base[r - 1] * w
    step = base[K - 1] * w
    cur = p.astype(np.complex128)
    out = np.empty(N, dtype=np.complex128)
    for start in range(0, N, K):
        stop = min(start + K, N)
        out[start:stop] = (base[: stop - start] * cur).sum(axis=1)
        cur = cur * step
    return out


def _unit_roots(theta: np.ndarray) -> np.ndarray:
    # exp(-2 pi i theta) with theta reduced to [-1/2, 1/2] first
    return np.exp(-2j * np.pi * (theta - np.round(theta)))


def component_char(
    dist: DiscreteDistribution,
    a: float,
    T: float,
    N: int,
    *,
    origin: float = 0.0,
    workers: int = 1,
) -> CharVector:
    """Characteristic-function samples of ``a*X - origin`` for ``X ~ dist``.

    Parameters
    ----------
    dist : DiscreteDistribution
        Law of the component.
    a : float
        Mixing coefficient.
    T : float
        Circle circumference (period); must be positive.
    N : int
        Number of samples, ``k = 0..N-1``.
    origin : float, optional
        Location subtracted before sampling. Choosing the component's lowest
        value keeps the exponents small.
    workers : int, optional
        Threads used over atom chunks. The result does not depend on it.
    """
    if not (T > 0 and math.isfinite(T)):
        raise InvalidPeriod(f"period must be positive and finite, got {T!r}")
    if N < 1:
        raise ValueError("N must be at least 1")
    theta = (a * dist.values - origin) / T
    w = _unit_roots(theta)
    p = dist.masses
    chunks = [slice(s, s + ATOM_CHUNK) for s in range(0, w.size, ATOM_CHUNK)]
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(lambda sl: _chunk_sum(w[sl], p[sl], N), chunks))
    else:
        partials = [_chunk_sum(w[sl], p[sl], N) for sl in chunks]
    total = partials[0]
    for part in partials[1:]:
        total = total + part
    return CharVector(total, float(T), float(origin))


def direct_component_char(dist: DiscreteDistribution, a: float, T: float, N: int, *, origin: float = 0.0) -> np.ndarray:
    """Same samples as :func:`component_char` with one exponential per (k, atom).

    Reference path used to bound the drift of the power iteration.
    """
    theta = (a * dist.values - origin) / T
    theta = theta - np.round(theta)
    out = np.empty(N, dtype=np.complex128)
    for start in range(0, N, 1024):
        k = np.arange(start, min(start + 1024, N), dtype=np.float64)
        phase = np.outer(k, theta)
        phase -= np.round(phase)
        out[start:start + k.size] = (np.exp(-2j * np.pi * phase) * dist.masses).sum(axis=1)
    return out


def mixture_char(components: list[CharVector]) -> CharVector:
    """Element-wise product of component vectors, in the given order."""
    if not components:
        raise ValueError("need at least one component")
    first = components[0]
    for c in components[1:]:
        if c.N != first.N or c.period != first.period:
            raise MismatchedGrid(
                f"grids differ: N={c.N}, T={c.period!r} vs N={first.N}, T={first.period!r}"
            )
    values = first.values.copy()
    for c in components[1:]:
        values *= c.values
    return CharVector(values, first.period, math.fsum(c.offset for c in components))


def _int_power(v: np.ndarray, m: int) -> np.ndarray:
    result = None
    base = v.copy()
    while m:
        if m & 1:
            result = base.copy() if result is None else result * base
        m >>= 1
        if m:
            base = base * base
    return result


def mixture_char_fast(
    dist: DiscreteDistribution,
    a: float,
    m: int,
    T: float,
    N: int,
    *,
    origin: float = 0.0,
    workers: int = 1,
) -> CharVector:
    """Product of ``m`` identical components, computed as an integer power."""
    if int(m) != m or m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}")
    one = component_char(dist, a, T, N, origin=origin, workers=workers)
    if m == 1:
        return one
    return CharVector(_int_power(one.values, int(m)), one.period, m * one.offset)
