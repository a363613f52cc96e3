"""Mixture specs for bootstrap statistics of the sample mean.

Both statistics are linear in independently drawn bootstrap variables, so
their bootstrap law is a linear mixture of finite discrete laws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .distribution import from_sample
from .errors import BlockLengthMismatch, EmptySample, NonFiniteValue
from .mixture import MixtureSpec


def _as_sample(values) -> np.ndarray:
    x = np.asarray(values, dtype=np.float64).ravel()
    if x.size == 0:
        raise EmptySample("sample is empty")
    if not np.all(np.isfinite(x)):
        raise NonFiniteValue("sample contains NaN or infinite values")
    return x


def _mean(x: np.ndarray) -> float:
    # anchored at the minimum so a constant sample has exactly that mean
    low = float(x.min())
    return low + math.fsum(x - low) / x.size


def efron_mean(values) -> MixtureSpec:
    """``sqrt(n) * (mean(X*) - mean(X))`` under iid resampling with replacement.

    Written as ``sum_i (X*_i - mean(X)) / sqrt(n)``: n identical components with
    coefficient ``1/sqrt(n)`` over the centred observations.
    """
    x = _as_sample(values)
    n = x.size
    centred = from_sample(x - _mean(x))
    return MixtureSpec.iid(centred, [1.0 / math.sqrt(n)] * n)


@dataclass(frozen=True)
class BlockStatistics:
    block_length: int
    block_count: int
    block_means: np.ndarray
    grand_mean: float


def block_statistics(values, l: int) -> BlockStatistics:
    x = _as_sample(values)
    n = x.size
    if int(l) != l or l < 1:
        raise BlockLengthMismatch(f"block length must be a positive integer, got {l!r}")
    l = int(l)
    if n % l:
        raise BlockLengthMismatch(f"block length {l} does not divide n={n}")
    means = sliding_window_view(x, l).sum(axis=1) / l
    means.setflags(write=False)
    return BlockStatistics(l, n // l, means, _mean(means))


def moving_block(values, l: int) -> tuple[MixtureSpec, BlockStatistics]:
    """Moving block bootstrap of the mean with ``b = n/l`` blocks of length ``l``.

    ``sqrt(b) * mean(V*_k)`` is a sum of ``b`` independent terms ``V*_k / sqrt(b)``,
    each uniform over the ``n-l+1`` centred consecutive-block means. The block
    length should exceed the dependence range of the series; that cannot be
    checked from the data and is left to the caller.
    """
    stats = block_statistics(values, l)
    b = stats.block_count
    dist = from_sample(stats.block_means - stats.grand_mean)
    return MixtureSpec.iid(dist, [1.0 / math.sqrt(b)] * b), stats
