"""Wall-clock timing of the forward stage, the inverse transform and the MC baseline."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass

from .charfn import GridConfig
from .distribution import SupportBounds, _unshifted_bounds
from .inversion import invert_to_density
from .mixture import MixtureSpec, forward
from .oracle import monte_carlo_sample


@dataclass
class BenchRow:
    n: int
    m: int
    N: int
    B: int
    t_forward: float
    t_ifft: float
    t_mc: float

    def as_dict(self):
        return asdict(self)


def best_of(fn, repeat: int = 3) -> float:
    best = float("inf")
    for _ in range(max(1, repeat)):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_spec(
    spec: MixtureSpec,
    cfg: GridConfig,
    B: int = 0,
    *,
    seed: int = 0,
    repeat: int = 3,
    workers: int = 1,
) -> BenchRow:
    """Time one spec on one grid. ``B = 0`` skips the Monte Carlo baseline."""
    lo, hi = _unshifted_bounds(spec)
    width = hi - lo
    N = int(cfg.N)
    n = max(d.size for _, d in spec.components)
    if width == 0:
        return BenchRow(n, spec.m, N, B, 0.0, 0.0, 0.0)
    T = cfg.resolve_period(width)
    support = SupportBounds(lo, hi)
    g = forward(spec, T, N, workers=workers)
    t_forward = best_of(lambda: forward(spec, T, N, workers=workers), repeat)
    t_ifft = best_of(lambda: invert_to_density(g, support), repeat)
    t_mc = best_of(lambda: monte_carlo_sample(spec, B, seed, workers=workers), 1) if B > 0 else 0.0
    return BenchRow(n, spec.m, N, B, t_forward, t_ifft, t_mc)
