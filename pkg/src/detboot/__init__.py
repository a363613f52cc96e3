"""Deterministic bootstrap distributions for linear bootstrap statistics.

The law of ``Z = shift + sum_j a_j X_j`` with independent, finitely supported
``X_j`` is obtained by sampling its characteristic function on ``N`` points and
inverting with one FFT, instead of drawing bootstrap replicates.

>>> from detboot import efron_mean, compute_distribution, GridConfig, quantile
>>> density, cdf = compute_distribution(efron_mean([1.0, 2.0, 4.0, 7.0]), GridConfig(512, pad=1.25))
>>> round(density.total(), 9)
1.0
"""

from .adapters import BlockStatistics, efron_mean, moving_block
from .charfn import CharVector, GridConfig, component_char, mixture_char, mixture_char_fast
from .distribution import DiscreteDistribution, SupportBounds, from_sample, support_bounds, transform
from .errors import *  # noqa: F401,F403
from .inversion import GridCdf, GridDensity, density_to_cdf, invert_to_density, quantile, quantiles
from .mixture import MixtureSpec, cascade_atomize, compute_distribution
from .oracle import EmpiricalCdf, brute_force_density, ks_distance, monte_carlo_cdf

__version__ = "0.1.0"

__all__ = [
    "BlockStatistics",
    "CharVector",
    "DiscreteDistribution",
    "EmpiricalCdf",
    "GridCdf",
    "GridConfig",
    "GridDensity",
    "MixtureSpec",
    "SupportBounds",
    "brute_force_density",
    "cascade_atomize",
    "component_char",
    "compute_distribution",
    "density_to_cdf",
    "efron_mean",
    "from_sample",
    "invert_to_density",
    "ks_distance",
    "mixture_char",
    "mixture_char_fast",
    "monte_carlo_cdf",
    "moving_block",
    "quantile",
    "quantiles",
    "support_bounds",
    "transform",
]
