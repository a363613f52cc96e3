"""From characteristic-function samples to binned density, CDF and quantiles."""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .charfn import CharVector
from .distribution import SupportBounds
from .errors import AlphaOutOfRange, TotalMassError
from .fft import ifft

log = logging.getLogger(__name__)

LEAKAGE_FLOOR = -0.05
MASS_CHECK_TOL = 1e-6
# (z_L - offset) * N / T closer than this to an integer counts as on-grid
ALIGN_TOL = 1e-9


class LeakageWarning(RuntimeWarning):
    """A density bin fell below the leakage sanity floor."""


def _readonly(a) -> np.ndarray:
    a = np.array(a, dtype=np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class GridDensity:
    """Bin masses on ``[z_L, z_L + T)``; bin ``i`` covers ``[z_L + i*T/N, z_L + (i+1)*T/N)``.

    Bins may be slightly negative where the truncated spectrum rings.
    """

    z_L: float
    T: float
    bins: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "bins", _readonly(self.bins))

    @property
    def N(self) -> int:
        return int(self.bins.size)

    @property
    def width(self) -> float:
        return self.T / self.N

    def edges(self) -> np.ndarray:
        return self.z_L + np.arange(self.N + 1) * self.width

    def centers(self) -> np.ndarray:
        return self.z_L + (np.arange(self.N) + 0.5) * self.width

    def total(self) -> float:
        return math.fsum(self.bins)

    def mean(self) -> float:
        return math.fsum(self.bins * self.centers())


@dataclass(frozen=True, eq=False)
class GridCdf:
    """Cumulative masses; ``cum[i]`` approximates ``F`` at the right edge of bin ``i``."""

    z_L: float
    T: float
    cum: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "cum", _readonly(self.cum))

    @property
    def N(self) -> int:
        return int(self.cum.size)

    @property
    def width(self) -> float:
        return self.T / self.N

    def right_edges(self) -> np.ndarray:
        return self.z_L + (np.arange(self.N) + 1) * self.width

    def evaluate(self, z) -> np.ndarray:
        """Step-function CDF: each bin's mass counts from just above its left edge.

        At a right edge this returns ``cum`` of that bin; below ``z_L`` it is
        0 and from ``z_L + T`` on it is 1.
        """
        z = np.asarray(z, dtype=np.float64)
        pos = (z - self.z_L) / self.width
        idx = np.ceil(pos).astype(np.int64) - 1
        out = np.where(idx < 0, 0.0, self.cum[np.clip(idx, 0, self.N - 1)])
        return np.where(idx >= self.N, 1.0, out)


def point_mass_density(z: float, N: int) -> GridDensity:
    """Degenerate grid: all mass in the first bin of a unit-length circle at ``z``."""
    bins = np.zeros(N)
    bins[0] = 1.0
    return GridDensity(float(z), 1.0, bins)


def hermitian_inverse(g: np.ndarray) -> np.ndarray:
    """Real sequence from the non-negative half of a conjugate-symmetric spectrum.

    Uses ``g_k`` for ``0 <= k <= N/2`` (the Nyquist sample halved), takes the
    inverse DFT ``f~`` of that half and returns ``2*Re(f~) - 1/N``.
    """
    N = g.size
    half = np.zeros(N, dtype=np.complex128)
    top = N // 2
    half[: top + 1] = g[: top + 1]
    if N % 2 == 0:
        half[top] *= 0.5
    if N == 1:
        return np.array([g[0].real])
    f_tilde = ifft(half)
    return 2.0 * f_tilde.real - 1.0 / N


def invert_to_density(g: CharVector, support: SupportBounds) -> GridDensity:
    """Binned density of the mixture whose spectrum is ``g``.

    The bins are rotated so that bin 0 starts exactly at ``support.z_L``: by a
    whole number of bins (``i_min``) and, when ``z_L`` is not on the spectrum's
    own grid, by the remaining fraction of a bin through a phase ramp.
    """
    N = g.N
    if support.T_Z == 0:
        return point_mass_density(support.z_L, N)
    T = g.period
    pos = (support.z_L - g.offset) * N / T
    i_min = math.floor(pos)
    frac = pos - i_min
    if frac > 1 - ALIGN_TOL:
        i_min, frac = i_min + 1, 0.0
    elif frac < ALIGN_TOL:
        frac = 0.0
    spectrum = g.values
    if frac:
        k = np.arange(N, dtype=np.float64)
        ramp = k * frac / N
        spectrum = spectrum * np.exp(2j * np.pi * (ramp - np.round(ramp)))
    f = hermitian_inverse(spectrum)
    bins = np.roll(f, -(i_min % N))
    low = float(bins.min())
    if low < LEAKAGE_FLOOR:
        warnings.warn(
            f"density bin as low as {low:.3g}; the grid is too coarse for the heaviest atoms",
            LeakageWarning,
            stacklevel=2,
        )
    return GridDensity(float(support.z_L), float(T), bins)


def density_to_cdf(d: GridDensity) -> GridCdf:
    """Running sum of the bins, made monotone and clamped to ``[0, 1]``."""
    total = d.total()
    if abs(total - 1.0) > MASS_CHECK_TOL:
        raise TotalMassError(f"bins sum to {total!r}")
    cum = np.maximum.accumulate(np.cumsum(d.bins))
    cum = np.clip(cum, 0.0, 1.0)
    cum[-1] = 1.0
    return GridCdf(d.z_L, d.T, cum)


def quantile(c: GridCdf, alpha: float) -> float:
    """Right edge of the first bin whose cumulative mass reaches ``alpha``."""
    if not 0 < alpha < 1:
        raise AlphaOutOfRange(f"alpha must lie in (0, 1), got {alpha!r}")
    i = int(np.searchsorted(c.cum, alpha, side="left"))
    i = min(i, c.N - 1)
    return c.z_L + (i + 1) * c.width


def quantiles(c: GridCdf, alphas) -> dict[float, float]:
    return {float(a): quantile(c, a) for a in alphas}
