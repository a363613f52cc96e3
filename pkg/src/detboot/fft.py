"""Arbitrary-length discrete Fourier transforms.

Mixed-radix decimation in time for composite lengths, Bluestein's chirp-z
algorithm for prime lengths above the direct cutoff, and a direct O(n^2)
sum for short lengths. Every reduction is an explicit numpy sum in a fixed
order (no BLAS), so results are bitwise reproducible.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

DIRECT_CUTOFF = 64


@lru_cache(maxsize=64)
def _dft_matrix(n: int, sign: int) -> np.ndarray:
    k = np.arange(n)
    phase = np.outer(k, k) % n
    m = np.exp(sign * 2j * np.pi * phase / n)
    m.setflags(write=False)
    return m


@lru_cache(maxsize=256)
def _twiddles(p: int, m: int, sign: int) -> np.ndarray:
    n = p * m
    phase = np.outer(np.arange(p), np.arange(m)) % n
    t = np.exp(sign * 2j * np.pi * phase / n)
    t.setflags(write=False)
    return t


@lru_cache(maxsize=64)
def _chirp(n: int, sign: int) -> np.ndarray:
    j = np.arange(n, dtype=np.int64)
    c = np.exp(sign * 1j * np.pi * ((j * j) % (2 * n)) / n)
    c.setflags(write=False)
    return c


def _smallest_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def _direct(x: np.ndarray, sign: int) -> np.ndarray:
    m = _dft_matrix(x.shape[-1], sign)
    return (x[..., :, None] * m).sum(axis=-2)


def _bluestein(x: np.ndarray, sign: int) -> np.ndarray:
    n = x.shape[-1]
    size = 1 << (2 * n - 1).bit_length()
    c = _chirp(n, sign)
    a = np.zeros(x.shape[:-1] + (size,), dtype=np.complex128)
    a[..., :n] = x * c
    b = np.zeros(size, dtype=np.complex128)
    b[:n] = np.conj(c)
    b[size - n + 1:] = np.conj(c[1:])[::-1]
    spec = _transform(a, -1) * _transform(b, -1)
    conv = _transform(spec, 1) / size
    return conv[..., :n] * c


def _transform(x: np.ndarray, sign: int) -> np.ndarray:
    """Unnormalized DFT along the last axis with kernel exp(sign*2*pi*i*jk/n)."""
    n = x.shape[-1]
    if n <= DIRECT_CUTOFF:
        return _direct(x, sign)
    p = _smallest_factor(n)
    if p == n:
        return _bluestein(x, sign)
    m = n // p
    lead = x.shape[:-1]
    # sub[..., r, s] = x[..., p*s + r]
    sub = np.swapaxes(x.reshape(lead + (m, p)), -1, -2)
    y = _transform(sub, sign) * _twiddles(p, m, sign)
    z = _transform(np.swapaxes(y, -1, -2), sign)  # [..., k, q]
    return np.swapaxes(z, -1, -2).reshape(lead + (n,))


def fft(x) -> np.ndarray:
    """Forward DFT, ``X_k = sum_j x_j exp(-2 pi i jk/n)``, along the last axis."""
    x = np.asarray(x, dtype=np.complex128)
    if x.shape[-1] == 0:
        raise ValueError("cannot transform an empty array")
    return _transform(x, -1)


def ifft(x) -> np.ndarray:
    """Inverse DFT, ``x_j = (1/n) sum_k X_k exp(2 pi i jk/n)``, along the last axis."""
    x = np.asarray(x, dtype=np.complex128)
    n = x.shape[-1]
    if n == 0:
        raise ValueError("cannot transform an empty array")
    return _transform(x, 1) / n
