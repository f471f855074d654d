"""Radix-2 FFT, linear convolution and FFT-based structured matvecs (float64).

Forward transform: ``X_k = sum_j v_j exp(-2 pi i jk / N)``; the inverse carries
the ``1/N`` factor.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import InvalidDimensionError, InvalidLengthError
from .structured import CirculantMatrix, as_hankel


@lru_cache(maxsize=64)
def _bit_reversal(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


@lru_cache(maxsize=64)
def _twiddles(size: int, inverse: bool) -> np.ndarray:
    sign = 1.0 if inverse else -1.0
    return np.exp(sign * 2j * np.pi * np.arange(size // 2) / size)


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def next_power_of_two(n: int) -> int:
    return 1 if n <= 1 else 1 << (n - 1).bit_length()


def fft(v, inverse: bool = False) -> np.ndarray:
    """Iterative decimation-in-time transform of a power-of-two length vector."""
    a = np.array(v, dtype=np.complex128)
    n = a.shape[0] if a.ndim == 1 else -1
    if not is_power_of_two(n):
        raise InvalidLengthError(f"transform length must be a power of two, got {a.shape}")
    a = a[_bit_reversal(n)]
    size = 2
    while size <= n:
        half = size // 2
        blocks = a.reshape(-1, size)
        even = blocks[:, :half]
        odd = blocks[:, half:] * _twiddles(size, inverse)
        a = np.concatenate((even + odd, even - odd), axis=1).reshape(n)
        size *= 2
    if inverse:
        a /= n
    return a


def ifft(v) -> np.ndarray:
    return fft(v, inverse=True)


def linear_convolution(u, v) -> np.ndarray:
    """``w_k = sum_{i+j=k} u_i v_j`` of length ``len(u) + len(v) - 1``, via zero-padded FFTs."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.size == 0 or v.size == 0:
        return np.zeros(0)
    out_len = u.size + v.size - 1
    size = next_power_of_two(out_len)
    pu = np.zeros(size)
    pv = np.zeros(size)
    pu[:u.size] = u
    pv[:v.size] = v
    w = ifft(fft(pu) * fft(pv))
    return w.real[:out_len]


def circulant_matvec_fft(C: CirculantMatrix, x: Sequence) -> np.ndarray:
    n = C.n
    if len(x) != n:
        raise InvalidDimensionError(f"vector of length {len(x)} does not match order {n}")
    col = np.asarray(C.col, dtype=np.float64)
    xv = np.asarray(x, dtype=np.float64)
    if is_power_of_two(n):
        return ifft(fft(col) * fft(xv)).real
    w = linear_convolution(col, xv)
    y = w[:n].copy()
    y[:n - 1] += w[n:]
    return y


def hankel_fft_operands(H, x: Sequence) -> tuple[list, list]:
    """The two length-(2n-1) operands whose circular convolution starts with ``H @ x``.

    ``(a_n, ..., a_{2n-1}, a_1, ..., a_{n-1})`` and ``(x_n, ..., x_1, 0, ..., 0)``.
    """
    H = as_hankel(H)
    n = H.n
    if len(x) != n:
        raise InvalidDimensionError(f"vector of length {len(x)} does not match order {n}")
    a_hat = list(H.seq[n - 1:]) + list(H.seq[:n - 1])
    x_hat = list(reversed(x)) + [0] * (n - 1)
    return a_hat, x_hat


def fft_hankel_matvec(H, x: Sequence) -> np.ndarray:
    """FFT-based Hankel product in float64.

    The odd-length circular convolution is replaced by a linear convolution of
    the defining sequence with reversed ``x``: ``y_i = (a * rev(x))_{i+n-1}``
    (0-based), which needs only power-of-two transforms.
    """
    H = as_hankel(H)
    n = H.n
    if len(x) != n:
        raise InvalidDimensionError(f"vector of length {len(x)} does not match order {n}")
    a = np.asarray(H.seq, dtype=np.float64)
    xr = np.asarray(x, dtype=np.float64)[::-1]
    return linear_convolution(a, xr)[n - 1:2 * n - 1]


def fft_op_estimate(n: int) -> float:
    """Rough flop figure ``30 n log2 n`` for reporting only."""
    return 30.0 * n * np.log2(n) if n > 1 else 0.0
