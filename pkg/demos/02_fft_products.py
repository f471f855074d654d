"""
FFT-based products in float64
=============================

The circulant embedding turns a Hankel product into a convolution, which the
radix-2 transform evaluates in O(n log n). We compare against numpy's FFT and
against the exact product.
"""

import time

import numpy as np

from hankelmv import exact_matvec, fft, fft_hankel_matvec, schoolbook_matvec

rng = np.random.default_rng(0)

# %% the transform itself agrees with numpy's
v = rng.standard_normal(1024)
print("max |fft - np.fft.fft| =", np.max(np.abs(fft(v) - np.fft.fft(v))))

# %% Hankel products: relative error stays near machine precision
for n in (8, 64, 512):
    a = rng.uniform(-1, 1, 2 * n - 1)
    x = rng.uniform(-1, 1, n)
    exact = np.array([float(q) for q in exact_matvec(a.tolist(), x.tolist())])
    y = fft_hankel_matvec(a.tolist(), x.tolist())
    print(f"n={n:4d}  rel err {np.max(np.abs(y - exact)) / np.max(np.abs(exact)):.2e}")

# %% timing against the direct loop (pure Python, so the gap shows early)
for n in (64, 256, 1024):
    a = rng.uniform(-1, 1, 2 * n - 1).tolist()
    x = rng.uniform(-1, 1, n).tolist()
    t0 = time.perf_counter()
    schoolbook_matvec(a, x)
    t1 = time.perf_counter()
    fft_hankel_matvec(a, x)
    t2 = time.perf_counter()
    print(f"n={n:5d}  schoolbook {1e3 * (t1 - t0):8.2f} ms   fft {1e3 * (t2 - t1):6.2f} ms")
