"""
Running the three subproducts concurrently
==========================================

The three half-size products at each of the top levels go to a thread pool.
Results and aggregated operation counts are identical to the sequential run.
Threads share the interpreter lock, so this shows determinism, not speed.
"""

import random
import time

from hankelmv import INTEGERS, CountingRing, KaratsubaConfig, karatsuba_matvec, parallel_karatsuba_matvec

r = random.Random(7)
for n in (64, 256, 1024):
    a = [r.randint(-2 ** 64, 2 ** 64) for _ in range(2 * n - 1)]
    x = [r.randint(-2 ** 64, 2 ** 64) for _ in range(n)]
    seq_ring, par_ring = CountingRing(INTEGERS), CountingRing(INTEGERS)
    t0 = time.perf_counter()
    ys = karatsuba_matvec(a, x, ring=seq_ring)
    t1 = time.perf_counter()
    yp = parallel_karatsuba_matvec(a, x, KaratsubaConfig(parallel_levels=2), ring=par_ring)
    t2 = time.perf_counter()
    print(f"n={n:5d}  same output: {ys == yp}  same counts: {seq_ring.report() == par_ring.report()}  "
          f"seq {t1 - t0:.3f}s  par {t2 - t1:.3f}s")
