"""
Counting operations of the three-product recursion
===================================================

Neighbouring rows of a Hankel product share coefficients, so two rows need
three half-size products instead of four. A counting ring tallies every
multiplication and addition so the counts can be set against n^2 and the
3 * 3^ceil(log2 n) envelope.
"""

import math

from hankelmv import INTEGERS, CountingRing, KaratsubaConfig, karatsuba_matvec, op_count_bounds, schoolbook_matvec
from hankelmv.karatsuba import single_level_mult_bound


def count(n, config=None):
    ring = CountingRing(INTEGERS)
    a = list(range(1, 2 * n))
    x = list(range(n, 0, -1))
    y = karatsuba_matvec(a, x, config, ring)
    assert y == schoolbook_matvec(a, x)
    return ring.report()


# %% full recursion against schoolbook and the envelopes
print(f"{'n':>5} {'mults':>8} {'n^2':>8} {'bound':>8} {'adds':>8} {'add env':>9}")
prev = None
for k in range(1, 11):
    n = 2 ** k
    rep = count(n)
    mb, ab = op_count_bounds(n)
    ratio = f"  x{rep.multiplications / prev:.3f}" if prev else ""
    print(f"{n:5d} {rep.multiplications:8d} {n * n:8d} {mb:8d} {rep.additions:8d} {ab:9.0f}{ratio}")
    prev = rep.multiplications

# the ratio tends to 3 from above; the additions outgrow the envelope
print("log2(3) =", round(math.log2(3), 4))

# %% one level only: about three quarters of n^2
for n in (4, 5, 16, 64, 100):
    m = count(n, KaratsubaConfig(max_depth=1)).multiplications
    print(f"n={n:4d}  single-level mults {m:6d}  bound {single_level_mult_bound(n):6d}  n^2 {n * n:6d}")
