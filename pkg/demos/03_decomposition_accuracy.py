"""
Multiprecision products through limb decomposition
==================================================

Each b-bit entry is split into l = ceil(b / beta) weighted limbs. One float64
FFT product of order 2nl then carries the whole multiprecision product. It is
exact while the limb products fit the double mantissa. Beyond that the error
is measured here, not bounded.
"""

import random

from hankelmv import FixedPointNumber, build_decomposed_system, decomp_matvec
from hankelmv.decomp import rounded_oracle


def random_entries(r, count, b):
    return [FixedPointNumber.from_parts(r.choice((-1, 1)) * r.randrange(1, 2 ** b), -b, b) for _ in range(count)]


r = random.Random(1)

# %% layout of the enlarged system for n = 2, b = 32, beta = 16
a = random_entries(r, 3, 32)
x = random_entries(r, 2, 32)
s = build_decomposed_system(a, x, beta=16)
print(f"l={s.l}  enlarged order={s.mhat}  len(ahat)={len(s.ahat)}  len(xhat)={len(s.xhat)}")
print("ahat head:", s.ahat[:8])
print("xhat head:", s.xhat[:8])

# %% exact regime: 32-bit entries, 16-bit limbs
y, rec = decomp_matvec(a, x, beta=16, oracle=True)
print("matches correctly rounded product:", y == rounded_oracle(a, x, 32), " bits lost:", rec.bits_lost)

# %% wider entries lose bits once limb sums exceed 53 bits
n = 16
for b in (32, 64, 256, 1024):
    a = random_entries(r, 2 * n - 1, b)
    x = random_entries(r, n, b)
    _, rec = decomp_matvec(a, x, beta=16, oracle=True, flush_underflow=True)
    print(f"b={b:5d}  l={rec.l:3d}  rel err {rec.max_rel_error:.2e}  bits lost {rec.bits_lost}")
