"""
Hankel, Toeplitz and circulant products
=======================================

A Hankel matrix of order n is fixed by 2n-1 numbers. This script builds one,
multiplies it the direct way and checks the two structural identities the
fast kernels rely on.
"""

from hankelmv import (
    HankelMatrix,
    INTEGERS,
    ToeplitzMatrix,
    circulant_matvec_dense,
    hankel_embed_circulant,
    schoolbook_matvec,
    toeplitz_matvec,
    toeplitz_to_hankel,
)
from hankelmv.structured import embedding_operand

# %% a small Hankel matrix: entry (i, j) is a_{i+j-1}
H = HankelMatrix((1, 2, 3, 4, 5))
for row in H.to_dense():
    print(row)

x = [1, -1, 2]
y = schoolbook_matvec(H, x, INTEGERS)
print("H x =", y)

# %% a Toeplitz matrix with the same sequence is the Hankel one upside down
T = ToeplitzMatrix(H.seq)
print("T rows reversed == H:", toeplitz_to_hankel(T).to_dense() == H.to_dense())
print("T x =", toeplitz_matvec(T, x))

# %% embed H in a circulant of order 2n; the first n outputs are H x
C = hankel_embed_circulant(H, INTEGERS)
print("circulant column:", C.col)
z = circulant_matvec_dense(C, embedding_operand(x, INTEGERS), INTEGERS)
print("first n outputs:", z[:H.n], "match:", z[:H.n] == y)
