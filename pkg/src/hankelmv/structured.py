"""Hankel, Toeplitz and circulant matrices stored by their defining sequences.

Indices in the public accessors (:meth:`HankelMatrix.element`) are 1-based to
match the usual matrix notation ``a_1 .. a_{2n-1}``; the stored tuples are
0-based, so ``a_k`` lives at ``seq[k - 1]``.

Vectors are plain sequences of ring elements and results come back as lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidDimensionError
from .fixedpoint import to_dyadic
from .rings import INTEGERS, NATIVE, Ring


@dataclass(frozen=True)
class HankelMatrix:
    """Order-n Hankel matrix ``A[i][j] = a_{i+j-1}`` held as ``(a_1, ..., a_{2n-1})``."""

    seq: tuple

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(self.seq))
        if len(self.seq) % 2 == 0:
            raise InvalidDimensionError(f"defining sequence must have odd length >= 1, got {len(self.seq)}")

    @property
    def n(self) -> int:
        return (len(self.seq) + 1) // 2

    def element(self, i: int, j: int):
        n = self.n
        if not (1 <= i <= n and 1 <= j <= n):
            raise IndexError(f"({i}, {j}) outside a {n}x{n} matrix")
        return self.seq[i + j - 2]

    def to_dense(self) -> list[list]:
        n = self.n
        return [[self.seq[i + j] for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class ToeplitzMatrix:
    """Order-n Toeplitz matrix ``A[i][j] = a_{n-i+j}``; first row ``(a_n, ..., a_{2n-1})``."""

    seq: tuple

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(self.seq))
        if len(self.seq) % 2 == 0:
            raise InvalidDimensionError(f"defining sequence must have odd length >= 1, got {len(self.seq)}")

    @property
    def n(self) -> int:
        return (len(self.seq) + 1) // 2

    def to_dense(self) -> list[list]:
        n = self.n
        return [[self.seq[n - 1 - i + j] for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class CirculantMatrix:
    """Order-n circulant ``A[i][j] = col[(i - j) mod n]`` given by its first column."""

    col: tuple

    def __post_init__(self):
        object.__setattr__(self, "col", tuple(self.col))
        if not self.col:
            raise InvalidDimensionError("circulant needs at least one entry")

    @property
    def n(self) -> int:
        return len(self.col)

    def to_dense(self) -> list[list]:
        n = self.n
        return [[self.col[(i - j) % n] for j in range(n)] for i in range(n)]


def hankel_from_sequence(seq: Sequence) -> HankelMatrix:
    return HankelMatrix(tuple(seq))


def as_hankel(a) -> HankelMatrix:
    """Accept either a :class:`HankelMatrix` or its defining sequence."""
    return a if isinstance(a, HankelMatrix) else HankelMatrix(tuple(a))


def element(H: HankelMatrix, i: int, j: int):
    return H.element(i, j)


def _check_len(n: int, x: Sequence) -> None:
    if len(x) != n:
        raise InvalidDimensionError(f"vector of length {len(x)} does not match order {n}")


def schoolbook_matvec(H, x: Sequence, ring: Ring = NATIVE) -> list:
    """``y_i = sum_j a_{i+j-1} x_j``, summed in order j = 1..n.

    Costs exactly n^2 multiplications and n(n-1) additions.
    """
    H = as_hankel(H)
    n = H.n
    _check_len(n, x)
    add, mul = ring.add, ring.mul
    a = H.seq
    y = []
    for i in range(n):
        s = mul(a[i], x[0])
        for j in range(1, n):
            s = add(s, mul(a[i + j], x[j]))
        y.append(s)
    return y


def dense_matvec(A: Sequence[Sequence], x: Sequence, ring: Ring = NATIVE) -> list:
    """Plain row-by-column product of a materialized matrix."""
    _check_len(len(A), x)
    y = []
    for row in A:
        _check_len(len(row), x)
        s = ring.mul(row[0], x[0])
        for aij, xj in zip(row[1:], x[1:]):
            s = ring.add(s, ring.mul(aij, xj))
        y.append(s)
    return y


def exact_matvec(H, x: Sequence) -> list[Fraction]:
    """Exact Hankel product for dyadic entries (ints, floats, fixed-point numbers).

    Entries are aligned to common power-of-two exponents and the product is
    formed in integer arithmetic, so nothing is rounded.
    """
    H = as_hankel(H)
    _check_len(H.n, x)
    a_parts = [to_dyadic(v) for v in H.seq]
    x_parts = [to_dyadic(v) for v in x]
    ea = min(e for _, e in a_parts)
    ex = min(e for _, e in x_parts)
    a_int = [k << (e - ea) for k, e in a_parts]
    x_int = [k << (e - ex) for k, e in x_parts]
    y_int = schoolbook_matvec(HankelMatrix(a_int), x_int, INTEGERS)
    e = ea + ex
    scale = Fraction(2) ** e
    return [Fraction(v) * scale for v in y_int]


def toeplitz_to_hankel(T: ToeplitzMatrix) -> HankelMatrix:
    """Reverse the row order of ``T``.

    Row ``n+1-i`` of a Toeplitz matrix reads ``a_i, ..., a_{i+n-1}``, which is
    row ``i`` of the Hankel matrix with the same defining sequence.
    """
    return HankelMatrix(T.seq)


def toeplitz_matvec(T: ToeplitzMatrix, x: Sequence, ring: Ring = NATIVE) -> list:
    y = schoolbook_matvec(toeplitz_to_hankel(T), x, ring)
    y.reverse()
    return y


def hankel_embed_circulant(H, ring: Ring = NATIVE) -> CirculantMatrix:
    """Order-2n circulant C with ``(C @ (x_n, ..., x_1, 0, ..., 0))[:n] == H @ x``.

    The first column is ``(a_n, ..., a_{2n-1}, 0, a_1, ..., a_{n-1})``.
    """
    H = as_hankel(H)
    n = H.n
    a = H.seq
    return CirculantMatrix(a[n - 1:] + (ring.zero(),) + a[:n - 1])


def embedding_operand(x: Sequence, ring: Ring = NATIVE) -> list:
    """Reversed and zero-padded vector that pairs with :func:`hankel_embed_circulant`."""
    return list(reversed(x)) + [ring.zero()] * len(x)


def circulant_matvec_dense(C: CirculantMatrix, x: Sequence, ring: Ring = NATIVE) -> list:
    n = C.n
    _check_len(n, x)
    col = C.col
    y = []
    for i in range(n):
        s = ring.mul(col[i % n], x[0])
        for j in range(1, n):
            s = ring.add(s, ring.mul(col[(i - j) % n], x[j]))
        y.append(s)
    return y
