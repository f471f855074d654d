"""Recursive three-product Hankel matvec.

Two neighbouring rows of a Hankel product share their coefficients shifted by
one, so with

    C = (a_i + a_{i+1}) x_i,  D = a_{i+1} (x_i - x_{i+1}),  E = a_i (x_{i-1} - x_i)

the rows are ``C - D`` and ``C + E``: three multiplications instead of four.
Applied to every column pair this turns one order-n product into three
products of order about n/2 (matrices C, D, E built from pairwise sums, even
and odd entries of the defining sequence), giving Theta(n^log2(3)) work.

Padding entries (``a_{2n}``, ``a_{2n+1}``, ``x_0``, ``x_{n+1}``) are tracked as
structural zeros: operations with them are elided and not counted.  Each
subproblem also computes only the output rows its parent consumes, which
drops the last row of the E product for even n.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Sequence

from .errors import InvalidDimensionError, InvalidParameterError
from .rings import NATIVE, Ring
from .structured import as_hankel


class _Pad:
    __slots__ = ()

    def __repr__(self):
        return "PAD"


PAD = _Pad()


@dataclass(frozen=True)
class KaratsubaConfig:
    """Recursion controls.

    ``cutoff``: orders at or below it use the schoolbook product (never less
    than 2, since an order-2 split yields another order-2 subproblem).
    ``max_depth``: number of splitting levels, ``None`` for unlimited;
    ``max_depth=1`` is the single-level scheme.
    ``parallel``: run the three subproducts of the top ``parallel_levels``
    levels on separate threads.
    """

    cutoff: int = 2
    max_depth: int | None = None
    parallel: bool = False
    parallel_levels: int = 3

    def __post_init__(self):
        if self.cutoff < 1:
            raise InvalidParameterError(f"cutoff must be >= 1, got {self.cutoff}")
        if self.max_depth is not None and self.max_depth < 1:
            raise InvalidParameterError(f"max_depth must be >= 1, got {self.max_depth}")
        if self.parallel_levels < 0:
            raise InvalidParameterError("parallel_levels must be >= 0")


@dataclass(frozen=True)
class SplitSystem:
    """Auxiliary sequences of one splitting step (0-based storage)."""

    m: int
    m1: int
    c: tuple
    d: tuple
    e: tuple
    f: tuple
    h: tuple
    g: tuple


class _Ops:
    """Ring operations that treat :data:`PAD` as a free zero."""

    def __init__(self, ring: Ring):
        self.ring = ring
        radd, rsub, rmul, zero = ring.add, ring.sub, ring.mul, ring.zero

        def add(u, v):
            if u is PAD:
                return v
            if v is PAD:
                return u
            return radd(u, v)

        def sub(u, v):
            if v is PAD:
                return u
            if u is PAD:
                return rsub(zero(), v)
            return rsub(u, v)

        def mul(u, v):
            if u is PAD or v is PAD:
                return PAD
            return rmul(u, v)

        self.add, self.sub, self.mul = add, sub, mul


def _halves(n: int) -> tuple[int, int]:
    return (n + 1) // 2, (n + 2) // 2


def _split(ops: _Ops, a: Sequence, x: Sequence) -> SplitSystem:
    n = len(x)
    m, m1 = _halves(n)
    add, sub = ops.add, ops.sub
    A = list(a) + [PAD, PAD]          # A[k] = a_{k+1}; a_{2n}, a_{2n+1} padded
    X = [PAD] + list(x) + [PAD, PAD]  # X[k] = x_k;     x_0, x_{n+1} padded
    c = tuple(add(A[2 * i], A[2 * i + 1]) for i in range(2 * m - 1))
    d = tuple(A[2 * i + 1] for i in range(2 * m - 1))
    e = tuple(A[2 * i] for i in range(2 * m1 - 1))
    f = tuple(sub(X[2 * i + 1], X[2 * i + 2]) for i in range(m))
    h = tuple(X[2 * i + 1] for i in range(m))
    g = tuple(sub(X[2 * i], X[2 * i + 1]) for i in range(m1))
    return SplitSystem(m, m1, c, d, e, f, h, g)


def _schoolbook_rows(ops: _Ops, a: Sequence, x: Sequence, rows: int) -> list:
    n = len(x)
    if not any(v is PAD for v in x) and not any(v is PAD for v in a[:rows + n - 1]):
        add, mul = ops.ring.add, ops.ring.mul
        y = []
        for i in range(rows):
            s = mul(a[i], x[0])
            for j in range(1, n):
                s = add(s, mul(a[i + j], x[j]))
            y.append(s)
        return y
    add, mul = ops.add, ops.mul
    y = []
    for i in range(rows):
        s = PAD
        for j in range(n):
            s = add(s, mul(a[i + j], x[j]))
        y.append(s)
    return y


def _merge(ops: _Ops, p: Sequence, q: Sequence, r: Sequence, rows: int) -> list:
    y = []
    for i in range((rows + 1) // 2):
        y.append(ops.sub(p[i], q[i]))
        if 2 * i + 1 < rows:
            y.append(ops.add(p[i], r[i]))
    return y


def _solve(ops: _Ops, a, x, rows: int, depth: int, config: KaratsubaConfig) -> list:
    n = len(x)
    if n <= max(config.cutoff, 2) or (config.max_depth is not None and depth >= config.max_depth):
        return _schoolbook_rows(ops, a, x, rows)
    s = _split(ops, a, x)
    rows_p, rows_r = (rows + 1) // 2, rows // 2
    if config.parallel and depth < config.parallel_levels:
        with ThreadPoolExecutor(max_workers=2) as pool:
            fq = pool.submit(_solve, ops, s.d, s.f, rows_p, depth + 1, config)
            fr = pool.submit(_solve, ops, s.e, s.g, rows_r, depth + 1, config)
            p = _solve(ops, s.c, s.h, rows_p, depth + 1, config)
            q, r = fq.result(), fr.result()
    else:
        p = _solve(ops, s.c, s.h, rows_p, depth + 1, config)
        q = _solve(ops, s.d, s.f, rows_p, depth + 1, config)
        r = _solve(ops, s.e, s.g, rows_r, depth + 1, config)
    return _merge(ops, p, q, r, rows)


def _materialize(seq: Sequence, ring: Ring) -> tuple:
    return tuple(ring.zero() if v is PAD else v for v in seq)


def split_system(a, x: Sequence, ring: Ring = NATIVE) -> SplitSystem:
    """One splitting step with padding entries materialized as ring zeros."""
    seq = as_hankel(a).seq
    n = len(x)
    if len(seq) != 2 * n - 1:
        raise InvalidDimensionError(f"defining sequence of length {len(seq)} does not match order {n}")
    if n < 2:
        raise InvalidDimensionError("splitting needs order >= 2")
    s = _split(_Ops(ring), seq, x)
    return SplitSystem(s.m, s.m1, *(_materialize(v, ring) for v in (s.c, s.d, s.e, s.f, s.h, s.g)))


def merge(p: Sequence, q: Sequence, r: Sequence, n: int, ring: Ring = NATIVE) -> list:
    """``y_{2i-1} = p_i - q_i`` and, when ``2i <= n``, ``y_{2i} = p_i + r_i``."""
    m, _ = _halves(n)
    if len(p) != m or len(q) != m or len(r) < n // 2:
        raise InvalidDimensionError(f"subproduct lengths {len(p)}, {len(q)}, {len(r)} do not fit order {n}")
    return list(_materialize(_merge(_Ops(ring), p, q, r, n), ring))


def karatsuba_matvec(a, x: Sequence, config: KaratsubaConfig | None = None, ring: Ring = NATIVE) -> list:
    """Hankel product ``y = A x`` by recursive three-way splitting.

    ``a`` is a :class:`~hankelmv.structured.HankelMatrix` or its defining
    sequence of length ``2n - 1``.  In exact rings the result equals the
    schoolbook product for every configuration.
    """
    config = config or KaratsubaConfig()
    seq = as_hankel(a).seq
    n = len(x)
    if len(seq) != 2 * n - 1 or n < 1:
        raise InvalidDimensionError(f"defining sequence of length {len(seq)} does not match order {n}")
    y = _solve(_Ops(ring), seq, list(x), n, 0, config)
    return list(_materialize(y, ring))


def parallel_karatsuba_matvec(a, x: Sequence, config: KaratsubaConfig | None = None, ring: Ring = NATIVE) -> list:
    return karatsuba_matvec(a, x, replace(config or KaratsubaConfig(), parallel=True), ring)


LOG2_3 = math.log2(3)


def ceil_log2(n: int) -> int:
    return (n - 1).bit_length()


def op_count_bounds(n: int, linear_constant: int = 8) -> tuple[int, float]:
    """Upper envelopes for the recursive scheme's multiplications and additions.

    Multiplications: ``3 * 3**ceil(log2 n)``.  Additions:
    ``6 ceil((n+1)/2) n**(log2(3)-1) + 3**ceil(log2 n) + linear_constant * n``.
    """
    k = ceil_log2(n)
    mults = 3 * 3 ** k
    adds = 6 * ((n + 2) // 2) * n ** (LOG2_3 - 1) + 3 ** k + linear_constant * n
    return mults, adds


def single_level_mult_bound(n: int) -> int:
    """``3 ceil((n+1)/2)**2``, about three quarters of the schoolbook n^2."""
    return 3 * ((n + 2) // 2) ** 2
