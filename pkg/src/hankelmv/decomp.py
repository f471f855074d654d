"""Multiprecision Hankel products through one large float64 FFT product.

Every entry is split into ``l`` weighted limbs (float64 values whose plain sum
is the entry).  The order-n system becomes an order ``m = 2nl`` Hankel system:
each entry's limbs appear twice in a row in the enlarged defining sequence,
and each vector entry's limbs are followed by ``l`` zeros.  Row ``2l(i-1)+s``
of the enlarged product then holds the ``s``-fold cyclic shift of limb
pairings for output ``i``, so summing the ``l`` rows of a window recovers
``y_i``.  Windows start every ``2l`` rows.

Limb values are normalized into (-1, 1) before the FFT; the result is scaled
back by the product of the two normalizing powers of two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InvalidDimensionError, ScaleError
from .fft import fft_hankel_matvec
from .fixedpoint import (
    FixedPointNumber,
    decompose_limbs,
    limb_as_float,
    limb_count,
    to_dyadic,
)
from .structured import HankelMatrix, as_hankel, exact_matvec

DEFAULT_LIMB_BITS = 16


@dataclass(frozen=True)
class DecomposedSystem:
    """Enlarged float64 Hankel system.

    ``a_i == 2**a_scale * sum(limbs of a_i)`` and likewise for ``x``;
    ``flushed`` counts limbs dropped below the float64 range.
    """

    n: int
    l: int
    beta: int
    mhat: int
    ahat: np.ndarray
    xhat: np.ndarray
    a_scale: int
    x_scale: int
    flushed: int = 0


@dataclass(frozen=True)
class DecompAccuracyRecord:
    n: int
    b: int
    beta: int
    l: int
    max_rel_error: float
    max_abs_error: float
    bits_lost: int
    exact_match: bool
    flushed_limbs: int = 0


def _declared_precision(values) -> int:
    return max((v.precision for v in values if isinstance(v, FixedPointNumber)), default=0)


def _aligned(values) -> tuple[list[int], int, int]:
    """Integers ``k_i`` and a shared exponent ``e`` with ``v_i == k_i * 2**e``, plus bit width."""
    parts = [to_dyadic(v) for v in values]
    e = min((p for k, p in parts if k), default=0)
    ints = [k << (p - e) if k else 0 for k, p in parts]
    width = max(_declared_precision(values), max((abs(k).bit_length() for k in ints), default=0), 1)
    return ints, e, width


def _weighted_limbs(k: int, l: int, beta: int, flush: bool) -> tuple[list[float], int]:
    """Limbs of ``k * 2**(-l*beta)``, a value in (-1, 1)."""
    sign = (k > 0) - (k < 0)
    v = FixedPointNumber(sign, abs(k), -l * beta, l * beta) if k else FixedPointNumber.zero(l * beta)
    d = decompose_limbs(v, beta)
    out, flushed = [], 0
    for j in range(l):
        try:
            out.append(limb_as_float(d, j))
        except ScaleError:
            if not flush:
                raise
            out.append(0.0)
            flushed += 1
    return out, flushed


def build_decomposed_system(H, x: Sequence, beta: int = DEFAULT_LIMB_BITS,
                            flush_underflow: bool = False) -> DecomposedSystem:
    """Lay out the enlarged system.

    Raises :class:`~hankelmv.errors.ScaleError` when limbs fall below the
    float64 range (roughly ``l * beta > 1074``), unless ``flush_underflow``
    replaces them by zeros.
    """
    H = as_hankel(H)
    n = H.n
    if len(x) != n:
        raise InvalidDimensionError(f"vector of length {len(x)} does not match order {n}")
    a_int, ea, a_bits = _aligned(H.seq)
    x_int, ex, x_bits = _aligned(x)
    l = max(limb_count(a_bits, beta), limb_count(x_bits, beta))
    lb = l * beta
    mhat = 2 * n * l
    ahat = np.zeros(2 * mhat - 1)
    xhat = np.zeros(mhat)
    flushed = 0
    for i, k in enumerate(a_int):
        limbs, fl = _weighted_limbs(k, l, beta, flush_underflow)
        flushed += fl
        start = 2 * l * i
        ahat[start:start + l] = limbs
        ahat[start + l:start + 2 * l] = limbs
    for j, k in enumerate(x_int):
        limbs, fl = _weighted_limbs(k, l, beta, flush_underflow)
        flushed += fl
        xhat[2 * l * j:2 * l * j + l] = limbs
    return DecomposedSystem(n, l, beta, mhat, ahat, xhat, ea + lb, ex + lb, flushed)


def _exact_sum(values) -> FixedPointNumber:
    parts = [to_dyadic(v) for v in values]
    parts = [(k, e) for k, e in parts if k]
    if not parts:
        return FixedPointNumber.zero(1)
    e0 = min(e for _, e in parts)
    return FixedPointNumber.from_parts(sum(k << (e - e0) for k, e in parts), e0)


def reconstruct(yhat: Sequence, n: int, l: int, stride: int | None = None) -> list[FixedPointNumber]:
    """Window sums ``y_i = sum(yhat[stride*i : stride*i + l])``, accumulated exactly.

    ``stride`` defaults to ``2l``, the window spacing of the doubled layout.
    ``stride=l`` reproduces the literal single-stride formula for comparison;
    it is wrong for ``n >= 2``.
    """
    stride = 2 * l if stride is None else stride
    need = stride * (n - 1) + l
    if len(yhat) < need:
        raise InvalidDimensionError(f"need at least {need} enlarged outputs, got {len(yhat)}")
    return [_exact_sum(yhat[stride * i:stride * i + l]) for i in range(n)]


def rounded_oracle(H, x: Sequence, precision: int | None) -> list[FixedPointNumber]:
    """Exact product, correctly rounded to ``precision`` bits (exact when ``None``)."""
    return [FixedPointNumber.from_fraction(v, precision) for v in exact_matvec(H, x)]


def _log2_fraction(q: Fraction) -> float:
    return math.log2(q.numerator) - math.log2(q.denominator)


def accuracy_record(y: Sequence, exact: Sequence[Fraction], n: int, b: int, beta: int, l: int,
                    precision: int | None, flushed: int = 0) -> DecompAccuracyRecord:
    """Normwise error of ``y`` against ``exact``: ``max|y - exact| / max|exact|``."""
    errs = [abs(Fraction(v.to_fraction() if isinstance(v, FixedPointNumber) else v) - e) for v, e in zip(y, exact)]
    max_abs = max(errs, default=Fraction(0))
    scale = max((abs(e) for e in exact), default=Fraction(0))
    if max_abs == 0:
        rel, bits_lost = 0.0, 0
    elif scale == 0:
        rel, bits_lost = math.inf, b
    else:
        log_rel = _log2_fraction(max_abs) - _log2_fraction(scale)
        rel = 2.0 ** log_rel if log_rel < 1000 else math.inf
        bits_lost = max(0, math.ceil(log_rel + b))
    match = list(y) == [FixedPointNumber.from_fraction(e, precision) for e in exact]
    try:
        abs_f = float(max_abs)
    except OverflowError:
        abs_f = math.inf
    return DecompAccuracyRecord(n, b, beta, l, rel, abs_f, bits_lost, match, flushed)


def decomp_matvec(H, x: Sequence, beta: int = DEFAULT_LIMB_BITS, precision: int | None = None,
                  oracle: bool = False, flush_underflow: bool = False, stride: int | None = None):
    """Hankel product through the enlarged float64 system.

    Returns ``(y, record)``.  ``y`` holds :class:`FixedPointNumber` values
    rounded to ``precision`` bits; the default is the largest input precision,
    or unrounded window sums if all inputs are plain ints/floats.  ``record`` is a
    :class:`DecompAccuracyRecord` against the exact product when ``oracle`` is
    set, else ``None``.
    """
    H = as_hankel(H)
    if precision is None:
        precision = max(_declared_precision(H.seq), _declared_precision(x)) or None
    system = build_decomposed_system(H, x, beta, flush_underflow)
    yhat = fft_hankel_matvec(HankelMatrix(system.ahat), system.xhat)
    shift = system.a_scale + system.x_scale
    y = [v.scaled(shift) for v in reconstruct(yhat, system.n, system.l, stride)]
    if precision is not None:
        y = [v.rounded(precision) for v in y]
    record = None
    if oracle:
        b = precision or max(_aligned(H.seq)[2], _aligned(x)[2])
        record = accuracy_record(y, exact_matvec(H, x), system.n, b, beta, system.l, precision, system.flushed)
    return y, record


def enlarged_complexity_estimate(n: int, b: int, beta: int) -> float:
    """``m log2 m`` for the enlarged order ``m = 2 n ceil(b / beta)``."""
    m = 2 * n * limb_count(b, beta)
    return m * math.log2(m)
