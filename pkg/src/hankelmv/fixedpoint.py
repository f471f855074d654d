"""Multiprecision numbers with a power-of-two scale, and their limb form.

A :class:`FixedPointNumber` holds ``sign * mantissa * 2**exponent`` with a
mantissa of at most ``precision`` bits.  Arithmetic is exact on the integer
mantissas and the result is rounded (half to even) back to the working
precision, so a number type with enough bits behaves as an exact ring.

:func:`decompose_limbs` splits the mantissa into base ``2**beta`` digits so
that the number becomes a plain sum of float64 values (the weighted limbs
returned by :func:`limb_as_float`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import InvalidLimbError, InvalidParameterError, ScaleError

MAX_LIMB_BITS = 32

# float64 limits for exact scaling: lowest subnormal bit and top exponent.
_FLOAT_MIN_EXP = -1074
_FLOAT_MAX_EXP = 1023


def _round_half_even(mant: int, exp: int, precision: int, sticky: bool = False) -> tuple[int, int]:
    """Round a non-negative mantissa to ``precision`` bits.

    ``sticky`` marks discarded non-zero bits below ``mant`` (from a division).
    """
    excess = mant.bit_length() - precision
    if excess <= 0:
        return mant, exp
    q = mant >> excess
    rem = mant & ((1 << excess) - 1)
    half = 1 << (excess - 1)
    if rem > half or (rem == half and (sticky or q & 1)):
        q += 1
        if q >> precision:
            q >>= 1
            excess += 1
    return q, exp + excess


@dataclass(frozen=True, eq=False)
class FixedPointNumber:
    """Value ``sign * mantissa * 2**exponent`` with ``mantissa < 2**precision``.

    Equality and hashing are by value, so numbers that differ only in scaling
    or working precision compare equal.
    """

    sign: int
    mantissa: int
    exponent: int
    precision: int

    def __post_init__(self):
        if self.precision < 1:
            raise InvalidParameterError(f"precision must be >= 1, got {self.precision}")
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {self.sign}")
        if self.mantissa < 0 or self.mantissa >> self.precision:
            raise ValueError(f"mantissa does not fit in {self.precision} bits")
        if (self.sign == 0) != (self.mantissa == 0):
            raise ValueError("sign is 0 exactly when the mantissa is 0")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, precision: int) -> FixedPointNumber:
        return cls(0, 0, 0, precision)

    @classmethod
    def from_parts(cls, signed_mantissa: int, exponent: int, precision: int | None = None) -> FixedPointNumber:
        """Build from an integer ``signed_mantissa * 2**exponent``.

        With ``precision=None`` the value is kept exactly.
        """
        sign = (signed_mantissa > 0) - (signed_mantissa < 0)
        mant = abs(signed_mantissa)
        if precision is None:
            precision = max(1, mant.bit_length())
        mant, exponent = _round_half_even(mant, exponent, precision)
        if mant == 0:
            return cls(0, 0, 0, precision)
        return cls(sign, mant, exponent, precision)

    @classmethod
    def from_int(cls, k: int, precision: int | None = None) -> FixedPointNumber:
        return cls.from_parts(k, 0, precision)

    @classmethod
    def from_fraction(cls, q, precision: int | None = None) -> FixedPointNumber:
        """Round a rational to ``precision`` bits; ``None`` requires a dyadic ``q``."""
        q = Fraction(q)
        if precision is None:
            den = q.denominator
            if den & (den - 1):
                raise ValueError(f"{q} has no finite binary expansion; give a precision")
            return cls.from_parts(q.numerator, -(den.bit_length() - 1))
        if q == 0:
            return cls.zero(precision)
        sign = 1 if q > 0 else -1
        p, d = abs(q.numerator), q.denominator
        # scale so the integer quotient carries precision+2 or +3 bits
        s = precision + 2 - (p.bit_length() - d.bit_length())
        num, den = (p << s, d) if s >= 0 else (p, d << -s)
        t, r = divmod(num, den)
        mant, exp = _round_half_even(t, -s, precision, sticky=r != 0)
        return cls(sign, mant, exp, precision)

    @classmethod
    def from_float(cls, x: float, precision: int = 53) -> FixedPointNumber:
        if not math.isfinite(x):
            raise ValueError(f"cannot represent {x!r}")
        return cls.from_fraction(Fraction(x), precision)

    # -- conversions --------------------------------------------------------

    @property
    def signed_mantissa(self) -> int:
        return self.sign * self.mantissa

    def to_fraction(self) -> Fraction:
        if self.exponent >= 0:
            return Fraction(self.signed_mantissa << self.exponent)
        return Fraction(self.signed_mantissa, 1 << -self.exponent)

    def __float__(self) -> float:
        return float(self.to_fraction())

    def rounded(self, precision: int) -> FixedPointNumber:
        return FixedPointNumber.from_parts(self.signed_mantissa, self.exponent, precision)

    def scaled(self, k: int) -> FixedPointNumber:
        """Exact multiplication by ``2**k``."""
        if self.sign == 0:
            return self
        return FixedPointNumber(self.sign, self.mantissa, self.exponent + k, self.precision)

    # -- arithmetic ---------------------------------------------------------

    def _other(self, other):
        if isinstance(other, FixedPointNumber):
            return other.signed_mantissa, other.exponent, max(self.precision, other.precision)
        if isinstance(other, int):
            return other, 0, self.precision
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        m2, e2, prec = o
        e = min(self.exponent, e2)
        total = (self.signed_mantissa << (self.exponent - e)) + (m2 << (e2 - e))
        return FixedPointNumber.from_parts(total, e, prec)

    __radd__ = __add__

    def __neg__(self):
        return FixedPointNumber(-self.sign, self.mantissa, self.exponent, self.precision)

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        m2, e2, prec = o
        e = min(self.exponent, e2)
        total = (self.signed_mantissa << (self.exponent - e)) - (m2 << (e2 - e))
        return FixedPointNumber.from_parts(total, e, prec)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        m2, e2, prec = o
        return FixedPointNumber.from_parts(self.signed_mantissa * m2, self.exponent + e2, prec)

    __rmul__ = __mul__

    def __abs__(self):
        return FixedPointNumber(abs(self.sign), self.mantissa, self.exponent, self.precision)

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, FixedPointNumber):
            return self.to_fraction() == other.to_fraction()
        if isinstance(other, (int, float, Rational)):
            return self.to_fraction() == other
        return NotImplemented

    def __hash__(self):
        return hash(self.to_fraction())

    def __lt__(self, other):
        return self.to_fraction() < Fraction(other.to_fraction() if isinstance(other, FixedPointNumber) else other)

    def __le__(self, other):
        return self == other or self < other

    def __repr__(self):
        s = "-" if self.sign < 0 else ""
        return f"FixedPointNumber({s}{self.mantissa:#x}*2^{self.exponent}, b={self.precision})"


def to_dyadic(v) -> tuple[int, int]:
    """Return ``(k, e)`` with ``v == k * 2**e`` exactly.

    Accepts ints, finite floats, :class:`FixedPointNumber` and fractions
    whose denominator is a power of two.
    """
    if isinstance(v, FixedPointNumber):
        return v.signed_mantissa, v.exponent
    if isinstance(v, int):
        return int(v), 0
    if isinstance(v, float):
        if not math.isfinite(v):
            raise ValueError(f"cannot represent {v!r} exactly")
        num, den = v.as_integer_ratio()
    elif isinstance(v, Rational):
        num, den = v.numerator, v.denominator
    else:
        # numpy scalars and friends
        return to_dyadic(float(v))
    if den & (den - 1):
        raise ValueError(f"{v} is not dyadic")
    return num, -(den.bit_length() - 1)


# -- limbs ------------------------------------------------------------------


@dataclass(frozen=True)
class LimbDecomposition:
    """``sign * 2**scale * sum(limbs[k] * 2**(k*beta))``, least significant limb first."""

    beta: int
    l: int
    limbs: tuple[int, ...]
    sign: int
    scale: int
    precision: int

    @property
    def base(self) -> int:
        return 1 << self.beta


def _check_beta(beta: int) -> None:
    if not 1 <= beta <= MAX_LIMB_BITS:
        raise InvalidParameterError(f"limb bits must be in 1..{MAX_LIMB_BITS}, got {beta}")


def limb_count(bits: int, beta: int) -> int:
    """Number of base ``2**beta`` limbs needed for ``bits`` mantissa bits."""
    return -(-bits // beta)


def decompose_limbs(v: FixedPointNumber, beta: int) -> LimbDecomposition:
    _check_beta(beta)
    l = limb_count(v.precision, beta)
    mask = (1 << beta) - 1
    mant = v.mantissa
    limbs = []
    for _ in range(l):
        limbs.append(mant & mask)
        mant >>= beta
    return LimbDecomposition(beta, l, tuple(limbs), v.sign, v.exponent if v.sign else 0, v.precision)


def recompose_limbs(d: LimbDecomposition) -> FixedPointNumber:
    _check_beta(d.beta)
    if len(d.limbs) != d.l:
        raise InvalidLimbError(f"expected {d.l} limbs, got {len(d.limbs)}")
    mant = 0
    for k in reversed(range(d.l)):
        m = d.limbs[k]
        if not 0 <= m < d.base:
            raise InvalidLimbError(f"limb {k} = {m} outside [0, 2**{d.beta})")
        mant = (mant << d.beta) | m
    if mant >> d.precision:
        raise InvalidLimbError(f"limbs exceed the {d.precision}-bit precision")
    if mant == 0:
        return FixedPointNumber.zero(d.precision)
    if d.sign == 0:
        raise InvalidLimbError("non-zero limbs with sign 0")
    return FixedPointNumber(d.sign, mant, d.scale, d.precision)


def limb_as_float(d: LimbDecomposition, k: int) -> float:
    """Weighted limb ``sign * limbs[k] * 2**(scale + k*beta)`` as an exact float64."""
    if not 0 <= k < d.l:
        raise IndexError(f"limb index {k} outside 0..{d.l - 1}")
    m = d.limbs[k]
    if m == 0:
        return 0.0
    exp = d.scale + k * d.beta
    low = exp + (m & -m).bit_length() - 1
    high = exp + m.bit_length() - 1
    if low < _FLOAT_MIN_EXP or high > _FLOAT_MAX_EXP:
        raise ScaleError(f"limb {k} spans 2^{low}..2^{high}, outside float64 range; rescale the exponent")
    return d.sign * math.ldexp(float(m), exp)
