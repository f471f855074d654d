"""Coefficient rings the matvec kernels are generic over.

A ring supplies ``add``, ``sub``, ``mul``, ``zero()``, ``from_integer(k)``
and a ``close(u, v)`` predicate.  The concrete rings delegate to Python
operators, so the kernels run on ints, floats and
:class:`~hankelmv.fixedpoint.FixedPointNumber` alike.

:class:`CountingRing` wraps another ring and tallies every multiplication
and every addition or subtraction that passes through it.
"""

from __future__ import annotations

import math
import operator
import threading
from dataclasses import dataclass

from .fixedpoint import FixedPointNumber


class Ring:
    """Ring whose operations are the plain Python operators."""

    name = "native"
    exact = False

    add = staticmethod(operator.add)
    sub = staticmethod(operator.sub)
    mul = staticmethod(operator.mul)

    def zero(self):
        return 0

    def from_integer(self, k: int):
        return k

    def close(self, u, v) -> bool:
        return u == v

    def __repr__(self):
        return f"{type(self).__name__}()"


class IntegerRing(Ring):
    name = "exact-int"
    exact = True


class Float64Ring(Ring):
    name = "float64"

    def __init__(self, rel_tol: float = 1e-9, abs_tol: float = 0.0):
        self.rel_tol = rel_tol
        self.abs_tol = abs_tol

    def zero(self):
        return 0.0

    def from_integer(self, k: int):
        return float(k)

    def close(self, u, v) -> bool:
        return math.isclose(u, v, rel_tol=self.rel_tol, abs_tol=self.abs_tol)


class FixedPointRing(Ring):
    """b-bit multiprecision numbers; exact whenever results fit in ``precision`` bits."""

    name = "fixed-point"
    exact = True

    def __init__(self, precision: int):
        self.precision = precision

    def zero(self):
        return FixedPointNumber.zero(self.precision)

    def from_integer(self, k: int):
        return FixedPointNumber.from_int(k, self.precision)

    def __repr__(self):
        return f"FixedPointRing(precision={self.precision})"


NATIVE = Ring()
INTEGERS = IntegerRing()
FLOAT64 = Float64Ring()


@dataclass(frozen=True)
class OpCountReport:
    """Multiplication and addition tallies; subtractions count as additions."""

    multiplications: int = 0
    additions: int = 0

    def __add__(self, other: OpCountReport) -> OpCountReport:
        return OpCountReport(self.multiplications + other.multiplications, self.additions + other.additions)


class CountingRing(Ring):
    """Transparent wrapper around ``inner`` that counts ring operations.

    Each thread increments its own tally and :meth:`report` sums them, so the
    totals from concurrent recursion equal the sequential totals exactly.
    """

    def __init__(self, inner: Ring | None = None):
        self.inner = inner if inner is not None else NATIVE
        self.name = self.inner.name
        self.exact = self.inner.exact
        self._local = threading.local()
        self._tallies: list[list[int]] = []
        self._lock = threading.Lock()

    def _tally(self) -> list[int]:
        try:
            return self._local.tally
        except AttributeError:
            tally = self._local.tally = [0, 0]
            with self._lock:
                self._tallies.append(tally)
            return tally

    def add(self, u, v):
        self._tally()[1] += 1
        return self.inner.add(u, v)

    def sub(self, u, v):
        self._tally()[1] += 1
        return self.inner.sub(u, v)

    def mul(self, u, v):
        self._tally()[0] += 1
        return self.inner.mul(u, v)

    def zero(self):
        return self.inner.zero()

    def from_integer(self, k: int):
        return self.inner.from_integer(k)

    def close(self, u, v) -> bool:
        return self.inner.close(u, v)

    def report(self) -> OpCountReport:
        with self._lock:
            mults = sum(t[0] for t in self._tallies)
            adds = sum(t[1] for t in self._tallies)
        return OpCountReport(mults, adds)

    def __repr__(self):
        return f"CountingRing({self.inner!r})"


def counting_scope(inner: Ring | None, computation) -> OpCountReport:
    """Run ``computation(ring)`` through a fresh counting wrapper of ``inner``.

    >>> counting_scope(INTEGERS, lambda r: r.add(r.mul(2, 3), 1))
    OpCountReport(multiplications=1, additions=1)
    """
    ring = CountingRing(inner)
    computation(ring)
    return ring.report()
