"""Experiment driver: input generation, cross-validation, op counts, timing, accuracy.

All error columns are measured against the exact product (integer arithmetic
on aligned dyadic entries), never against another fast kernel.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import random
import statistics
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations

from .decomp import DecompAccuracyRecord, decomp_matvec
from .errors import ConfigError
from .fft import fft_hankel_matvec
from .fixedpoint import FixedPointNumber
from .karatsuba import (
    KaratsubaConfig,
    karatsuba_matvec,
    op_count_bounds,
    single_level_mult_bound,
)
from .rings import FLOAT64, INTEGERS, CountingRing, FixedPointRing, Ring
from .structured import HankelMatrix, exact_matvec, schoolbook_matvec

log = logging.getLogger(__name__)

METHODS = ("schoolbook", "fft", "decomp", "karatsuba", "karatsuba-parallel")
RING_METHODS = ("schoolbook", "karatsuba", "karatsuba-parallel")
RINGS = ("float64", "exact-int", "fixed-point")
GENERATORS = ("uniform-int", "uniform-real", "hilbert", "ones")
FORMATS = ("csv", "json")

INT_BOUND = 2 ** 20
FLOAT_TOLERANCE = 1e-9

CSV_COLUMNS = (
    "method", "n", "ring", "bits", "limb_bits", "cutoff",
    "wall_time_ns", "mults", "adds", "max_rel_error", "exact_match",
)
OPCOUNT_COLUMNS = (
    "n", "cutoff", "max_depth", "mults", "adds", "schoolbook_mults",
    "mult_bound", "add_bound", "mult_ok", "add_ok", "mult_ratio",
)
ACCURACY_COLUMNS = (
    "n", "bits", "limb_bits", "l", "max_rel_error", "max_abs_error",
    "bits_lost", "exact_match", "flushed_limbs",
)
CROSSOVER_COLUMNS = ("method_a", "method_b", "faster_at_start", "time_flip_n", "mult_flip_n")

CROSSOVER_NOTE = (
    "A crossover near n=8000 for b=32768-bit entries (FFT ahead only beyond it) depends "
    "on the multiprecision library and hardware; it is measured here, never asserted. "
    "Operation counts favour the recursive scheme over schoolbook for every n>3."
)


@dataclass(frozen=True)
class ExperimentConfig:
    methods: tuple[str, ...] = ("schoolbook", "fft", "karatsuba")
    ring: str = "exact-int"
    ns: tuple[int, ...] = (4, 16, 64)
    bits: tuple[int, ...] = (64,)
    limb_bits: tuple[int, ...] = (16,)
    cutoff: int = 2
    max_depth: int | None = None
    seed: int = 0
    generator: str = "uniform-int"
    reps: int = 5
    fmt: str = "csv"
    oracle: bool = True

    def validate(self) -> None:
        unknown = set(self.methods) - set(METHODS)
        if unknown or not self.methods:
            raise ConfigError(f"unknown or empty method set: {sorted(unknown)}")
        if self.ring not in RINGS:
            raise ConfigError(f"ring must be one of {RINGS}, got {self.ring!r}")
        if self.generator not in GENERATORS:
            raise ConfigError(f"generator must be one of {GENERATORS}, got {self.generator!r}")
        if self.fmt not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        if not self.ns or min(self.ns) < 1:
            raise ConfigError("every n must be >= 1")
        if not self.bits or not self.limb_bits:
            raise ConfigError("bits and limb bits must be given")
        if min(self.limb_bits) < 1 or max(self.limb_bits) > 32:
            raise ConfigError("limb bits must lie in 1..32")
        if min(self.bits) < max(self.limb_bits):
            raise ConfigError("need bits >= limb bits >= 1")
        if self.reps < 1:
            raise ConfigError("repetitions must be >= 1")
        if self.cutoff < 1 or (self.max_depth is not None and self.max_depth < 1):
            raise ConfigError("cutoff and max depth must be >= 1")
        if "decomp" in self.methods and self.ring != "fixed-point":
            raise ConfigError("the decomp method needs the fixed-point ring")
        if self.ring == "exact-int" and self.generator in ("uniform-real", "hilbert"):
            raise ConfigError(f"generator {self.generator!r} has no exact-int realization")

    @property
    def karatsuba(self) -> KaratsubaConfig:
        return KaratsubaConfig(cutoff=self.cutoff, max_depth=self.max_depth)


@dataclass
class RunRecord:
    method: str
    n: int
    ring: str
    bits: int
    limb_bits: int
    cutoff: int
    wall_time_ns: int | None = None
    mults: int | None = None
    adds: int | None = None
    max_rel_error: float | None = None
    exact_match: bool | None = None


def make_ring(name: str, bits: int) -> Ring:
    if name == "float64":
        return FLOAT64
    if name == "exact-int":
        return INTEGERS
    if name == "fixed-point":
        return FixedPointRing(bits)
    raise ConfigError(f"unknown ring {name!r}")


def _rng(kind: str, n: int, seed: int, tag: str) -> random.Random:
    return random.Random(f"{kind}:{n}:{seed}:{tag}")


def _draw(kind: str, rng: random.Random, count: int, ring: str, bits: int, offset: int = 1) -> list:
    if kind == "ones":
        return [make_ring(ring, bits).from_integer(1) for _ in range(count)]
    if kind == "uniform-int":
        ks = [rng.randint(-INT_BOUND, INT_BOUND) for _ in range(count)]
        if ring == "float64":
            return [float(k) for k in ks]
        if ring == "fixed-point":
            return [FixedPointNumber.from_int(k, bits) for k in ks]
        return ks
    if kind == "uniform-real":
        if ring == "float64":
            return [rng.uniform(-1.0, 1.0) for _ in range(count)]
        if ring == "fixed-point":
            return [FixedPointNumber.from_parts(rng.choice((-1, 1)) * rng.getrandbits(bits), -bits, bits)
                    for _ in range(count)]
    if kind == "hilbert":
        if ring == "float64":
            return [1.0 / k for k in range(offset, offset + count)]
        if ring == "fixed-point":
            return [FixedPointNumber.from_fraction(Fraction(1, k), bits) for k in range(offset, offset + count)]
    raise ConfigError(f"generator {kind!r} is not available for ring {ring!r}")


def generate_hankel(kind: str, n: int, seed: int, ring: str, bits: int = 64) -> tuple[HankelMatrix, list]:
    """Deterministic test system; ``hilbert`` pairs ``a_k = 1/k`` with a uniform-real vector."""
    a = _draw(kind, _rng(kind, n, seed, "a"), 2 * n - 1, ring, bits)
    x_kind = "uniform-real" if kind == "hilbert" else kind
    x = _draw(x_kind, _rng(kind, n, seed, "x"), n, ring, bits)
    return HankelMatrix(a), x


def _run(method: str, H: HankelMatrix, x: list, config: ExperimentConfig, ring: Ring, limb_bits: int):
    if method == "schoolbook":
        return schoolbook_matvec(H, x, ring)
    if method == "karatsuba":
        return karatsuba_matvec(H, x, config.karatsuba, ring)
    if method == "karatsuba-parallel":
        return karatsuba_matvec(H, x, KaratsubaConfig(config.cutoff, config.max_depth, parallel=True), ring)
    if method == "fft":
        return list(fft_hankel_matvec(H, x))
    if method == "decomp":
        precision = getattr(ring, "precision", None)
        return decomp_matvec(H, x, limb_bits, precision=precision, flush_underflow=True)[0]
    raise ConfigError(f"unknown method {method!r}")


def _time(fn, reps: int) -> int:
    samples = []
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        fn()
        samples.append(time.perf_counter_ns() - t0)
    return int(statistics.median(samples))


def _as_fraction(v) -> Fraction:
    if isinstance(v, FixedPointNumber):
        return v.to_fraction()
    return Fraction(v)


def relative_error(y, exact: list[Fraction]) -> float:
    """Normwise ``max|y - exact| / max|exact|`` (0 when both vanish)."""
    err = max((abs(_as_fraction(v) - e) for v, e in zip(y, exact)), default=Fraction(0))
    scale = max((abs(e) for e in exact), default=Fraction(0))
    if err == 0:
        return 0.0
    if scale == 0:
        return math.inf
    return float(err / scale)


def _exact_match(y, exact: list[Fraction], ring_name: str, bits: int) -> bool | None:
    if ring_name == "exact-int":
        return all(_as_fraction(v) == e for v, e in zip(y, exact))
    if ring_name == "fixed-point":
        return all(_as_fraction(v) == FixedPointNumber.from_fraction(e, bits).to_fraction() for v, e in zip(y, exact))
    return None


def _grid(config: ExperimentConfig):
    for bits in config.bits:
        for limb_bits in config.limb_bits:
            for n in config.ns:
                yield bits, limb_bits, n


def _measure(config: ExperimentConfig, with_oracle: bool) -> list[RunRecord]:
    config.validate()
    records = []
    for bits, limb_bits, n in _grid(config):
        ring = make_ring(config.ring, bits)
        H, x = generate_hankel(config.generator, n, config.seed, config.ring, bits)
        exact = exact_matvec(H, x) if with_oracle else None
        for method in config.methods:
            rec = RunRecord(method, n, config.ring, bits, limb_bits, config.cutoff)
            rec.wall_time_ns = _time(lambda: _run(method, H, x, config, ring, limb_bits), config.reps)
            if method in RING_METHODS:
                counter = CountingRing(ring)
                y = _run(method, H, x, config, counter, limb_bits)
                report = counter.report()
                rec.mults, rec.adds = report.multiplications, report.additions
            else:
                y = _run(method, H, x, config, ring, limb_bits)
            if exact is not None:
                rec.max_rel_error = relative_error(y, exact)
                rec.exact_match = _exact_match(y, exact, config.ring, bits)
            log.debug("%s n=%d: %s", method, n, rec)
            records.append(rec)
    return records


def run_compare(config: ExperimentConfig) -> list[RunRecord]:
    """Run every selected method on identical inputs and score it against the exact product."""
    return _measure(config, with_oracle=config.oracle)


def compare_failures(records: list[RunRecord]) -> list[RunRecord]:
    """Records violating a validated invariant.

    Exact-int ring: ring-generic methods must reproduce the exact product.
    float64 ring: every method must stay within 1e-9 normwise relative error.
    Fixed-point results are reported only.
    """
    bad = []
    for r in records:
        if r.ring == "exact-int" and r.method in RING_METHODS and r.exact_match is False:
            bad.append(r)
        elif r.ring == "float64" and r.max_rel_error is not None and r.max_rel_error > FLOAT_TOLERANCE:
            bad.append(r)
    return bad


@dataclass
class CrossoverResult:
    records: list[RunRecord]
    summary: list[dict] = field(default_factory=list)
    note: str = CROSSOVER_NOTE


def _first_flip(ns, better) -> tuple[str, int | None]:
    """Winner at the smallest n and the first n where the other method wins."""
    start = better(ns[0])
    for n in ns[1:]:
        w = better(n)
        if w is not None and start is not None and w != start:
            return start, n
    return start, None


def run_crossover(config: ExperimentConfig) -> CrossoverResult:
    """Median timings and op counts per (method, n), plus the first flip point per method pair."""
    records = _measure(config, with_oracle=False)
    summary = []
    by_key = {(r.method, r.n, r.bits, r.limb_bits): r for r in records}
    for bits, limb_bits in sorted({(b, lb) for b, lb, _ in _grid(config)}):
        ns = sorted(set(config.ns))
        for ma, mb in combinations(config.methods, 2):
            def faster(n, attr="wall_time_ns"):
                ra, rb = by_key[(ma, n, bits, limb_bits)], by_key[(mb, n, bits, limb_bits)]
                va, vb = getattr(ra, attr), getattr(rb, attr)
                if va is None or vb is None:
                    return None
                return ma if va <= vb else mb
            start, flip = _first_flip(ns, faster)
            _, mflip = _first_flip(ns, lambda n: faster(n, "mults"))
            summary.append({
                "method_a": ma,
                "method_b": mb,
                "faster_at_start": start,
                "time_flip_n": flip if flip is not None else "none in range",
                "mult_flip_n": mflip if mflip is not None else "none in range",
            })
    return CrossoverResult(records, summary)


def run_opcount(config: ExperimentConfig) -> list[dict]:
    """Counted operations of the recursive scheme against its envelopes.

    With ``max_depth == 1`` the multiplication envelope is the single-level
    ``3 ceil((n+1)/2)^2`` and, for n > 3, the count must also beat n^2.
    """
    config.validate()
    rows = []
    mults_at = {}
    for bits, _, n in _grid(config):
        H, x = generate_hankel(config.generator, n, config.seed, config.ring, bits)
        counter = CountingRing(make_ring(config.ring, bits))
        karatsuba_matvec(H, x, config.karatsuba, counter)
        rep = counter.report()
        mult_bound, add_bound = op_count_bounds(n)
        if config.max_depth == 1:
            mult_bound = single_level_mult_bound(n)
            mult_ok = rep.multiplications <= mult_bound and (n <= 3 or rep.multiplications < n * n)
        else:
            mult_ok = rep.multiplications <= mult_bound
        half = mults_at.get((bits, n // 2)) if n % 2 == 0 else None
        mults_at[(bits, n)] = rep.multiplications
        rows.append({
            "n": n,
            "cutoff": config.cutoff,
            "max_depth": config.max_depth if config.max_depth is not None else "inf",
            "mults": rep.multiplications,
            "adds": rep.additions,
            "schoolbook_mults": n * n,
            "mult_bound": mult_bound,
            "add_bound": round(add_bound, 3),
            "mult_ok": mult_ok,
            "add_ok": rep.additions <= add_bound,
            "mult_ratio": round(rep.multiplications / half, 6) if half and n & (n - 1) == 0 else "",
        })
    return rows


def run_accuracy_study(config: ExperimentConfig) -> list[DecompAccuracyRecord]:
    """Decomposition error against the exact product over the (n, bits, limb bits) grid."""
    config.validate()
    if config.ring != "fixed-point":
        raise ConfigError("the accuracy study needs the fixed-point ring")
    out = []
    for bits, limb_bits, n in _grid(config):
        H, x = generate_hankel(config.generator, n, config.seed, config.ring, bits)
        _, rec = decomp_matvec(H, x, limb_bits, precision=bits, oracle=True, flush_underflow=True)
        out.append(rec)
    return out


# -- output -------------------------------------------------------------------


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return v


def _rows(items) -> list[dict]:
    return [asdict(r) if not isinstance(r, dict) else r for r in items]


def _accuracy_row(r: DecompAccuracyRecord) -> dict:
    return {"n": r.n, "bits": r.b, "limb_bits": r.beta, "l": r.l, "max_rel_error": r.max_rel_error,
            "max_abs_error": r.max_abs_error, "bits_lost": r.bits_lost, "exact_match": r.exact_match,
            "flushed_limbs": r.flushed_limbs}


def format_rows(items, columns, fmt: str = "csv") -> str:
    rows = _rows(items)
    if fmt == "json":
        def clean(v):
            return None if isinstance(v, float) and not math.isfinite(v) else v
        return json.dumps([{c: clean(row.get(c)) for c in columns} for row in rows], indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def format_records(records: list[RunRecord], fmt: str = "csv") -> str:
    return format_rows(records, CSV_COLUMNS, fmt)


def format_accuracy(records: list[DecompAccuracyRecord], fmt: str = "csv") -> str:
    return format_rows([_accuracy_row(r) for r in records], ACCURACY_COLUMNS, fmt)
