"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s``.  Set
``HANKELMV_FULL_SWEEP=1`` to count every n in 2..1024 for criteria 5 and 7
instead of the default sample (all n up to 300, every power of two and its
neighbours, and a stride-7 sample above 300).
"""

import csv
import io
import os
import random
import time
from fractions import Fraction
from functools import lru_cache

import numpy as np
import pytest

from hankelmv import (
    INTEGERS,
    CirculantMatrix,
    CountingRing,
    FixedPointNumber,
    HankelMatrix,
    KaratsubaConfig,
    ToeplitzMatrix,
    build_decomposed_system,
    circulant_matvec_dense,
    decomp_matvec,
    exact_matvec,
    fft_hankel_matvec,
    hankel_embed_circulant,
    karatsuba_matvec,
    op_count_bounds,
    parallel_karatsuba_matvec,
    reconstruct,
    schoolbook_matvec,
    toeplitz_matvec,
    toeplitz_to_hankel,
)
from hankelmv.cli import main
from hankelmv.decomp import rounded_oracle
from hankelmv.harness import ACCURACY_COLUMNS, CROSSOVER_COLUMNS, CSV_COLUMNS
from hankelmv.karatsuba import single_level_mult_bound
from hankelmv.structured import embedding_operand

pytestmark = pytest.mark.acceptance

FULL_SWEEP = os.environ.get("HANKELMV_FULL_SWEEP") == "1"


@pytest.fixture
def verdict(capsys):
    def report(label, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}{': ' + detail if detail else ''}")
        assert ok, f"{label}: {detail}"
    return report


def sweep_ns():
    if FULL_SWEEP:
        return list(range(2, 1025))
    ns = set(range(2, 301)) | set(range(301, 1025, 7))
    for k in range(1, 11):
        ns |= {2 ** k - 1, 2 ** k, 2 ** k + 1}
    return sorted(n for n in ns if 2 <= n <= 1024)


@lru_cache(maxsize=None)
def counted(n, cutoff=2, max_depth=None):
    r = random.Random(n)
    ring = CountingRing(INTEGERS)
    a = [r.randint(-2 ** 20, 2 ** 20) for _ in range(2 * n - 1)]
    x = [r.randint(-2 ** 20, 2 ** 20) for _ in range(n)]
    karatsuba_matvec(a, x, KaratsubaConfig(cutoff=cutoff, max_depth=max_depth), ring)
    return ring.report()


def random_fixed(r, count, b, spread=0):
    out = []
    for _ in range(count):
        mant = r.randrange(1, 2 ** b)
        out.append(FixedPointNumber.from_parts(r.choice((-1, 1)) * mant, -b - r.randint(0, spread), b))
    return out


def test_c01_karatsuba_equals_schoolbook(verdict):
    ns = list(range(1, 65)) + [100, 127, 128, 255, 256, 257]
    configs = [KaratsubaConfig(cutoff=c, max_depth=d) for c in (1, 2, 4, 8) for d in (1, 2, None)]
    start = time.perf_counter()
    mismatches = 0
    for n in ns:
        for seed in range(20):
            r = random.Random(f"c1:{n}:{seed}")
            a = [r.randint(-2 ** 64, 2 ** 64) for _ in range(2 * n - 1)]
            x = [r.randint(-2 ** 64, 2 ** 64) for _ in range(n)]
            want = schoolbook_matvec(a, x, INTEGERS)
            mismatches += sum(karatsuba_matvec(a, x, cfg, INTEGERS) != want for cfg in configs)
    elapsed = time.perf_counter() - start
    runs = len(ns) * 20 * len(configs)
    verdict("C1 karatsuba == schoolbook (exact ring)", mismatches == 0 and elapsed < 60,
            f"{runs} runs, {mismatches} mismatches, {elapsed:.1f}s (target < 60s)")


def test_c02_fft_matches_schoolbook(verdict):
    worst = 0.0
    for n in range(1, 129):
        rng = np.random.default_rng(n)
        for _ in range(20):
            a = rng.uniform(-1, 1, 2 * n - 1).tolist()
            x = rng.uniform(-1, 1, n).tolist()
            exact = exact_matvec(a, x)
            y = fft_hankel_matvec(a, x)
            err = max(abs(Fraction(float(v)) - e) for v, e in zip(y, exact))
            worst = max(worst, float(err / max(abs(e) for e in exact)))
    verdict("C2 fft vs schoolbook, rel err <= 1e-9", worst <= 1e-9, f"worst normwise rel err {worst:.3e}")


def test_c03_layout_exact(verdict):
    r = random.Random("c3")
    failures = checked = 0
    for n in range(1, 9):
        for l in range(1, 5):
            beta = 16
            for _ in range(5):
                a = random_fixed(r, 2 * n - 1, l * beta, spread=0)
                x = random_fixed(r, n, l * beta, spread=0)
                s = build_decomposed_system(a, x, beta)
                assert s.l == l
                ahat = [Fraction(v) for v in s.ahat]
                xhat = [Fraction(v) for v in s.xhat]
                yhat = schoolbook_matvec(ahat, xhat)
                y = [v.to_fraction() * Fraction(2) ** (s.a_scale + s.x_scale) for v in reconstruct(yhat, n, l)]
                failures += y != exact_matvec(a, x)
                checked += 1
    verdict("C3 enlarged layout + stride-2l reconstruction bit-exact", failures == 0,
            f"{checked} instances (n<=8, l<=4), {failures} mismatches")


def test_c04_decomp_exact_regime(verdict):
    r = random.Random("c4")
    failures = checked = 0
    for n in range(1, 17):
        for _ in range(20):
            a = random_fixed(r, 2 * n - 1, 32)
            x = random_fixed(r, n, 32)
            y, _ = decomp_matvec(a, x, beta=16)
            want = rounded_oracle(a, x, 32)
            failures += [v.to_fraction() for v in y] != [w.to_fraction() for w in want]
            checked += 1
    verdict("C4 decomp bit-exact vs oracle rounded to 32 bits (beta=16, n<=16)", failures == 0,
            f"{checked} instances, {failures} mismatches")


def test_c05a_multiplication_bound(verdict):
    ns = sweep_ns()
    bad = [n for n in ns if counted(n).multiplications > op_count_bounds(n)[0]]
    verdict("C5a mults <= 3*3^ceil(log2 n)", not bad,
            f"{len(ns)} values of n in 2..1024 ({'full' if FULL_SWEEP else 'sampled'}), violations {bad[:5]}")


def test_c05b_power_of_two_ratio(verdict):
    ratios = {2 ** k: Fraction(counted(2 ** (k + 1)).multiplications, counted(2 ** k).multiplications)
              for k in range(1, 10)}
    bad = {n: float(q) for n, q in ratios.items() if q != 3}
    verdict("C5b M(2n)/M(n) == 3 exactly for power-of-two n (cutoff 2)", not bad,
            "ratios " + ", ".join(f"{n}:{float(q):.4f}" for n, q in ratios.items()))


def test_c06_single_level_saving(verdict):
    bound_bad, square_bad = [], []
    for n in range(4, 257):
        m = counted(n, max_depth=1).multiplications
        if m > single_level_mult_bound(n):
            bound_bad.append(n)
        if not m < n * n:
            square_bad.append(n)
    verdict("C6 single level: mults <= 3*ceil((n+1)/2)^2 and < n^2 for n in 4..256",
            not bound_bad and not square_bad, f"bound violations {bound_bad[:5]}, n^2 violations {square_bad[:5]}")


def test_c07_addition_envelope(verdict):
    ns = [n for n in sweep_ns() if n >= 4]
    bad = [n for n in ns if counted(n).additions > op_count_bounds(n)[1]]
    detail = f"{len(ns)} values of n ({'full' if FULL_SWEEP else 'sampled'}), {len(bad)} violations"
    if bad:
        worst = max(bad, key=lambda n: counted(n).additions / op_count_bounds(n)[1])
        detail += (f", first n={bad[0]}, worst n={worst}: {counted(worst).additions} adds vs envelope "
                   f"{op_count_bounds(worst)[1]:.0f}")
    verdict("C7 adds <= 6*ceil((n+1)/2)*n^(log2 3 - 1) + 3^ceil(log2 n) + 8n", not bad, detail)


def test_c08_parallel_determinism(verdict):
    problems = []
    for n in (64, 256, 1024):
        r = random.Random(f"c8:{n}")
        a = [r.randint(-2 ** 64, 2 ** 64) for _ in range(2 * n - 1)]
        x = [r.randint(-2 ** 64, 2 ** 64) for _ in range(n)]
        seq_ring, par_ring = CountingRing(INTEGERS), CountingRing(INTEGERS)
        ys = karatsuba_matvec(a, x, ring=seq_ring)
        yp = parallel_karatsuba_matvec(a, x, ring=par_ring)
        if ys != yp or seq_ring.report() != par_ring.report():
            problems.append(n)
    verdict("C8 parallel output and counters equal sequential", not problems, f"n in (64, 256, 1024), differing {problems}")


def test_c09_experiment_shape(verdict, tmp_path, capsys):
    out = tmp_path / "crossover.csv"
    code = main(["crossover", "--n", "pow2:2-4096", "--ring", "float64", "--reps", "1", "--out", str(out)])
    err = capsys.readouterr().err
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    summary = list(csv.DictReader(io.StringIO((tmp_path / "crossover.summary.csv").read_text())))
    ns = sorted({int(r["n"]) for r in rows})
    crossover_ok = (
        code == 0
        and tuple(rows[0]) == CSV_COLUMNS
        and ns == [2 ** k for k in range(1, 13)]
        and len(rows) == 3 * 12
        and all(r["wall_time_ns"] for r in rows)
        and tuple(summary[0]) == CROSSOVER_COLUMNS
        and "never asserted" in err
    )
    acc = tmp_path / "accuracy.csv"
    code = main(["accuracy", "--n", "4,16,64", "--bits", "64,256,1024,4096", "--limb-bits", "16",
                 "--out", str(acc)])
    err = capsys.readouterr().err
    acc_rows = list(csv.DictReader(io.StringIO(acc.read_text())))
    accuracy_ok = (
        code == 0
        and tuple(acc_rows[0]) == ACCURACY_COLUMNS
        and len(acc_rows) == 12
        and all(r["bits_lost"].isdigit() for r in acc_rows)
        and "no bound" in err
    )
    lost = {(r["n"], r["bits"]): r["bits_lost"] for r in acc_rows}
    verdict("C9 crossover CSV + accuracy grid emitted", crossover_ok and accuracy_ok,
            f"crossover rows {len(rows)}, accuracy rows {len(acc_rows)}, bits_lost at n=16: "
            + ", ".join(f"b={b}:{lost[('16', str(b))]}" for b in (64, 256, 1024, 4096)))


def test_c10_structural_identities(verdict):
    failures = checked = 0
    for seed in range(50):
        r = random.Random(f"c10:{seed}")
        n = r.randint(1, 16)
        a = [r.randint(-2 ** 40, 2 ** 40) for _ in range(2 * n - 1)]
        x = [r.randint(-2 ** 40, 2 ** 40) for _ in range(n)]
        T = ToeplitzMatrix(a)
        H = HankelMatrix(a)
        dense_t = [sum(T.to_dense()[i][j] * x[j] for j in range(n)) for i in range(n)]
        toeplitz_ok = toeplitz_matvec(T, x) == dense_t and toeplitz_to_hankel(T).to_dense() == T.to_dense()[::-1]
        C = hankel_embed_circulant(H, INTEGERS)
        assert isinstance(C, CirculantMatrix)
        circ_ok = circulant_matvec_dense(C, embedding_operand(x, INTEGERS), INTEGERS)[:n] == schoolbook_matvec(H, x)
        failures += not (toeplitz_ok and circ_ok)
        checked += 1
    verdict("C10 Toeplitz-via-Hankel and circulant embedding identities", failures == 0,
            f"{checked} instances (n<=16), {failures} failures")
