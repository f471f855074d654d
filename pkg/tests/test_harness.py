import csv
import io
import json
import math
from dataclasses import replace
from fractions import Fraction

import pytest

from hankelmv import ConfigError, FixedPointNumber, schoolbook_matvec
from hankelmv.harness import (
    ACCURACY_COLUMNS,
    CSV_COLUMNS,
    OPCOUNT_COLUMNS,
    ExperimentConfig,
    compare_failures,
    format_accuracy,
    format_records,
    format_rows,
    generate_hankel,
    relative_error,
    run_accuracy_study,
    run_compare,
    run_crossover,
    run_opcount,
)

FAST = ExperimentConfig(ns=(1, 5, 16), reps=1)


def parse(text):
    return list(csv.DictReader(io.StringIO(text)))


@pytest.mark.parametrize("kind", ["uniform-int", "uniform-real", "hilbert", "ones"])
@pytest.mark.parametrize("ring", ["float64", "fixed-point"])
def test_generators_deterministic(kind, ring):
    a = generate_hankel(kind, 9, 3, ring, 64)
    b = generate_hankel(kind, 9, 3, ring, 64)
    c = generate_hankel(kind, 9, 4, ring, 64)
    assert a == b
    assert len(a[0].seq) == 17 and len(a[1]) == 9
    if kind != "ones":
        assert a != c


def test_generator_kinds():
    H, x = generate_hankel("ones", 4, 0, "exact-int")
    assert set(H.seq) == {1} and set(x) == {1}
    H, _ = generate_hankel("hilbert", 4, 0, "fixed-point", 64)
    assert isinstance(H.seq[0], FixedPointNumber)
    assert H.seq[0] == 1 and H.seq[1] == FixedPointNumber.from_fraction(Fraction(1, 2), 64)
    H, x = generate_hankel("uniform-int", 30, 0, "exact-int")
    assert all(abs(v) <= 2 ** 20 for v in H.seq + tuple(x))


def test_relative_error():
    assert relative_error([1.0, 2.0], [Fraction(1), Fraction(2)]) == 0
    assert relative_error([1.0, 2.5], [Fraction(1), Fraction(2)]) == pytest.approx(0.25)


@pytest.mark.parametrize("ring", ["exact-int", "float64"])
def test_compare_passes(ring):
    methods = ("schoolbook", "fft", "karatsuba", "karatsuba-parallel")
    records = run_compare(replace(FAST, ring=ring, methods=methods))
    assert len(records) == 12
    assert compare_failures(records) == []
    for r in records:
        assert r.wall_time_ns is not None and r.wall_time_ns >= 0
        if r.method != "fft":
            assert r.mults is not None
    k = next(r for r in records if r.method == "karatsuba" and r.n == 16)
    assert k.mults == 146


def test_compare_fixed_point_with_decomp():
    config = replace(FAST, ring="fixed-point", bits=(32,), generator="uniform-real",
                     methods=("schoolbook", "decomp"))
    records = run_compare(config)
    for r in records:
        assert r.max_rel_error is not None and r.max_rel_error < 1e-8


def test_failures_detected():
    from hankelmv.harness import RunRecord
    bad = RunRecord("karatsuba", 4, "exact-int", 64, 16, 2, exact_match=False)
    noisy = RunRecord("fft", 4, "float64", 64, 16, 2, max_rel_error=1e-6)
    fine = RunRecord("fft", 4, "exact-int", 64, 16, 2, exact_match=False)
    assert compare_failures([bad, noisy, fine]) == [bad, noisy]


@pytest.mark.parametrize("kwargs", [
    {"methods": ("nope",)},
    {"methods": ()},
    {"ring": "complex"},
    {"ns": (0,)},
    {"reps": 0},
    {"limb_bits": (40,)},
    {"bits": (8,), "limb_bits": (16,)},
    {"methods": ("decomp",)},
    {"generator": "hilbert"},
    {"fmt": "xml"},
])
def test_config_errors(kwargs):
    with pytest.raises(ConfigError):
        replace(FAST, **kwargs).validate()


def test_csv_schema():
    text = format_records(run_compare(FAST))
    rows = parse(text)
    assert tuple(rows[0].keys()) == CSV_COLUMNS
    assert len(rows) == 9
    assert {r["exact_match"] for r in rows} <= {"true", "false", ""}


def test_json_output():
    data = json.loads(format_records(run_compare(FAST), "json"))
    assert len(data) == 9 and set(data[0]) == set(CSV_COLUMNS)
    text = format_rows([{"x": math.inf}], ("x",), "json")
    assert json.loads(text) == [{"x": None}]


def test_crossover_summary():
    result = run_crossover(replace(FAST, ring="float64", ns=(2, 4, 8, 16)))
    assert len(result.records) == 12
    assert len(result.summary) == 3
    row = next(s for s in result.summary if {s["method_a"], s["method_b"]} == {"schoolbook", "karatsuba"})
    assert row["mult_flip_n"] == 4
    assert "never asserted" in result.note


def test_opcount_rows():
    rows = run_opcount(replace(FAST, ns=(2, 4, 8, 16), methods=("karatsuba",)))
    assert [r["mults"] for r in rows] == [4, 14, 46, 146]
    assert all(r["mult_ok"] for r in rows)
    assert rows[2]["mult_ratio"] == pytest.approx(46 / 14, abs=1e-6)
    assert set(rows[0]) == set(OPCOUNT_COLUMNS)
    single = run_opcount(replace(FAST, ns=(4, 5, 9), max_depth=1))
    assert all(r["mult_ok"] for r in single)
    assert [r["mult_bound"] for r in single] == [27, 27, 75]


def test_accuracy_study():
    config = replace(FAST, ring="fixed-point", methods=("decomp",), generator="uniform-real",
                     ns=(4,), bits=(32, 64), limb_bits=(16,))
    records = run_accuracy_study(config)
    assert [(r.b, r.l) for r in records] == [(32, 2), (64, 4)]
    assert records[0].exact_match and records[0].bits_lost == 0
    rows = parse(format_accuracy(records))
    assert tuple(rows[0]) == ACCURACY_COLUMNS


def test_accuracy_study_needs_fixed_point():
    with pytest.raises(ConfigError):
        run_accuracy_study(replace(FAST, ring="float64", methods=("fft",)))


def test_generated_inputs_shared_across_methods():
    H, x = generate_hankel("uniform-int", 6, 11, "exact-int")
    assert schoolbook_matvec(H, x) == schoolbook_matvec(*generate_hankel("uniform-int", 6, 11, "exact-int"))
