"""Command line front end: ``hankelmv {compare,crossover,opcount,accuracy}``.

Exit status: 0 on success, 2 for configuration errors, 3 when a validated
invariant or bound fails.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import harness
from .errors import ConfigError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_VALIDATION = 3


def parse_ints(text: str) -> tuple[int, ...]:
    """Comma list of ints, ``a-b`` ranges and ``pow2:a-b`` power-of-two ranges."""
    out = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            if token.startswith("pow2:"):
                lo, hi = (int(t) for t in token[5:].split("-"))
                k = 1
                while k <= hi:
                    if k >= lo:
                        out.append(k)
                    k *= 2
            elif "-" in token[1:]:
                lo, hi = (int(t) for t in token.split("-", 1))
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(token))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad integer list entry {token!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("empty integer list")
    return tuple(out)


def parse_depth(text: str) -> int | None:
    if text.lower() in ("inf", "none", "unlimited"):
        return None
    return int(text)


def _methods(text: str) -> tuple[str, ...]:
    return tuple(m.strip() for m in text.split(",") if m.strip())


DEFAULT_METHODS = {
    "compare": "schoolbook,fft,karatsuba",
    "crossover": "schoolbook,fft,karatsuba",
    "opcount": "karatsuba",
    "accuracy": "decomp",
}
DEFAULT_RING = {"compare": "exact-int", "crossover": "float64", "opcount": "exact-int", "accuracy": "fixed-point"}
DEFAULT_GENERATOR = {"accuracy": "uniform-real"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hankelmv", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("compare", "cross-validate methods against the exact product"),
        ("crossover", "time methods over a range of n and report flip points"),
        ("opcount", "count recursive-scheme operations against their envelopes"),
        ("accuracy", "measure decomposition accuracy over an (n, bits, limb bits) grid"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--n", type=parse_ints, default=(4, 16, 64), help="orders, e.g. 1-64,100 or pow2:2-4096")
        p.add_argument("--ring", default=DEFAULT_RING[name], choices=harness.RINGS)
        p.add_argument("--methods", type=_methods, default=_methods(DEFAULT_METHODS[name]))
        p.add_argument("--bits", type=parse_ints, default=(64,), help="mantissa bits b (list allowed)")
        p.add_argument("--limb-bits", type=parse_ints, default=(16,), help="bits per limb (list allowed)")
        p.add_argument("--cutoff", type=int, default=2)
        p.add_argument("--max-depth", type=parse_depth, default=None, help="integer or 'inf'")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--reps", type=int, default=5)
        p.add_argument("--generator", default=DEFAULT_GENERATOR.get(name, "uniform-int"), choices=harness.GENERATORS)
        p.add_argument("--out", type=Path, default=None)
        p.add_argument("--format", dest="fmt", default="csv", choices=harness.FORMATS)
    return parser


def _config(args) -> harness.ExperimentConfig:
    return harness.ExperimentConfig(
        methods=args.methods,
        ring=args.ring,
        ns=args.n,
        bits=args.bits,
        limb_bits=args.limb_bits,
        cutoff=args.cutoff,
        max_depth=args.max_depth,
        seed=args.seed,
        generator=args.generator,
        reps=args.reps,
        fmt=args.fmt,
    )


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _sibling(out: Path | None, suffix: str) -> Path | None:
    return None if out is None else out.with_name(f"{out.stem}.{suffix}{out.suffix}")


def run(args) -> int:
    config = _config(args)
    config.validate()
    if args.command == "compare":
        records = harness.run_compare(config)
        _emit(harness.format_records(records, config.fmt), args.out)
        bad = harness.compare_failures(records)
        for r in bad:
            print(f"validation failure: {r.method} n={r.n} rel_err={r.max_rel_error} exact={r.exact_match}",
                  file=sys.stderr)
        return EXIT_VALIDATION if bad else EXIT_OK
    if args.command == "crossover":
        result = harness.run_crossover(config)
        _emit(harness.format_records(result.records, config.fmt), args.out)
        summary = harness.format_rows(result.summary, harness.CROSSOVER_COLUMNS, config.fmt)
        target = _sibling(args.out, "summary")
        if target is None:
            sys.stdout.write("\n" + summary)
        else:
            target.write_text(summary)
        print(f"note: {result.note}", file=sys.stderr)
        return EXIT_OK
    if args.command == "opcount":
        rows = harness.run_opcount(config)
        _emit(harness.format_rows(rows, harness.OPCOUNT_COLUMNS, config.fmt), args.out)
        failed = [r for r in rows if not (r["mult_ok"] and r["add_ok"])]
        for r in failed:
            print(f"bound exceeded at n={r['n']}: mults {r['mults']} / {r['mult_bound']}, "
                  f"adds {r['adds']} / {r['add_bound']}", file=sys.stderr)
        return EXIT_VALIDATION if failed else EXIT_OK
    if args.command == "accuracy":
        records = harness.run_accuracy_study(config)
        _emit(harness.format_accuracy(records, config.fmt), args.out)
        print("note: decomposition accuracy is measured only; no bound is asserted", file=sys.stderr)
        return EXIT_OK
    raise ConfigError(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return run(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
