"""Command-line front end: ``deuring --prime 29`` or ``deuring --range 29..97 --format json``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from sympy import isprime, primerange

from .matcher import PipelineError, build_correspondence
from .table import OutputRecord, render_table

SMALL_PRIMES = (2, 3, 5, 7)


def _parse_range(text: str) -> list[int]:
    try:
        lo, hi = (int(x) for x in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"range must look like A..B, got {text!r}") from None
    return list(primerange(lo, hi + 1))


def _parse_ells(text: str) -> Optional[list[int]]:
    if text == "auto":
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--ell-set takes 'auto' or a comma list, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="deuring",
        description="Match supersingular j-invariants with maximal order types (ternary forms).",
    )
    which = ap.add_mutually_exclusive_group(required=True)
    which.add_argument("--prime", type=int, help="a single prime p")
    which.add_argument("--range", type=_parse_range, help="all primes in A..B (inclusive)")
    ap.add_argument("--format", choices=("table", "json"), default="table")
    ap.add_argument("--ell-set", type=_parse_ells, default=None,
                    help="'auto' or comma-separated primes used as norms/degrees")
    ap.add_argument("--emit-orders", action="store_true", help="print order relations")
    ap.add_argument("--emit-fingerprints", action="store_true", help="print (trace, norm) sets")
    ap.add_argument("--seed", type=int, default=0, help="seed for torsion point draws")
    ap.add_argument("--out", help="write output to this file instead of stdout")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for --range")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def compute_record(p: int, ells: Optional[Sequence[int]] = None, seed: int = 0) -> OutputRecord:
    if p in SMALL_PRIMES:
        return OutputRecord.trivial(p)
    return OutputRecord.from_correspondence(build_correspondence(p, ells, seed))


def _task(args):
    p, ells, seed = args
    try:
        return compute_record(p, ells, seed), None
    except PipelineError as exc:
        return None, f"p={p}: {exc}"


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.prime is not None:
        if not isprime(args.prime):
            print(f"error: {args.prime} is not a prime", file=sys.stderr)
            return 2
        primes = [args.prime]
    else:
        primes = args.range
        if not primes:
            print("error: the range contains no primes", file=sys.stderr)
            return 2

    tasks = [(p, args.ell_set, args.seed) for p in primes]
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_task, tasks))
    else:
        results = [_task(t) for t in tasks]

    errors = [err for _, err in results if err]
    for err in errors:
        print(f"error: {err}", file=sys.stderr)
    records = [rec for rec, _ in results if rec is not None]

    if args.format == "json":
        payload = [r.to_json() for r in records]
        text = json.dumps(payload[0] if args.prime is not None and payload else payload,
                          indent=1, ensure_ascii=False) + "\n"
    else:
        text = "\n".join(render_table(r, args.emit_orders, args.emit_fingerprints) for r in records)

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 1 if errors else 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
