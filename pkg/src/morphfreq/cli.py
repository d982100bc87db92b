"""Command-line front end.

Subcommands: classify | letters | factor-freq | verify | generate. Reports
are JSON documents on stdout (human tables behind --pretty); diagnostics go
to stderr. Exit codes: 0 success/converged, 1 error or verification
failure, 2 inconclusive or level cap, 3 degenerate support.
"""

from __future__ import annotations

import argparse
import sys
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path

from .errors import MorphfreqError
from .frequency import DEFAULT_MAX_LEVEL, estimate_frequency
from .morphism import Morphism, classify_letters, parse_morphism
from .report import (
    TOOL_VERSION,
    build_report,
    classification_json,
    dumps_report,
    factor_report_json,
    interval_json,
    letters_json,
    rational_json,
)
from .spectrum import bounded_mass, letter_frequencies
from .stream import count_factors, factor_inventory, prefix, resolve_start
from .words import Word

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNSETTLED = 2
EXIT_DEGENERATE = 3

_VERIFY_SLACK = Fraction(1, 100)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ValueError:
        pass
    try:
        return Fraction(Decimal(text))
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _positive_int(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _load(path: str) -> Morphism:
    return parse_morphism(Path(path).read_text(encoding="utf-8"))


def _factor(phi: Morphism, text: str) -> Word:
    v = tuple(text.split())
    for c in v:
        phi.index(c)
    return v


def _fmt_set(letters) -> str:
    return " ".join(sorted(letters)) if letters else "(none)"


def _fmt_interval(iv) -> str:
    return f"[{float(iv.lo):.10g}, {float(iv.hi):.10g}]"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="morphfreq",
        description="Factor frequencies of pure morphic words, with exact "
        "arithmetic and guaranteed error bounds.",
    )
    ap.add_argument("--version", action="version", version=f"morphfreq {TOOL_VERSION}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="bounded/unbounded letters, k1, primitivity")
    p.add_argument("file")
    p.add_argument("--pretty", action="store_true")

    p = sub.add_parser("letters", help="letter-frequency interval enclosures")
    p.add_argument("file")
    p.add_argument("--tol", type=_rational, default=Fraction(1, 10**6))
    p.add_argument("--start")
    p.add_argument("--pretty", action="store_true")

    p = sub.add_parser("factor-freq", help="factor-frequency estimate with bounds")
    p.add_argument("file")
    p.add_argument("--factor", action="append", required=True,
                   help="whitespace-separated letter tokens; repeatable")
    p.add_argument("--tol", type=_rational, default=Fraction(1, 10**3))
    p.add_argument("--max-level", type=_positive_int, default=DEFAULT_MAX_LEVEL)
    p.add_argument("--empirical", type=_positive_int, default=None,
                   help="attach empirical checkpoints up to this prefix length")
    p.add_argument("--start")
    p.add_argument("--pretty", action="store_true")

    p = sub.add_parser("verify", help="check every short factor against the stream")
    p.add_argument("file")
    p.add_argument("--max-len", type=_positive_int, default=3)
    p.add_argument("--prefix", type=_positive_int, default=10**6)
    p.add_argument("--tol", type=_rational, default=Fraction(1, 10**3))
    p.add_argument("--max-level", type=_positive_int, default=DEFAULT_MAX_LEVEL)
    p.add_argument("--start")
    p.add_argument("--pretty", action="store_true")

    p = sub.add_parser("generate", help="emit a prefix of the fixed point")
    p.add_argument("file")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--format", choices=("raw", "tokens", "lines"), default="raw")
    p.add_argument("--start")
    return ap


def cmd_classify(args) -> int:
    phi = _load(args.file)
    cls = classify_letters(phi)
    cjson = classification_json(phi, cls)
    if args.pretty:
        print(f"bounded: {_fmt_set(cls.bounded)}; unbounded: {_fmt_set(cls.unbounded)}; "
              f"k1={cls.k1}; primitive: {'yes' if cjson['primitive'] else 'no'}")
        print(f"prolongable: {_fmt_set(cjson['prolongable'])}")
    else:
        doc = build_report(
            phi=phi,
            parameters={"command": "classify", "file": args.file},
            classification=cjson,
        )
        sys.stdout.write(dumps_report(doc))
    return EXIT_OK


def cmd_letters(args) -> int:
    phi = _load(args.file)
    start = resolve_start(phi, args.start)
    cls = classify_letters(phi)
    freqs = letter_frequencies(phi, start, args.tol)
    mass = bounded_mass(freqs, cls)
    if args.pretty:
        print(f"method: {freqs.method}; diagnostic: {freqs.diagnostic}")
        for a in phi.alphabet:
            print(f"  {a}: {_fmt_interval(freqs.intervals[a])}")
        print(f"bounded mass: {_fmt_interval(mass.interval)}")
    else:
        doc = build_report(
            phi=phi,
            parameters={
                "command": "letters",
                "file": args.file,
                "tol": rational_json(args.tol),
                "start": start,
            },
            classification=classification_json(phi, cls),
            letters=letters_json(freqs, mass),
        )
        sys.stdout.write(dumps_report(doc))
    return EXIT_OK if freqs.diagnostic == "converged" else EXIT_UNSETTLED


def cmd_factor_freq(args) -> int:
    phi = _load(args.file)
    start = resolve_start(phi, args.start)
    factors = [_factor(phi, text) for text in args.factor]
    cls = classify_letters(phi)
    freqs = letter_frequencies(phi, start, args.tol / 16)
    mass = bounded_mass(freqs, cls)
    reports = [
        estimate_frequency(phi, start, v, args.tol,
                           max_level=args.max_level,
                           empirical_check=args.empirical)
        for v in factors
    ]
    if args.pretty:
        for rep in reports:
            mid = float(rep.estimate.midpoint)
            print(f"{' '.join(rep.factor)}: {mid:.6f} {_fmt_interval(rep.estimate)} "
                  f"[{rep.verdict}]")
    else:
        doc = build_report(
            phi=phi,
            parameters={
                "command": "factor-freq",
                "file": args.file,
                "tol": rational_json(args.tol),
                "max_level": args.max_level,
                "empirical": args.empirical,
                "start": start,
            },
            classification=classification_json(phi, cls),
            letters=letters_json(freqs, mass),
            factors=[factor_report_json(rep) for rep in reports],
        )
        sys.stdout.write(dumps_report(doc))
    worst = EXIT_OK
    for rep in reports:
        if rep.verdict == "degenerate-support":
            worst = max(worst, EXIT_DEGENERATE)
        elif rep.verdict == "level-cap-reached":
            worst = max(worst, EXIT_UNSETTLED)
    return worst


def cmd_verify(args) -> int:
    phi = _load(args.file)
    start = resolve_start(phi, args.start)
    factors = sorted(factor_inventory(phi, start, args.prefix, args.max_len),
                     key=lambda v: (len(v), v))
    counts = count_factors(phi, start, factors, args.prefix)
    cls = classify_letters(phi)
    freqs = letter_frequencies(phi, start, args.tol / 16)
    mass = bounded_mass(freqs, cls)
    results = []
    failures = 0
    for v in factors:
        rep = estimate_frequency(phi, start, v, args.tol, max_level=args.max_level)
        emp = Fraction(counts[v], args.prefix)
        if rep.levels and rep.levels[-1].bound is not None:
            last = rep.levels[-1]
            margin = last.bound.deviation + _VERIFY_SLACK
            distance = last.ratio.distance_to(emp)
        else:
            margin = _VERIFY_SLACK
            distance = rep.estimate.distance_to(emp)
        ok = distance <= margin
        failures += 0 if ok else 1
        results.append({
            "factor": list(v),
            "verdict": rep.verdict,
            "estimate": interval_json(rep.estimate),
            "empirical": {"n": args.prefix, "count": counts[v], "ratio": rational_json(emp)},
            "distance": rational_json(distance),
            "margin": rational_json(margin),
            "pass": ok,
        })
    if args.pretty:
        for r in results:
            status = "pass" if r["pass"] else "FAIL"
            print(f"{' '.join(r['factor']):>12}  emp={r['empirical']['ratio']['decimal']:.6f}  "
                  f"est={r['estimate']['midpoint']['decimal']:.6f}  {status}")
        print(f"{len(results)} factors, {failures} failures")
    else:
        doc = build_report(
            phi=phi,
            parameters={
                "command": "verify",
                "file": args.file,
                "max_len": args.max_len,
                "prefix": args.prefix,
                "tol": rational_json(args.tol),
                "start": start,
            },
            classification=classification_json(phi, cls),
            letters=letters_json(freqs, mass),
            factors=results,
        )
        sys.stdout.write(dumps_report(doc))
    return EXIT_OK if failures == 0 else EXIT_ERROR


def cmd_generate(args) -> int:
    phi = _load(args.file)
    w = prefix(phi, args.start, args.n)
    if args.format == "raw":
        sys.stdout.write("".join(w) + "\n")
    elif args.format == "tokens":
        sys.stdout.write(" ".join(w) + "\n")
    else:
        sys.stdout.write("\n".join(w) + "\n")
    return EXIT_OK


_DISPATCH = {
    "classify": cmd_classify,
    "letters": cmd_letters,
    "factor-freq": cmd_factor_freq,
    "verify": cmd_verify,
    "generate": cmd_generate,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except (MorphfreqError, ValueError, OSError) as exc:
        print(f"morphfreq: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
