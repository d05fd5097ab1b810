"""Command line interface.

    crewcheck genus "(1+x^2+x^8+x^14+x^18)/x^21"
    crewcheck slopes "(1+x^2+x^8+x^14+x^18)/x^21 + 1/(x+1)"
    crewcheck crew-check "(1+x^2+x^8+x^14+x^18)/x^21" "1/(x+1)"
    crewcheck reproduce-paper [--verify-product-to N | --slow]
    crewcheck survey --samples 200 --seed 1

Exit codes: 0 success, 1 mismatch with the published values, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import counterexample
from .counting import DEFAULT_CACHE_DIR, CountCache, count_series
from .curve import ASCurve, CurveError, NotEtaleError
from .pipeline import crew_for_pair, curve_zeta, verify_product_counts
from .poly import ParseError, parse_ratfunc
from .slopes import slope_profile
from .survey import SurveyConfig, run_survey

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2
SLOW_VERIFY_TO = 21


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--cache-dir", default=d(DEFAULT_CACHE_DIR),
                   help="directory for point-count cache files (default ./zeta-cache)")
    p.add_argument("--no-cache", action="store_true", default=d(False),
                   help="do not read or write the count cache")
    p.add_argument("--json", action="store_true", default=d(False),
                   help="machine-readable output")
    p.add_argument("--threads", type=int, default=d(1), help="worker threads for counting")
    p.add_argument("--slow", action="store_true", default=d(False),
                   help=f"verify fiber-product counts up to n = {SLOW_VERIFY_TO}")
    p.add_argument("-v", "--verbose", action="store_true", default=d(False))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crewcheck", description=__doc__.split("\n")[0])
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        _global_flags(p, suppress=True)
        return p

    for name, help_ in (("genus", "genus by Riemann-Hurwitz"),
                        ("count", "point counts N_1..N_n"),
                        ("zeta", "zeta numerator P(t)"),
                        ("slopes", "Newton slopes of P(t)")):
        p = add(name, help_)
        p.add_argument("curve", help="right-hand side f(x) of y^2 - y = f(x)")
        if name == "count":
            p.add_argument("--n-max", type=int, default=None,
                           help="largest extension degree (default: the genus)")

    p = add("crew-check", "compare chi_lambda of X = C x D with 2 chi_lambda of the sum cover")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--verify-product-to", type=int, default=0)

    p = add("reproduce-paper", "rebuild the counterexample and compare with the published values")
    p.add_argument("--verify-product-to", type=int, default=16,
                   help="check N_n(X) against P_C*P_Y for n up to this (0 skips)")

    p = add("survey", "slope census of random y^2 - y = A(x)/x^21")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--degree-bound", type=int, default=20)
    p.add_argument("--include-supersingular", action="store_true",
                   help="append A = 1 + x^2 + x^8 + x^14 + x^18 to the sample")
    return parser


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _curve(spec: str) -> ASCurve:
    return ASCurve.from_function(parse_ratfunc(spec))


def _cmd_single(args, cache) -> int:
    curve = _curve(args.curve)
    base = {"curve": str(curve.f_given), "reduced": str(curve.f_reduced), "genus": curve.genus}
    if args.command == "genus":
        ram = {str(P): d for P, d in curve.ram.items()}
        _emit(args, {**base, "ramification": ram}, str(curve.genus))
        return EXIT_OK
    if args.command == "count":
        n_max = args.n_max if args.n_max is not None else max(curve.genus, 1)
        pc = count_series(curve, n_max, cache=cache, threads=args.threads)
        text = "\n".join(f"N_{n} = {N}" for n, N in pc.counts.items())
        _emit(args, {**base, "curve_id": pc.curve_id, "q": 2,
                     "counts": {str(n): N for n, N in pc.counts.items()}}, text)
        return EXIT_OK
    P = curve_zeta(curve, cache, args.threads)
    if args.command == "zeta":
        _emit(args, {**base, "zeta": P.to_json()}, f"P(t) = {P}")
        return EXIT_OK
    prof = slope_profile(P)
    rows = "\n".join(f"  h_{lam} = {h}" for lam, h in prof.multiplicities.items())
    _emit(args, {**base, "slopes": {str(k): v for k, v in prof.multiplicities.items()}},
          f"genus {curve.genus}, slopes {prof.label()}" + ("\n" + rows if rows else ""))
    return EXIT_OK


def _cmd_crew(args, cache) -> int:
    C, D = _curve(args.left), _curve(args.right)
    X, P_X, parts, prof_X, prof_Y, report = crew_for_pair(C, D, cache, args.threads)
    verify_to = SLOW_VERIFY_TO if args.slow else args.verify_product_to
    mism = verify_product_counts(X, P_X, min(verify_to, 24), cache, args.threads)
    payload = report.to_json()
    payload.update({"genus": {"C": C.genus, "D": D.genus, "Y": X.sum.genus, "X": X.genus},
                    "product_count_mismatches": {str(n): v for n, v in mism.items()}})
    text = (f"g(C) = {C.genus}, g(D) = {D.genus}, g(Y) = {X.sum.genus}, g(X) = {X.genus}\n"
            f"slopes X: {prof_X.label()}\nslopes Y: {prof_Y.label()}\n{report.to_table()}")
    if mism:
        text += f"\nPRODUCT COUNT MISMATCH at n = {sorted(mism)}"
    _emit(args, payload, text)
    return EXIT_MISMATCH if mism else EXIT_OK


def _cmd_reproduce(args, cache) -> int:
    verify_to = SLOW_VERIFY_TO if args.slow else args.verify_product_to
    res = counterexample.reproduce(verify_to, cache, args.threads)
    lines = []
    for c in res.checks:
        lines.append(f"[{'ok' if c.ok else 'FAIL'}] {c.name}")
        if not c.ok:
            lines.append(f"    expected: {c.expected}\n    computed: {c.computed}")
    lines.append(f"P_C(t) = {res.P_C}")
    lines.append(f"P_Y(t) = {res.P_Y}")
    lines.append(res.crew.to_table())
    lines.append(res.summary())
    _emit(args, res.to_json(), "\n".join(lines))
    return EXIT_OK if res.ok else EXIT_MISMATCH


def _cmd_survey(args, cache) -> int:
    cfg = SurveyConfig(samples=args.samples, seed=args.seed, degree_bound=args.degree_bound,
                       include_supersingular=args.include_supersingular)
    res = run_survey(cfg, cache, args.threads)
    _emit(args, res.to_json(), res.to_table())
    return EXIT_MISMATCH if res.invariant_violations else EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.threads < 1:
        parser.error("--threads must be positive")
    cache = None if args.no_cache else CountCache(args.cache_dir)
    handlers = {"crew-check": _cmd_crew, "reproduce-paper": _cmd_reproduce,
                "survey": _cmd_survey}
    try:
        return handlers.get(args.command, _cmd_single)(args, cache)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotEtaleError as exc:
        print(f"not certified étale: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CurveError as exc:
        print(f"unsupported curve: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
