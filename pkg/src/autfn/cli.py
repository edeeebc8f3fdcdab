"""Command line front end: ``autfn verify|eval|ball|fix|centralizer``."""
from __future__ import annotations

import argparse
import concurrent.futures
import json
import re
import sys
from pathlib import Path

from . import families as fam
from . import splittings as sp
from . import suites
from .automorphisms import (RoundTripFailure, default_basis, fixed_words,
                            format_automorphism, identity, parse_automorphism)
from .mk import format_mk, parse_mk
from .words import Basis, Word, WordParseError, parse_word, standard_basis

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- expression evaluation ----------------------------------------------------------

_POWER = re.compile(r"\^\s*(-?\d+)\s*$")


def split_product(text: str) -> list[tuple[str, int]]:
    """Split at top-level ``*`` into (factor text, start offset)."""
    pieces, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise WordParseError("unbalanced ')'", i)
        elif ch == "*" and depth == 0:
            pieces.append((text[start:i], start))
            start = i + 1
    if depth:
        raise WordParseError("unbalanced '('", len(text))
    pieces.append((text[start:], start))
    return pieces


def _factor_power(piece: str) -> tuple[str, int, int]:
    """Strip a trailing ``^n`` from a parenthesised factor; returns (body, body offset, n)."""
    stripped = piece.rstrip()
    m = _POWER.search(stripped)
    n = 1
    if m and stripped[:m.start()].rstrip().endswith(")"):
        n = int(m.group(1))
        stripped = stripped[:m.start()].rstrip()
    lead = len(stripped) - len(stripped.lstrip())
    return stripped.strip(), lead, n


def _evaluate(text, parse_one, one, power):
    result = None
    for piece, offset in split_product(text):
        body, lead, n = _factor_power(piece)
        if not body:
            raise WordParseError("empty factor", offset)
        value = power(parse_one(body, offset + lead), n)
        result = value if result is None else result * value
    return result if result is not None else one


def eval_word(text: str, basis: Basis) -> Word:
    def parse_one(body, offset):
        if body.startswith("(") and body.endswith(")"):
            return eval_word_inner(body[1:-1], offset + 1)
        return parse_word(body, basis, offset)

    def eval_word_inner(inner_text, offset):
        try:
            return eval_word(inner_text, basis)
        except WordParseError as exc:
            raise WordParseError(exc.message, exc.position + offset) from None

    return _evaluate(text, parse_one, basis.identity, lambda w, n: w ** n)


def eval_aut(text: str, basis: Basis, inverse_bound: int):
    def parse_one(body, offset):
        if not (body.startswith("(") and body.endswith(")")):
            raise WordParseError("automorphism factors must be parenthesised", offset)
        return parse_automorphism(body[1:-1], basis, inverse_bound=inverse_bound, offset=offset + 1)

    return _evaluate(text, parse_one, identity(basis), lambda a, n: a ** n)


def eval_mk(text: str, basis: Basis, inverse_bound: int):
    arities = set()

    def parse_one(body, offset):
        m = parse_mk(body, basis, offset, inverse_bound)
        arities.add(m.k)
        if len(arities) > 1:
            raise WordParseError(f"mixed arities {sorted(arities)}", offset)
        return m

    return _evaluate(text, parse_one, None, lambda m, n: m ** n)


# -- commands --------------------------------------------------------------------------

def cmd_verify(args, out) -> int:
    try:
        selected = suites.select(args.suite)
    except KeyError:
        raise UsageError(f"unknown suite {args.suite!r}; known: {', '.join(suites.REGISTRY)}")
    ctx = suites.Context(n=args.n, L=args.L, depth=args.depth)
    reports = []

    def emit(report):
        reports.append(report)
        if not args.summary:
            out.write(report.to_json(args.timing) + "\n")
            out.flush()
        return args.fail_fast and report.verdict == suites.FAIL

    if args.jobs <= 1 or len(selected) <= 1:
        for s in selected:
            if emit(suites.run_suite(s, args.seed, ctx)):
                break
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futures = [pool.submit(_run_named, s.name, args.seed, ctx) for s in selected]
            # reports are written in registry order, whatever the completion order
            for fut in futures:
                if emit(fut.result()):
                    for rest in futures:
                        rest.cancel()
                    break
    failed = [r for r in reports if r.verdict == suites.FAIL]
    if args.summary:
        counts = {v: sum(r.verdict == v for r in reports)
                  for v in (suites.PASS, suites.FAIL, suites.INCONCLUSIVE)}
        summary = {"seed": args.seed, "suites": len(reports), **counts,
                   "failed": [r.suite for r in failed]}
        if args.timing:
            summary["elapsed_ms"] = round(sum(r.elapsed_ms or 0 for r in reports), 1)
        out.write(json.dumps(summary) + "\n")
    return EXIT_FAIL if failed else EXIT_OK


def _run_named(name: str, seed: int, ctx: suites.Context) -> suites.SuiteReport:
    return suites.run_suite(suites.REGISTRY[name], seed, ctx)


def cmd_eval(args, out) -> int:
    text = args.expression
    if args.mk:
        basis = standard_basis(2)
        value = eval_mk(text, basis, args.inverse_bound)
        out.write(format_mk(value) + "\n")
    elif args.aut:
        basis = default_basis(args.n, text)
        value = eval_aut(text, basis, args.inverse_bound)
        out.write(format_automorphism(value) + "\n")
    else:
        basis = default_basis(args.n, text)
        out.write(str(eval_word(text, basis)) + "\n")
    return EXIT_OK


def cmd_ball(args, out) -> int:
    try:
        s = sp.parse_splitting(args.spec) if args.n is None else _splitting_with_n(args.spec, args.n)
    except ValueError as exc:
        raise UsageError(str(exc))
    ball = sp.build_ball(s, args.L if args.L is not None else 1)
    text = sp.to_dot(ball) if args.format == "dot" else sp.to_json(ball)
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)
    return EXIT_OK


def _splitting_with_n(spec: str, n: int) -> sp.RoseSplitting:
    if "N=" in spec:
        return sp.parse_splitting(spec)
    sep = "," if "@" in spec else "@"
    return sp.parse_splitting(f"{spec}{sep}N={n}")


def cmd_fix(args, out) -> int:
    basis = default_basis(args.n, args.automorphism)
    phi = parse_automorphism(args.automorphism, basis, inverse_bound=args.inverse_bound)
    L = args.L if args.L is not None else 3
    for w in sorted(fixed_words(phi, L), key=Word.sort_key):
        out.write(f"{w}\n")
    return EXIT_OK


def cmd_centralizer(args, out) -> int:
    depth = args.depth if args.depth is not None else 1
    if args.target is not None:
        try:
            spec = fam.parse_family_spec(args.target, default_n=args.n or 3,
                                         inverse_bound=args.inverse_bound)
        except ValueError as exc:
            if isinstance(exc, WordParseError):
                raise
            raise UsageError(str(exc))
        gens = [g for f in spec.factors() for g in f.generators]
        N = spec.N
    elif args.gen:
        basis = default_basis(args.n or None, *args.gen)
        if basis.rank < 3:
            basis = standard_basis(3)
        gens = [parse_automorphism(g, basis, inverse_bound=args.inverse_bound) for g in args.gen]
        N = basis.rank
    else:
        raise UsageError("give a family spec or at least one --gen")
    found = sorted({phi for phi in fam.stab_probe(N, depth)
                    if all(fam.commutes_aut(phi, g) for g in gens)},
                   key=lambda p: tuple(w.sort_key() for w in p.images))
    for phi in found:
        out.write(format_automorphism(phi) + "\n")
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="autfn", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp_, L=True, depth=False):
        sp_.add_argument("--n", type=int, default=None, help="rank N (default inferred, or 3)")
        if L:
            sp_.add_argument("--L", type=int, default=None, help="length bound")
        if depth:
            sp_.add_argument("--depth", type=int, default=None, help="composition depth")
        sp_.add_argument("--inverse-bound", type=int, default=4,
                         help="length bound of the inverse search for literals without '|'")

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", default="all", help="suite name, prefix, glob or 'all'")
    v.add_argument("--seed", type=int, default=0)
    common(v, depth=True)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--fail-fast", action="store_true")
    v.add_argument("--summary", action="store_true", help="print one aggregate line")
    v.add_argument("--timing", action="store_true", help="include elapsed_ms (breaks byte equality)")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("eval", help="evaluate a word, automorphism or M_k expression")
    e.add_argument("expression")
    kind = e.add_mutually_exclusive_group()
    kind.add_argument("--aut", action="store_true")
    kind.add_argument("--mk", action="store_true")
    common(e, L=False)
    e.set_defaults(func=cmd_eval)

    b = sub.add_parser("ball", help="export a ball in the Bass-Serre tree of a collapsed rose")
    b.add_argument("spec", help="e.g. rose@N=4,k=2")
    common(b)
    b.add_argument("--format", choices=("dot", "json"), default="dot")
    b.add_argument("--output", "-o", default=None)
    b.set_defaults(func=cmd_ball)

    f = sub.add_parser("fix", help="list fixed words up to length L")
    f.add_argument("automorphism")
    common(f)
    f.set_defaults(func=cmd_fix)

    c = sub.add_parser("centralizer", help="bounded centralizer probe in the rose stabilizer")
    c.add_argument("target", nargs="?", help="family spec such as AutTauCentral@N=3")
    c.add_argument("--gen", action="append", default=[], help="generator literal (repeatable)")
    common(c, L=False, depth=True)
    c.set_defaults(func=cmd_centralizer)
    return p


def _report_parse_error(exc: WordParseError, text: str | None, err) -> None:
    err.write(f"parse error at position {exc.position}: {exc.message}\n")
    if text is not None:
        err.write(f"  {text}\n  {' ' * exc.position}^\n")


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except WordParseError as exc:
        text = getattr(args, "expression", None) or getattr(args, "automorphism", None) \
            or getattr(args, "target", None)
        _report_parse_error(exc, text, err)
        return EXIT_USAGE
    except (UsageError, RoundTripFailure, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
