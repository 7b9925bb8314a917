"""Command-line interface: ``alglam <command> [options] [TERM]``.

Terms come from the positional argument or, when it is absent or ``-``,
from standard input. Exit status: 0 success, 1 a check failed, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import __version__
from .ac import Level, ac_canonical, ac_measure
from .confluence import demonstrate_nonconfluence, demonstrate_trivial_equality, local_confluence_check
from .cps import Direction, NotClosed, SourceNotTerminating, check_colon_lemmas, check_simulation, translate
from .engine import Strategy, reduce
from .fragments import fragment_by_name
from .random_terms import TermGenerator
from .rules import FuelExhausted, language
from .scalars import ScalarDomain
from .serialize import trace_to_dict
from .syntax import ParseError, parse, pretty
from .terms import APP_TAG, LAM_TAG, SMUL_TAG, SUM_TAG, VAR_TAG, Term

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2
DEFAULT_SEED = 2024


class UsageError(Exception):
    pass


def _ast(t: Term):
    tag = t.tag
    if tag == VAR_TAG:
        return {"var": t.name}
    if tag == LAM_TAG:
        return {"lam": t.binder, "body": _ast(t.body)}
    if tag == APP_TAG:
        return {"app": [_ast(t.fun), _ast(t.arg)]}
    if tag == SUM_TAG:
        return {"sum": [_ast(t.left), _ast(t.right)]}
    if tag == SMUL_TAG:
        return {"smul": str(t.coeff), "body": _ast(t.body)}
    return {"zero": True}


def _read_term(text, domain=ScalarDomain.RING) -> Term:
    if text is None or text == "-":
        text = sys.stdin.read()
    return parse(text, domain)


def _trace_lines(doc) -> list:
    lines = [f"    {doc['start']}"]
    for s in doc["steps"]:
        arrow = "<-" if s["reversed"] else "->"
        lines.append(f" {arrow} {s['term']}    [{s['rule']} at {s['position']}]")
    return lines


# -- commands ----------------------------------------------------------------
# Each returns (exit status, structured result, human-readable lines).

def cmd_parse(a):
    t = _read_term(a.term)
    return EXIT_OK, {"term": pretty(t), "ast": _ast(t)}, [pretty(t)]


def cmd_print(a):
    t = _read_term(a.term)
    s = pretty(t, unicode=a.unicode)
    return EXIT_OK, {"term": s}, [s]


def cmd_reduce(a):
    lang = language(a.lang)
    t = _read_term(a.term)
    strategy = Strategy(a.strategy)
    try:
        trace = reduce(t, lang, strategy, a.fuel, algebraic_only=a.algebraic_only)
    except FuelExhausted as e:
        doc = {"error": "FuelExhausted", "trace": trace_to_dict(e.trace)}
        return EXIT_CHECK_FAILED, doc, ["fuel exhausted after:"] + _trace_lines(doc["trace"])
    doc = {"language": lang.name, "strategy": strategy.value, "trace": trace_to_dict(trace),
           "result": pretty(trace.end)}
    return EXIT_OK, doc, _trace_lines(doc["trace"]) + [f"result: {doc['result']}"]


def cmd_canon(a):
    t = _read_term(a.term)
    level = Level(a.level)
    s = pretty(ac_canonical(t, level))
    return EXIT_OK, {"level": level.value, "term": s}, [s]


def cmd_measure(a):
    t = _read_term(a.term)
    m = ac_measure(t)
    return EXIT_OK, {"measure": m}, [str(m)]


def cmd_translate(a):
    t = _read_term(a.term)
    d = Direction(a.dir)
    s = pretty(translate(t, d))
    return EXIT_OK, {"direction": d.value, "term": s}, [s]


def _opt(t):
    return None if t is None else pretty(t)


def cmd_simulate(a):
    fragment = fragment_by_name(a.fragment)
    t = _read_term(a.term, fragment.scalar_domain)
    d = Direction(a.dir)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            r = check_simulation(t, d, a.fuel, strategy=a.strategy, fragment=fragment, symmetric=a.symmetric,
                                 source_fuel=a.fuel)
    except SourceNotTerminating as e:
        doc = {"ok": False, "error": "FuelExhausted", "detail": str(e), "source_trace": trace_to_dict(e.trace)}
        return EXIT_CHECK_FAILED, doc, [f"FuelExhausted: {e}"]
    except NotClosed as e:
        raise UsageError(str(e)) from None
    doc = {
        "direction": d.value,
        "source": pretty(r.source),
        "source_value": _opt(r.source_value),
        "translated": _opt(r.translated),
        "encoded_value": _opt(r.encoded_value),
        "ok": r.ok,
        "indifference_ok": r.indifference_ok,
        "indifference_failure": r.indifference_failure,
        "target_trace": trace_to_dict(r.target_trace) if r.target_trace else None,
        "warnings": r.warnings,
        "error": r.error,
    }
    lines = [f"source value:  {doc['source_value']}", f"encoded value: {doc['encoded_value']}",
             f"ok: {r.ok}   indifference: {r.indifference_ok}"]
    if r.target_trace:
        lines.append(f"target trace: {len(r.target_trace)} steps")
    lines += [f"warning: {w}" for w in r.warnings]
    if r.error:
        lines.append(f"error: {r.error}")
    return (EXIT_OK if r.ok else EXIT_CHECK_FAILED), doc, lines


def cmd_confluence(a):
    lang = language(a.lang)
    gen = TermGenerator(a.seed)
    failures = []
    for _ in range(a.count):
        t = gen.sized_term(a.size)
        for p in local_confluence_check(t, lang, a.depth, algebraic_only=a.algebraic_only):
            failures.append({"term": pretty(t), "left": pretty(p.left.result), "right": pretty(p.right.result),
                             "left_rule": p.left.rule.value, "right_rule": p.right.rule.value})
    doc = {"language": lang.name, "algebraic_only": a.algebraic_only, "size": a.size, "count": a.count,
           "depth": a.depth, "seed": a.seed, "failing_peaks": failures}
    lines = [f"{a.count} terms, size <= {a.size}, depth {a.depth}: {len(failures)} failing peaks"]
    lines += [f"  {f['term']}: {f['left']}  vs  {f['right']}" for f in failures]
    return (EXIT_OK if not failures else EXIT_CHECK_FAILED), doc, lines


def cmd_nonconfluence(a):
    lang = language(a.lang)
    if lang.symmetric:
        raise UsageError("nonconfluence-demo needs an oriented language (lin-red or alg-red)")
    m = _read_term(a.term) if a.term is not None else parse("\\x.x")
    w = demonstrate_nonconfluence(m, lang, a.fuel, join_depth=a.depth)
    doc = {"source": pretty(w.source), "to_zero": trace_to_dict(w.to_zero), "to_m": trace_to_dict(w.to_m),
           "endpoints_ac_equal": not w.diverge, "joined": w.join.joined, "depth": a.depth, "note": w.note}
    lines = [f"source: {doc['source']}", f"  ->* {pretty(w.to_zero.end)}   ({len(w.to_zero)} steps)",
             f"  ->* {pretty(w.to_m.end)}   ({len(w.to_m)} steps)",
             f"endpoints AC-equal: {not w.diverge}; joined within depth {a.depth}: {w.join.joined}",
             f"note: {w.note}"]
    ok = w.diverge and not w.join.joined
    return (EXIT_OK if ok else EXIT_CHECK_FAILED), doc, lines


def cmd_trivial_equality(a):
    fragment = fragment_by_name(a.fragment)
    m, n = parse(a.m), parse(a.n)
    trace = demonstrate_trivial_equality(m, n, fragment, a.fuel)
    doc = {"m": pretty(m), "n": pretty(n), "fragment": fragment.name,
           "trace": trace_to_dict(trace) if trace else None}
    if trace is None:
        return EXIT_CHECK_FAILED, doc, [f"no chain from {doc['m']} to {doc['n']} inside fragment {fragment.name}"]
    return EXIT_OK, doc, _trace_lines(doc["trace"])


def cmd_colon_check(a):
    t = _read_term(a.term)
    k = parse(a.k)
    d = Direction(a.dir)
    r = check_colon_lemmas(t, k, d, a.fuel)
    doc = {"direction": d.value, "term": pretty(t), "k": pretty(k),
           "translation_reaches_colon": r.translation_reaches_colon, "reducts_preserved": r.reducts_preserved,
           "value_reaches_encoding": r.value_reaches_encoding,
           "failing_reducts": [pretty(n) for n in r.failing_reducts]}
    lines = [f"(a) (T M) K ->* M:K          {r.translation_reaches_colon}",
             f"(b) M:K ->* N:K for reducts  {r.reducts_preserved}",
             f"(c) V:\\x.x ->* enc(V)        {r.value_reaches_encoding}"]
    ok = r.translation_reaches_colon and r.reducts_preserved and r.value_reaches_encoding is not False
    return (EXIT_OK if ok else EXIT_CHECK_FAILED), doc, lines


# -- argument parsing -----------------------------------------------------------

LANGS = ("lin-red", "lin-eq", "alg-red", "alg-eq")
DIRS = tuple(d.value for d in Direction)


def _positive(text):
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="alglam", description="Workbench for algebraic lambda-calculi.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--json", action="store_true", help="structured output")
    sub = p.add_subparsers(dest="command", required=True)

    def term_cmd(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("term", nargs="?", help="term (default: standard input)")
        s.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        s.set_defaults(fn=fn)
        return s

    term_cmd("parse", cmd_parse, "parse a term and show its syntax tree")
    s = term_cmd("print", cmd_print, "pretty-print a term")
    s.add_argument("--unicode", action="store_true")
    s = term_cmd("reduce", cmd_reduce, "reduce a term and show the trace")
    s.add_argument("--lang", choices=LANGS, default="lin-red")
    s.add_argument("--strategy", choices=[x.value for x in Strategy], default="leftmost-outermost")
    s.add_argument("--fuel", type=_positive, default=1000)
    s.add_argument("--algebraic-only", action="store_true")
    s = term_cmd("canon", cmd_canon, "AC-canonical form")
    s.add_argument("--level", choices=[x.value for x in Level], default="ac")
    term_cmd("measure", cmd_measure, "termination measure")
    s = term_cmd("translate", cmd_translate, "CPS-translate a term")
    s.add_argument("--dir", choices=DIRS, required=True)
    s = term_cmd("simulate", cmd_simulate, "check that the CPS translation simulates reduction of a term")
    s.add_argument("--dir", choices=DIRS, required=True)
    s.add_argument("--fuel", type=_positive, default=500)
    s.add_argument("--fragment", default="none", help="none, nonneg or size<=N")
    s.add_argument("--strategy", choices=("auto", "search", "milestones"), default="auto")
    s.add_argument("--symmetric", action="store_true", help="use the equational languages")
    s = term_cmd("colon-check", cmd_colon_check, "check the colon-operator lemmas")
    s.add_argument("--dir", choices=DIRS, required=True)
    s.add_argument("--k", default="\\k.k", help="continuation (a basis term)")
    s.add_argument("--fuel", type=_positive, default=500)
    s = term_cmd("nonconfluence-demo", cmd_nonconfluence, "Y_M - Y_M reduces to both 0 and M")
    s.add_argument("--lang", choices=("lin-red", "alg-red"), default="lin-red")
    s.add_argument("--fuel", type=_positive, default=100)
    s.add_argument("--depth", type=_positive, default=10)

    s = sub.add_parser("confluence", help="local confluence on random terms")
    s.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    s.add_argument("--lang", choices=LANGS, default="lin-red")
    s.add_argument("--size", type=_positive, default=12)
    s.add_argument("--count", type=_positive, default=100)
    s.add_argument("--depth", type=_positive, default=8)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--algebraic-only", action="store_true")
    s.set_defaults(fn=cmd_confluence)

    s = sub.add_parser("trivial-equality-demo", help="equate two arbitrary terms through Y_{N-M}")
    s.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    s.add_argument("m", nargs="?", default="x")
    s.add_argument("n", nargs="?", default="y")
    s.add_argument("--fragment", default="none", help="none or nonneg")
    s.add_argument("--fuel", type=_positive, default=200)
    s.set_defaults(fn=cmd_trivial_equality)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        status, doc, lines = a.fn(a)
    except (ParseError, UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if a.json:
        print(json.dumps(doc, indent=2, ensure_ascii=False))
    else:
        print("\n".join(lines))
    if status == EXIT_CHECK_FAILED:
        print(f"check failed: {doc.get('error') or lines[0]}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
