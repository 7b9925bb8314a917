"""Acceptance gate: nine criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` or ``python3 tests/test_acceptance.py``.
"""

import contextlib
import io
import json
import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from alglam.ac import ac_equal, ac_measure  # noqa: E402
from alglam.cli import main as cli_main  # noqa: E402
from alglam.confluence import demonstrate_nonconfluence, demonstrate_trivial_equality, local_confluence_check  # noqa: E402
from alglam.cps import (IDENTITY_K, Direction, check_simulation, colon, cps, encode_value, phi, psi,  # noqa: E402
                        translate, wt)
from alglam.engine import reduces_to  # noqa: E402
from alglam.fragments import NONNEG, UNRESTRICTED  # noqa: E402
from alglam.random_terms import TermGenerator  # noqa: E402
from alglam.rules import ALG_RED, LIN_RED, step_all  # noqa: E402
from alglam.syntax import parse  # noqa: E402
from alglam.terms import App, is_base, substitute  # noqa: E402

U, V = "\\x.x", "\\x.(x) x"
COPY = "\\x.\\y.((y) x) x"
TERM = f"({COPY}) (({U}) + {V})"
SEED = 2024


def pair(m, n):
    return f"\\y.((y) ({m})) ({n})"


UU_VV = parse(f"({pair(U, U)}) + {pair(V, V)}")
UV_UV = parse(pair(f"({U}) + {V}", f"({U}) + {V}"))


def report(k, name, ok, detail=""):
    line = f"[{k}] {name}: {'PASS' if ok else 'FAIL'}" + (f"  ({detail})" if detail else "")
    cm = _capsys.disabled() if _capsys is not None else contextlib.nullcontext()
    with cm:
        print(line)
    assert ok, line


_capsys = None


@pytest.fixture(autouse=True)
def _bind_capsys(capsys):
    global _capsys
    _capsys = capsys
    yield
    _capsys = None


def _cli_json(*argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(["--json", *argv])
    return code, json.loads(buf.getvalue())


def test_1_example_reproduction():
    t0 = time.perf_counter()
    code, doc = _cli_json("reduce", "--lang", "lin-red", "--fuel", "100", TERM)
    dt = time.perf_counter() - t0
    lin_ok = code == 0 and ac_equal(parse(doc["result"]), UU_VV) and dt < 1.0
    code, doc = _cli_json("reduce", "--lang", "alg-red", "--fuel", "100", TERM)
    alg_ok = code == 0 and ac_equal(parse(doc["result"]), UV_UV)
    report(1, "copy example reproduction", lin_ok and alg_ok, f"lin-red {dt:.3f}s")


def _simulation(k, direction, expected):
    t0 = time.perf_counter()
    r = check_simulation(parse(TERM), direction, fuel=500, strategy="search")
    dt = time.perf_counter() - t0
    ok = r.ok and r.encoded_value == expected and r.indifference_ok and dt < 5.0
    report(k, f"CPS simulation {direction.value}", ok,
           f"{len(r.target_trace or [])} target steps, {dt:.2f}s")


def test_2_simulation_cbv_to_cbn():
    _simulation(2, Direction.CBV_TO_CBN, psi(UU_VV))


def test_3_simulation_cbn_to_cbv():
    _simulation(3, Direction.CBN_TO_CBV, phi(UV_UV))


def test_4_measure_decreases():
    gen = TermGenerator(SEED)
    violations = checked = 0
    for _ in range(1000):
        t = gen.sized_term(30)
        m = ac_measure(t)
        for lang in (LIN_RED, ALG_RED):
            for s in step_all(t, lang, algebraic_only=True):
                checked += 1
                after = ac_measure(s.result)
                if (s.rule.is_ac and after != m) or (not s.rule.is_ac and after >= m):
                    violations += 1
    report(4, "AC-SN measure property", violations == 0, f"{checked} steps, {violations} violations")


def _local_confluence(k, name, max_size, algebraic_only, budget=None):
    gen = TermGenerator(SEED)
    t0 = time.perf_counter()
    failing = 0
    for _ in range(500):
        t = gen.sized_term(max_size)
        for lang in (LIN_RED, ALG_RED):
            failing += len(local_confluence_check(t, lang, 8, algebraic_only=algebraic_only))
    dt = time.perf_counter() - t0
    ok = failing == 0 and (budget is None or dt < budget)
    report(k, name, ok, f"{failing} failing peaks, {dt:.1f}s")


def test_5_local_confluence_algebraic():
    _local_confluence(5, "local confluence, algebraic", 12, True, budget=60.0)


def test_6_local_confluence_full():
    _local_confluence(6, "local confluence, with beta", 10, False)


def test_7_nonconfluence_witness():
    w = demonstrate_nonconfluence(parse(U), LIN_RED, join_depth=10)
    ok = (ac_equal(w.to_zero.end, parse("0")) and ac_equal(w.to_m.end, parse(U))
          and w.diverge and not w.join.joined)
    report(7, "non-confluence witness", ok, w.note)


def test_8_trivial_equality():
    tr = demonstrate_trivial_equality(parse("x"), parse("y"), UNRESTRICTED)
    blocked = demonstrate_trivial_equality(parse("x"), parse("y"), NONNEG)
    ok = tr is not None and ac_equal(tr.end, parse("y")) and blocked is None
    report(8, "trivial equality", ok, f"{len(tr) if tr else 0} steps unrestricted, nonneg absent")


def _suite(gen_case, check, n=1000):
    fails = 0
    for i in range(n):
        if not check(*gen_case(i)):
            fails += 1
    return fails


def test_9_lemma_suites():
    gen = TermGenerator(SEED)
    names = ("x", "y", "z")

    def subst_case(_):
        return gen.sized_term(20), gen.base(gen.rng.randint(1, 6)), gen.rng.choice(names)

    def wt_subst(m, b, x):
        ctx = (m, b)
        return wt(substitute(m, x, b), ctx) == substitute(wt(m, ctx), x, psi(b, ctx))

    def cps_case(_):
        return gen.sized_term(20), gen.sized_term(6), gen.rng.choice(names)

    def cps_subst(m, n, x):
        ctx = (m, n)
        return cps(substitute(m, x, n), ctx) == substitute(cps(m, ctx), x, cps(n, ctx))

    def colon_case(_):
        return gen.sized_term(12, closed=True), gen.base(gen.rng.randint(1, 5), closed=True)

    def colon_reach(direction):
        _, tgt = (LIN_RED, ALG_RED) if direction is Direction.CBV_TO_CBN else (ALG_RED, LIN_RED)

        def check(m, k):
            ctx = (m, k)
            return reduces_to(App(translate(m, direction, ctx), k), colon(m, k, direction, ctx), tgt, 500) is not None
        return check

    def value_case(_):
        return (gen.value(gen.rng.randint(1, 15), closed=True),)

    def value_reach(direction):
        tgt = ALG_RED if direction is Direction.CBV_TO_CBN else LIN_RED

        def check(v):
            ctx = (v, IDENTITY_K)
            return reduces_to(colon(v, IDENTITY_K, direction, ctx), encode_value(v, direction, ctx),
                              tgt, 500) is not None
        return check

    suites = [
        ("wt-substitution", subst_case, wt_subst),
        ("cps-substitution", cps_case, cps_subst),
        ("cps-base-term", lambda _: (gen.sized_term(25),), lambda m: is_base(cps(m))),
    ]
    for d in Direction:
        suites.append((f"colon-reachability {d.value}", colon_case, colon_reach(d)))
        suites.append((f"value-translation {d.value}", value_case, value_reach(d)))
    results = []
    t0 = time.perf_counter()
    for name, case, check in suites:
        results.append((name, _suite(case, check)))
    dt = time.perf_counter() - t0
    detail = ", ".join(f"{n}: {f}" for n, f in results) + f"; {dt:.1f}s"
    report(9, "lemma property suites (1000 each)", all(f == 0 for _, f in results), detail)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
