"""Continuation-passing translations between the two calculi.

``wt`` sends call-by-value terms into the call-by-name calculus with value
encoding ``psi``; ``cps`` goes the other way with value encoding ``phi``.
``colon_v`` and ``colon_n`` are the matching administrative operators.

The continuation binders are named f, g, h, renamed apart from every name
in the input. One triple serves every nesting level: a translated subterm
has the same free variables as its source, so an inner binder can never
capture anything an outer one binds.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field
from typing import Optional

from .ac import ac_equal
from .engine import reduce, reduces_to
from .fragments import Fragment
from .rules import (ALG_EQ, ALG_RED, LIN_EQ, LIN_RED, FuelExhausted, ReductionTrace, RuleName, replay,
                    step_all)
from .terms import (APP_TAG, LAM_TAG, SMUL_TAG, SUM_TAG, VAR_TAG, ZERO, ZERO_TAG, App, Lam, Smul, Sum, Term,
                    Var, all_names, fresh_name, is_base, is_value)

R = RuleName


class Direction(enum.Enum):
    CBV_TO_CBN = "cbv2cbn"
    CBN_TO_CBV = "cbn2cbv"


class NotAValue(ValueError):
    pass


class KNotBase(ValueError):
    pass


class NotClosed(ValueError):
    pass


class SourceNotTerminating(FuelExhausted):
    pass


def _names(*terms) -> tuple:
    avoid = set()
    for t in terms:
        avoid |= all_names(t)
    out = []
    for base in ("f", "g", "h", "y"):
        n = fresh_name(base, avoid)
        avoid.add(n)
        out.append(n)
    return tuple(out)


class _Wt:
    def __init__(self, *context):
        self.f, self.g, self.h, _ = _names(*context)

    def wt(self, t: Term) -> Term:
        f, g, h = Var(self.f), Var(self.g), Var(self.h)
        tag = t.tag
        if tag == VAR_TAG:
            return Lam(self.f, App(f, t))
        if tag == ZERO_TAG:
            return ZERO
        if tag == LAM_TAG:
            return Lam(self.f, App(f, Lam(t.binder, self.wt(t.body))))
        if tag == APP_TAG:
            inner = Lam(self.g, App(self.wt(t.arg), Lam(self.h, App(App(g, h), f))))
            return Lam(self.f, App(self.wt(t.fun), inner))
        if tag == SMUL_TAG:
            return Lam(self.f, App(Smul(t.coeff, self.wt(t.body)), f))
        return Lam(self.f, App(Sum(self.wt(t.left), self.wt(t.right)), f))

    def psi(self, v: Term) -> Term:
        tag = v.tag
        if tag in (VAR_TAG, ZERO_TAG):
            return v
        if tag == LAM_TAG:
            return Lam(v.binder, self.wt(v.body))
        if tag == SMUL_TAG:
            return Smul(v.coeff, self.psi(v.body))
        if tag == SUM_TAG:
            return Sum(self.psi(v.left), self.psi(v.right))
        raise NotAValue(f"{v} is not a value")

    def colon(self, m: Term, k: Term) -> Term:
        tag = m.tag
        if tag == ZERO_TAG:
            return ZERO
        if tag in (VAR_TAG, LAM_TAG):
            return App(k, self.psi(m))
        if tag == SMUL_TAG:
            return Smul(m.coeff, self.colon(m.body, k))
        if tag == SUM_TAG:
            return Sum(self.colon(m.left, k), self.colon(m.right, k))
        fun, arg = m.fun, m.arg
        ftag = fun.tag
        if ftag == ZERO_TAG:
            return ZERO
        if ftag in (VAR_TAG, LAM_TAG):
            return self.colon(arg, Lam(self.f, App(App(self.psi(fun), Var(self.f)), k)))
        if ftag == SMUL_TAG:
            return Smul(fun.coeff, self.colon(App(fun.body, arg), k))
        if ftag == SUM_TAG:
            return self.colon(Sum(App(fun.left, arg), App(fun.right, arg)), k)
        cont = Lam(self.g, App(self.wt(arg), Lam(self.h, App(App(Var(self.g), Var(self.h)), k))))
        return self.colon(fun, cont)


class _Cps:
    def __init__(self, *context):
        self.f, self.g, _, self.y = _names(*context)

    def cps(self, t: Term) -> Term:
        f = Var(self.f)
        tag = t.tag
        if tag == VAR_TAG:
            return t
        if tag == ZERO_TAG:
            return Lam(self.f, App(ZERO, f))
        if tag == LAM_TAG:
            return Lam(self.f, App(f, Lam(t.binder, self.cps(t.body))))
        if tag == APP_TAG:
            inner = Lam(self.g, App(App(Var(self.g), self.cps(t.arg)), f))
            return Lam(self.f, App(self.cps(t.fun), inner))
        if tag == SMUL_TAG:
            return Lam(self.f, App(Smul(t.coeff, self.cps(t.body)), f))
        return Lam(self.f, App(Sum(self.cps(t.left), self.cps(t.right)), f))

    def phi(self, v: Term) -> Term:
        tag = v.tag
        if tag == VAR_TAG:
            return App(v, Lam(self.y, Var(self.y)))
        if tag == ZERO_TAG:
            return v
        if tag == LAM_TAG:
            return Lam(v.binder, self.cps(v.body))
        if tag == SMUL_TAG:
            return Smul(v.coeff, self.phi(v.body))
        if tag == SUM_TAG:
            return Sum(self.phi(v.left), self.phi(v.right))
        raise NotAValue(f"{v} is not a value")

    def colon(self, m: Term, k: Term) -> Term:
        tag = m.tag
        if tag == ZERO_TAG:
            return ZERO
        if tag in (VAR_TAG, LAM_TAG):
            return App(k, self.phi(m))
        if tag == SMUL_TAG:
            return Smul(m.coeff, self.colon(m.body, k))
        if tag == SUM_TAG:
            return Sum(self.colon(m.left, k), self.colon(m.right, k))
        fun, arg = m.fun, m.arg
        ftag = fun.tag
        if ftag == ZERO_TAG:
            return ZERO
        if ftag in (VAR_TAG, LAM_TAG):
            return App(App(self.phi(fun), self.cps(arg)), k)
        if ftag == SMUL_TAG:
            return Smul(fun.coeff, self.colon(App(fun.body, arg), k))
        if ftag == SUM_TAG:
            return self.colon(Sum(App(fun.left, arg), App(fun.right, arg)), k)
        cont = Lam(self.f, App(App(Var(self.f), self.cps(arg)), k))
        return self.colon(fun, cont)


# Each public function takes an optional ``context`` of extra terms whose
# names the fresh binders must avoid. Translations that are compared with
# each other (e.g. wt(M) and psi(V) for a reduct V of M) must share one.

def wt(t: Term, context=()) -> Term:
    return _Wt(t, *context).wt(t)


def psi(v: Term, context=()) -> Term:
    if not is_value(v):
        raise NotAValue(f"{v} is not a value")
    return _Wt(v, *context).psi(v)


def colon_v(m: Term, k: Term, context=()) -> Term:
    if not is_base(k):
        raise KNotBase(f"continuation {k} is not a basis term")
    return _Wt(m, k, *context).colon(m, k)


def cps(t: Term, context=()) -> Term:
    return _Cps(t, *context).cps(t)


def phi(v: Term, context=()) -> Term:
    if not is_value(v):
        raise NotAValue(f"{v} is not a value")
    return _Cps(v, *context).phi(v)


def colon_n(m: Term, k: Term, context=()) -> Term:
    if not is_base(k):
        raise KNotBase(f"continuation {k} is not a basis term")
    return _Cps(m, k, *context).colon(m, k)


def translate(t: Term, direction: Direction, context=()) -> Term:
    return wt(t, context) if direction is Direction.CBV_TO_CBN else cps(t, context)


def encode_value(v: Term, direction: Direction, context=()) -> Term:
    return psi(v, context) if direction is Direction.CBV_TO_CBN else phi(v, context)


def colon(m: Term, k: Term, direction: Direction, context=()) -> Term:
    return colon_v(m, k, context) if direction is Direction.CBV_TO_CBN else colon_n(m, k, context)


# -- simulation checks --------------------------------------------------------

IDENTITY_K = Lam("x", Var("x"))


def _languages(direction: Direction, symmetric: bool = False):
    """(source, target) languages."""
    if direction is Direction.CBV_TO_CBN:
        return (LIN_EQ, ALG_EQ) if symmetric else (LIN_RED, ALG_RED)
    return (ALG_EQ, LIN_EQ) if symmetric else (ALG_RED, LIN_RED)


_ALG_TO_LIN = {R.BetaN: R.BetaV, R.A_app_sum: R.Al_sum, R.A_app_smul: R.Al_smul, R.A_app_zero: R.Al_zero}
_LIN_TO_ALG = {R.BetaV: R.BetaN, R.Al_sum: R.A_app_sum, R.Al_smul: R.A_app_smul, R.Al_zero: R.A_app_zero,
               R.Ar_sum: None, R.Ar_smul: None, R.Ar_zero: None}


def common_rule_map(direction: Direction):
    """Map target-language rule names to their counterpart in the source language.

    Rules with no counterpart map to None, so a trace using them fails to replay.
    """
    table = _ALG_TO_LIN if direction is Direction.CBV_TO_CBN else _LIN_TO_ALG
    return lambda r: table.get(r, r)


@dataclass
class SimulationReport:
    source: Term
    direction: Direction
    source_value: Optional[Term] = None
    source_trace: Optional[ReductionTrace] = None
    translated: Optional[Term] = None
    target_trace: Optional[ReductionTrace] = None
    encoded_value: Optional[Term] = None
    ok: bool = False
    indifference_ok: Optional[bool] = None
    indifference_failure: Optional[int] = None
    warnings: list = field(default_factory=list)
    error: Optional[str] = None


def check_simulation(m: Term, direction: Direction, fuel: int = 500, *, strategy: str = "auto",
                     fragment: Optional[Fragment] = None, symmetric: bool = False,
                     source_fuel: int = 1000) -> SimulationReport:
    """Reduce ``m`` to a value V, then look for ``(T m) \\x.x ->* enc(V)`` in the target calculus.

    ``strategy``: ``"search"`` runs breadth-first search with ``fuel``
    expansions; ``"milestones"`` chains short searches through the colon
    terms the proof goes through; ``"auto"`` first tries the target's
    leftmost-outermost reduction and falls back to search.
    """
    report = SimulationReport(m, direction)
    if direction is Direction.CBN_TO_CBV and m.free_vars:
        raise NotClosed(f"cbn2cbv needs a closed term; free: {sorted(m.free_vars)}")
    if direction is Direction.CBV_TO_CBN and m.free_vars:
        msg = f"open term (free: {sorted(m.free_vars)}); the simulation is stated for any term but untested here"
        warnings.warn(msg)
        report.warnings.append(msg)
    src_lang, tgt_lang = _languages(direction, symmetric)
    try:
        src_trace = reduce(m, src_lang.oriented(), fuel=source_fuel)
    except FuelExhausted as e:
        raise SourceNotTerminating(e.trace, "source reduction did not terminate within fuel") from None
    v = src_trace.end
    report.source_trace = src_trace
    report.source_value = v
    if not is_value(v):
        report.error = f"source normal form {v} is not a value"
        return report
    ctx = (m, v, IDENTITY_K)
    report.translated = App(translate(m, direction, ctx), IDENTITY_K)
    report.encoded_value = encode_value(v, direction, ctx)
    kw = dict(fragment=fragment) if symmetric else dict(reverse=False)
    if not symmetric:
        tgt_lang = tgt_lang.oriented()

    trace = None
    if strategy in ("auto", "milestones"):
        trace = _milestones(m, v, direction, tgt_lang, fuel, ctx, kw) if strategy == "milestones" else None
        if strategy == "auto":
            try:
                lo = reduce(report.translated, tgt_lang.oriented(), fuel=max(fuel, 1000))
                if ac_equal(lo.end, report.encoded_value):
                    trace = lo
            except FuelExhausted:
                trace = None
    if trace is None and strategy in ("auto", "search"):
        trace = reduces_to(report.translated, report.encoded_value, tgt_lang, fuel, **kw)
    if trace is None:
        report.error = "no target trace found within fuel"
        return report
    report.target_trace = trace
    report.ok = ac_equal(trace.end, report.encoded_value)
    failing = replay(trace, src_lang, rule_map=common_rule_map(direction))
    report.indifference_ok = failing is None
    report.indifference_failure = failing
    return report


def _milestones(m, v, direction, lang, fuel, ctx, kw):
    """Chain searches (T m) K -> m:K -> v:K -> enc(v)."""
    k = IDENTITY_K
    stops = [App(translate(m, direction, ctx), k), colon(m, k, direction, ctx), colon(v, k, direction, ctx),
             encode_value(v, direction, ctx)]
    trace = ReductionTrace(stops[0], [])
    for target in stops[1:]:
        if ac_equal(trace.end, target):
            continue
        part = reduces_to(trace.end, target, lang, fuel, **kw)
        if part is None:
            return None
        trace = trace.then(part)
    return trace


@dataclass
class ColonReport:
    translation_reaches_colon: bool
    reducts_preserved: bool
    value_reaches_encoding: Optional[bool]
    failing_reducts: list = field(default_factory=list)


def check_colon_lemmas(m: Term, k: Term, direction: Direction, fuel: int = 500) -> ColonReport:
    """(a) ``(T m) k ->* m:k``; (b) each source reduct n of m has ``m:k ->* n:k``;
    (c) for a value m, ``m:\\x.x ->* enc(m)`` (None when m is not a value).
    """
    if not is_base(k):
        raise KNotBase(f"continuation {k} is not a basis term")
    src_lang, tgt_lang = _languages(direction)
    reducts = [s.result for s in step_all(m, src_lang)]
    ctx = (m, k, IDENTITY_K, *reducts)
    mk = colon(m, k, direction, ctx)
    a = reduces_to(App(translate(m, direction, ctx), k), mk, tgt_lang, fuel) is not None
    failing = [n for n in reducts if reduces_to(mk, colon(n, k, direction, ctx), tgt_lang, fuel) is None]
    c = None
    if is_value(m):
        c = reduces_to(colon(m, IDENTITY_K, direction, ctx), encode_value(m, direction, ctx),
                       tgt_lang, fuel) is not None
    return ColonReport(a, not failing, c, failing)
