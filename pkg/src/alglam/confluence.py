"""Empirical confluence checks, the Y_M counterexample, and the
equality/reduction correspondence.

All searches here are bounded, so a negative answer only means nothing
was found within the bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from . import kernels
from .ac import Level, ac_canonical, ac_equal
from .engine import moves, reduce, search
from .fragments import UNRESTRICTED, Fragment
from .rules import (LIN_EQ, FuelExhausted, Language, ReductionTrace, RuleName, StepRecord, apply_rule,
                    step_all, step_is_valid)
from .terms import App, Lam, Smul, Sum, Term, Var, ZERO, all_names, fresh_name, is_value, minus

R = RuleName


@dataclass
class JoinResult:
    joined: bool
    meet: Optional[Term] = None
    left_trace: Optional[ReductionTrace] = None
    right_trace: Optional[ReductionTrace] = None
    depth_used: int = 0


class _Frontier:
    def __init__(self, start: Term):
        self.start = start
        self.parent = {kernels.ac_key(start): None}
        self.terms = {kernels.ac_key(start): start}
        self.layer = [start]

    def expand(self, lang, algebraic_only, fragment, reverse) -> list:
        new = []
        for cur in self.layer:
            ck = kernels.ac_key(cur)
            for m in moves(cur, lang, algebraic_only=algebraic_only, fragment=fragment, reverse=reverse):
                k = kernels.ac_key(m.result)
                if k not in self.parent:
                    self.parent[k] = (ck, m)
                    self.terms[k] = m.result
                    new.append(k)
                    self.layer_next.append(m.result)
        return new

    def step(self, *args) -> list:
        self.layer_next = []
        new = self.expand(*args)
        self.layer = self.layer_next
        return new

    def trace_to(self, k) -> ReductionTrace:
        chain = []
        while self.parent[k] is not None:
            pk, m = self.parent[k]
            chain.append(m)
            k = pk
        steps = []
        for m in reversed(chain):
            steps.extend(m.steps())
        return ReductionTrace(self.start, steps)


def joinable(a: Term, b: Term, lang: Language, depth: int = 8, *, algebraic_only: bool = False,
             fragment: Optional[Fragment] = None, limit: int = 50000) -> JoinResult:
    """Bidirectional breadth-first search for a common reduct modulo AC.

    Each side takes at most ``depth`` moves (non-AC steps, possibly with
    the Asso/Com steps needed to line up two summands).
    """
    if depth <= 0:
        raise ValueError("depth must be positive")
    reverse = lang.symmetric
    if ac_equal(a, b):
        return JoinResult(True, a, ReductionTrace(a, []), ReductionTrace(b, []), 0)
    left, right = _Frontier(a), _Frontier(b)
    args = (lang, algebraic_only, fragment, reverse)
    for d in range(1, depth + 1):
        for side, other in ((left, right), (right, left)):
            if not side.layer:
                continue
            for k in side.step(*args):
                if k in other.parent:
                    meet = side.terms[k]
                    lt, rt = left.trace_to(k), right.trace_to(k)
                    return JoinResult(True, meet, lt, rt, d)
        if not left.layer and not right.layer:
            return JoinResult(False, depth_used=d)
        if len(left.parent) + len(right.parent) > limit:
            return JoinResult(False, depth_used=d)
    return JoinResult(False, depth_used=depth)


def _fast_join(a, b, lang, depth, algebraic_only) -> Optional[JoinResult]:
    """Leftmost-outermost normal forms, when both exist within ``depth`` moves."""
    try:
        ta = reduce(a, lang, fuel=depth, algebraic_only=algebraic_only)
        tb = reduce(b, lang, fuel=depth, algebraic_only=algebraic_only)
    except FuelExhausted:
        return None
    if ac_equal(ta.end, tb.end):
        return JoinResult(True, ta.end, ta, tb, depth)
    return None


@dataclass(frozen=True)
class Peak:
    source: Term
    left: StepRecord
    right: StepRecord


def local_confluence_check(t: Term, lang: Language, depth: int = 8, *, algebraic_only: bool = False,
                           fragment: Optional[Fragment] = None) -> list:
    """Every peak ``u <- t -> v`` of one-step reducts that fails to join within ``depth``."""
    reducts = {}
    for rec in step_all(t, lang, algebraic_only=algebraic_only, fragment=fragment):
        reducts.setdefault(kernels.ac_key(rec.result), rec)
    failing = []
    for l, r in combinations(reducts.values(), 2):
        if not lang.symmetric and _fast_join(l.result, r.result, lang, depth, algebraic_only):
            continue
        if not joinable(l.result, r.result, lang, depth, algebraic_only=algebraic_only, fragment=fragment).joined:
            failing.append(Peak(t, l, r))
    return failing


# -- Y_M -----------------------------------------------------------------------

def build_Y(m: Term) -> Term:
    """``(\\x.(m + (x) x)) \\x.(m + (x) x)`` with x fresh for m."""
    x = fresh_name("x", all_names(m))
    half = Lam(x, Sum(m, App(Var(x), Var(x))))
    return App(half, half)


@dataclass
class NonConfluenceWitness:
    source: Term
    to_zero: ReductionTrace
    to_m: ReductionTrace
    diverge: bool
    join: Optional[JoinResult] = None
    note: str = ("endpoints were not joined within the search bound; this certifies divergence "
                 "within the bound, not non-joinability in general")


def demonstrate_nonconfluence(m: Term, lang: Language, fuel: int = 100, join_depth: int = 0) -> NonConfluenceWitness:
    """``Y_m - Y_m`` reduces to 0 by algebra alone, and to m by first unfolding Y_m once."""
    if lang.symmetric:
        raise ValueError("demonstrate_nonconfluence needs an oriented language")
    y = build_Y(m)
    t = minus(y, y)
    to_zero = reduce(t, lang, fuel=fuel, algebraic_only=True)
    first = apply_rule(t, lang.beta_rule, (0,), lang)
    if first is None:
        raise ValueError(f"{lang.beta_rule.value} does not fire on {y}")
    rest = reduce(first, lang, fuel=fuel, algebraic_only=True)
    to_m = ReductionTrace(t, [StepRecord(lang.beta_rule, (0,), False, first)] + rest.steps)
    w = NonConfluenceWitness(t, to_zero, to_m, not ac_equal(to_zero.end, to_m.end))
    if join_depth:
        w.join = joinable(to_zero.end, to_m.end, lang, join_depth)
    return w


def demonstrate_trivial_equality(m: Term, n: Term, fragment: Fragment = UNRESTRICTED,
                                 fuel: int = 200) -> Optional[ReductionTrace]:
    """An equality chain ``m = m + Y - Y -> ... -> n`` in the symmetric call-by-value language.

    Y is Y_{n-m}. Returns None when ``fragment`` rejects a term on the
    chain (for instance under nonnegative scalars, which exclude the -1).
    """
    if m == n:
        return ReductionTrace(m, [])
    lang = LIN_EQ
    y = build_Y(minus(n, m))
    steps = []
    cur = m

    def back(rule, pos, new):
        nonlocal cur
        rec = StepRecord(rule, pos, True, new)
        if not step_is_valid(cur, rec, lang):
            raise AssertionError(f"reverse {rule.value} rejected at {pos}")
        steps.append(rec)
        cur = new

    def fwd(rule, pos):
        nonlocal cur
        new = apply_rule(cur, rule, pos, lang)
        if new is None:
            raise AssertionError(f"{rule.value} does not apply at {pos}")
        steps.append(StepRecord(rule, pos, False, new))
        cur = new

    back(R.S_zero_sum, (), Sum(ZERO, m))
    fwd(R.Com, ())
    back(R.S_zero_coeff, (1,), Sum(m, Smul(0, y)))
    back(R.F_fact1, (1,), Sum(m, Sum(Smul(-1, y), y)))
    fwd(R.Com, (1,))
    fwd(R.BetaV, (1, 0))
    tail = reduce(cur, lang.oriented(), fuel=fuel, algebraic_only=True)
    steps.extend(tail.steps)
    trace = ReductionTrace(m, steps)
    if not all(fragment.admits(u) for u in trace.terms()):
        return None
    if not ac_equal(trace.end, n) and not ac_equal(ac_canonical(trace.end, Level.AC_PLUS_ALGEBRAIC),
                                                   ac_canonical(n, Level.AC_PLUS_ALGEBRAIC)):
        return None
    return trace


# -- equality to reduction -------------------------------------------------------

@dataclass
class EqToRedReport:
    source: Term
    symmetric_value: Optional[Term] = None
    symmetric_trace: Optional[ReductionTrace] = None
    oriented_value: Optional[Term] = None
    oriented_trace: Optional[ReductionTrace] = None
    values_related: Optional[bool] = None
    ok: bool = False
    # a value exists up to equality but reduction can't find one: evidence
    # that the fragment is not confluent, so no reduction is guaranteed
    hypothesis_violation: bool = False
    notes: list = field(default_factory=list)


def _values_related(v: Term, w: Term, lang: Language, fragment: Fragment, depth: int) -> bool:
    if ac_equal(v, w):
        return True
    if ac_canonical(v, Level.AC_PLUS_ALGEBRAIC) == ac_canonical(w, Level.AC_PLUS_ALGEBRAIC):
        return True
    return joinable(v, w, lang.oriented(), depth, algebraic_only=True, fragment=fragment).joined


def check_eq_to_red(m: Term, lang: Language, fragment: Fragment = UNRESTRICTED, fuel: int = 500, *,
                    symmetric_witness: Optional[ReductionTrace] = None, depth: int = 8) -> EqToRedReport:
    """If ``m`` equals a value V, look for a reduction from m to a value V' equal to V."""
    rep = EqToRedReport(m)
    if symmetric_witness is not None:
        if symmetric_witness.start != m:
            raise ValueError("witness does not start at m")
        rep.symmetric_trace = symmetric_witness
    else:
        rep.symmetric_trace = search(m, lang.with_equality(), is_value, fuel, fragment=fragment)
    if rep.symmetric_trace is None:
        rep.notes.append("no value found up to equality within fuel")
        return rep
    rep.symmetric_value = rep.symmetric_trace.end
    oriented = lang.oriented()
    try:
        lo = reduce(m, oriented, fuel=fuel)
        rep.oriented_trace = lo if is_value(lo.end) else None
    except FuelExhausted:
        rep.oriented_trace = None
    if rep.oriented_trace is None:
        rep.oriented_trace = search(m, oriented, is_value, fuel, reverse=False, fragment=fragment)
    if rep.oriented_trace is None:
        rep.hypothesis_violation = True
        rep.notes.append("a value is reachable up to equality but not by reduction: "
                         "the fragment does not behave confluently here")
        return rep
    rep.oriented_value = rep.oriented_trace.end
    rep.values_related = _values_related(rep.symmetric_value, rep.oriented_value, lang, fragment, depth)
    rep.ok = rep.values_related
    if not rep.ok:
        rep.hypothesis_violation = True
    return rep
