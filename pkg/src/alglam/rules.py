"""Rewrite rules, the four languages, and one-step reduct enumeration."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .fragments import Fragment
from .scalars import ONE, TWO, ZERO as SZERO, ScalarDomain
from .terms import (APP_TAG, LAM_TAG, SMUL_TAG, SUM_TAG, ZERO, ZERO_TAG, App, Smul, Sum, Term, is_base,
                    is_value, replace_at, scalars_of, size, subterm_at, subterms, substitute)


class RuleName(enum.Enum):
    BetaN = "BetaN"
    BetaV = "BetaV"
    A_app_sum = "A_app_sum"
    A_app_smul = "A_app_smul"
    A_app_zero = "A_app_zero"
    Al_sum = "Al_sum"
    Al_smul = "Al_smul"
    Al_zero = "Al_zero"
    Ar_sum = "Ar_sum"
    Ar_smul = "Ar_smul"
    Ar_zero = "Ar_zero"
    Asso_L = "Asso_L"
    Asso_R = "Asso_R"
    Com = "Com"
    F_fact = "F_fact"
    F_fact1 = "F_fact1"
    F_fact11 = "F_fact11"
    F_smul_smul = "F_smul_smul"
    S_dist = "S_dist"
    S_one = "S_one"
    S_zero_coeff = "S_zero_coeff"
    S_zero_term = "S_zero_term"
    S_zero_sum = "S_zero_sum"

    @property
    def order(self) -> int:
        return _ORDER[self]

    @property
    def is_beta(self) -> bool:
        return self in (RuleName.BetaN, RuleName.BetaV)

    @property
    def is_ac(self) -> bool:
        return self in AC_RULES


_ORDER = {r: i for i, r in enumerate(RuleName)}
R = RuleName
AC_RULES = frozenset({R.Asso_L, R.Asso_R, R.Com})
RING_RULES = frozenset({R.Asso_L, R.Asso_R, R.Com, R.F_fact, R.F_fact1, R.F_fact11, R.F_smul_smul,
                        R.S_dist, R.S_one, R.S_zero_coeff, R.S_zero_term, R.S_zero_sum})
GROUP_A = frozenset({R.A_app_sum, R.A_app_smul, R.A_app_zero})
GROUP_AL = frozenset({R.Al_sum, R.Al_smul, R.Al_zero})
GROUP_AR = frozenset({R.Ar_sum, R.Ar_smul, R.Ar_zero})


class Beta(enum.Enum):
    CALL_BY_NAME = "name"
    CALL_BY_VALUE = "value"


class Algebra(enum.Enum):
    ORIENTED = "oriented"
    SYMMETRIC = "symmetric"


@dataclass(frozen=True)
class Language:
    beta: Beta
    algebraic: Algebra

    @property
    def cbv(self) -> bool:
        return self.beta is Beta.CALL_BY_VALUE

    @property
    def symmetric(self) -> bool:
        return self.algebraic is Algebra.SYMMETRIC

    @property
    def name(self) -> str:
        return ("lin" if self.cbv else "alg") + ("-eq" if self.symmetric else "-red")

    @property
    def beta_rule(self) -> RuleName:
        return R.BetaV if self.cbv else R.BetaN

    @property
    def algebraic_rules(self) -> frozenset:
        return RING_RULES | (GROUP_AL | GROUP_AR if self.cbv else GROUP_A)

    @property
    def rules(self) -> frozenset:
        return self.algebraic_rules | {self.beta_rule}

    def oriented(self) -> "Language":
        return Language(self.beta, Algebra.ORIENTED)

    def with_equality(self) -> "Language":
        return Language(self.beta, Algebra.SYMMETRIC)

    def __str__(self):
        return self.name


LIN_RED = Language(Beta.CALL_BY_VALUE, Algebra.ORIENTED)
LIN_EQ = Language(Beta.CALL_BY_VALUE, Algebra.SYMMETRIC)
ALG_RED = Language(Beta.CALL_BY_NAME, Algebra.ORIENTED)
ALG_EQ = Language(Beta.CALL_BY_NAME, Algebra.SYMMETRIC)
LANGUAGES = {lang.name: lang for lang in (LIN_RED, LIN_EQ, ALG_RED, ALG_EQ)}


def language(name: str) -> Language:
    try:
        return LANGUAGES[name]
    except KeyError:
        raise ValueError(f"unknown language {name!r}; expected one of {sorted(LANGUAGES)}") from None


@dataclass(frozen=True)
class StepRecord:
    rule: RuleName
    position: tuple
    reversed: bool
    result: Term


@dataclass
class ReductionTrace:
    start: Term
    steps: list = field(default_factory=list)
    # Exhaustive mode: number of one-step alternatives before each step
    alternatives: Optional[list] = None

    @property
    def end(self) -> Term:
        return self.steps[-1].result if self.steps else self.start

    def terms(self) -> list:
        return [self.start] + [s.result for s in self.steps]

    def __len__(self):
        return len(self.steps)

    def then(self, other: "ReductionTrace") -> "ReductionTrace":
        return ReductionTrace(self.start, self.steps + other.steps)


# -- forward rules at the root ------------------------------------------------
# Each returns the contractum, or None when the rule does not match.

def _beta_n(t):
    if t.fun.tag == LAM_TAG:
        return substitute(t.fun.body, t.fun.binder, t.arg)


def _beta_v(t):
    if t.fun.tag == LAM_TAG and is_base(t.arg):
        return substitute(t.fun.body, t.fun.binder, t.arg)


def _app_sum(t):
    f = t.fun
    if f.tag == SUM_TAG:
        return Sum(App(f.left, t.arg), App(f.right, t.arg))


def _app_smul(t):
    f = t.fun
    if f.tag == SMUL_TAG:
        return Smul(f.coeff, App(f.body, t.arg))


def _app_zero(t):
    if t.fun.tag == ZERO_TAG:
        return ZERO


def _when_arg_value(rule):
    def apply(t):
        if is_value(t.arg):
            return rule(t)
    return apply


def _ar_sum(t):
    a = t.arg
    if a.tag == SUM_TAG and is_base(t.fun):
        return Sum(App(t.fun, a.left), App(t.fun, a.right))


def _ar_smul(t):
    a = t.arg
    if a.tag == SMUL_TAG and is_base(t.fun):
        return Smul(a.coeff, App(t.fun, a.body))


def _ar_zero(t):
    if t.arg.tag == ZERO_TAG and is_base(t.fun):
        return ZERO


def _asso_l(t):
    r = t.right
    if r.tag == SUM_TAG:
        return Sum(Sum(t.left, r.left), r.right)


def _asso_r(t):
    l = t.left
    if l.tag == SUM_TAG:
        return Sum(l.left, Sum(l.right, t.right))


def _com(t):
    return Sum(t.right, t.left)


def _f_fact(t):
    l, r = t.left, t.right
    if l.tag == SMUL_TAG and r.tag == SMUL_TAG and l.body == r.body:
        return Smul(l.coeff + r.coeff, l.body)


def _f_fact1(t):
    l = t.left
    if l.tag == SMUL_TAG and l.body == t.right:
        return Smul(l.coeff + ONE, l.body)


def _f_fact11(t):
    if t.left == t.right:
        return Smul(TWO, t.left)


def _f_smul_smul(t):
    b = t.body
    if b.tag == SMUL_TAG:
        return Smul(t.coeff * b.coeff, b.body)


def _s_dist(t):
    b = t.body
    if b.tag == SUM_TAG:
        return Sum(Smul(t.coeff, b.left), Smul(t.coeff, b.right))


def _s_one(t):
    if t.coeff == ONE:
        return t.body


def _s_zero_coeff(t):
    if t.coeff == SZERO:
        return ZERO


def _s_zero_term(t):
    if t.body.tag == ZERO_TAG:
        return ZERO


def _s_zero_sum(t):
    if t.left.tag == ZERO_TAG:
        return t.right


FORWARD: dict = {
    R.BetaN: _beta_n, R.BetaV: _beta_v,
    R.A_app_sum: _app_sum, R.A_app_smul: _app_smul, R.A_app_zero: _app_zero,
    R.Al_sum: _when_arg_value(_app_sum), R.Al_smul: _when_arg_value(_app_smul),
    R.Al_zero: _when_arg_value(_app_zero),
    R.Ar_sum: _ar_sum, R.Ar_smul: _ar_smul, R.Ar_zero: _ar_zero,
    R.Asso_L: _asso_l, R.Asso_R: _asso_r, R.Com: _com,
    R.F_fact: _f_fact, R.F_fact1: _f_fact1, R.F_fact11: _f_fact11, R.F_smul_smul: _f_smul_smul,
    R.S_dist: _s_dist, R.S_one: _s_one, R.S_zero_coeff: _s_zero_coeff, R.S_zero_term: _s_zero_term,
    R.S_zero_sum: _s_zero_sum,
}

# redex root constructor of each rule's left-hand side
LHS_TAG = {r: APP_TAG for r in (GROUP_A | GROUP_AL | GROUP_AR | {R.BetaN, R.BetaV})}
LHS_TAG.update({r: SUM_TAG for r in (R.Asso_L, R.Asso_R, R.Com, R.F_fact, R.F_fact1, R.F_fact11,
                                      R.S_zero_sum)})
LHS_TAG.update({r: SMUL_TAG for r in (R.F_smul_smul, R.S_dist, R.S_one, R.S_zero_coeff, R.S_zero_term)})


def _rules_by_tag(rules) -> dict:
    table = {ZERO_TAG: (), APP_TAG: [], SUM_TAG: [], SMUL_TAG: []}
    for r in sorted(rules, key=lambda r: r.order):
        table[LHS_TAG[r]].append(r)
    return table


_TABLE_CACHE: dict = {}


def _table(lang: Language, algebraic_only: bool) -> dict:
    key = (lang.beta, algebraic_only)
    if key not in _TABLE_CACHE:
        rules = lang.algebraic_rules if algebraic_only else lang.rules
        _TABLE_CACHE[key] = _rules_by_tag(rules)
    return _TABLE_CACHE[key]


def apply_root(t: Term, rule: RuleName) -> Optional[Term]:
    if t.tag != LHS_TAG[rule]:
        return None
    return FORWARD[rule](t)


# -- reduction contexts ---------------------------------------------------------

def redex_positions(t: Term, cbv: bool) -> Iterator[tuple]:
    """``(position, subterm, parent_is_sum)`` for every position a rule may fire at.

    Never enters an abstraction; enters an argument only under call-by-value
    and only when the function is a value.
    """
    stack = [((), t, False)]
    while stack:
        pos, u, in_sum = stack.pop()
        yield pos, u, in_sum
        tag = u.tag
        if tag == APP_TAG:
            if cbv and is_value(u.fun):
                stack.append((pos + (1,), u.arg, False))
            stack.append((pos + (0,), u.fun, False))
        elif tag == SUM_TAG:
            stack.append((pos + (1,), u.right, True))
            stack.append((pos + (0,), u.left, True))
        elif tag == SMUL_TAG:
            stack.append((pos + (0,), u.body, False))


def is_redex_position(t: Term, position, cbv: bool) -> bool:
    u = t
    for i in position:
        tag = u.tag
        if tag == APP_TAG:
            if i == 0:
                u = u.fun
            elif i == 1 and cbv and is_value(u.fun):
                u = u.arg
            else:
                return False
        elif tag == SUM_TAG and i in (0, 1):
            u = u.left if i == 0 else u.right
        elif tag == SMUL_TAG and i == 0:
            u = u.body
        else:
            return False
    return True


def apply_rule(t: Term, rule: RuleName, position, lang: Language) -> Optional[Term]:
    """Contract ``rule`` at ``position`` if ``lang`` allows it there, else None."""
    position = tuple(position)
    if rule not in lang.rules or not is_redex_position(t, position, lang.cbv):
        return None
    r = apply_root(subterm_at(t, position), rule)
    return None if r is None else replace_at(t, position, r)


# -- reverse rules (symmetric languages) --------------------------------------

@dataclass(frozen=True)
class Candidates:
    """Finite material reverse steps may introduce."""
    scalars: tuple
    terms: tuple
    domain: ScalarDomain

    @property
    def nonzero_scalars(self):
        return tuple(c for c in self.scalars if c != 0)


MAX_CANDIDATE_TERMS = 6


def reverse_candidates(t: Term, domain: ScalarDomain = ScalarDomain.RING) -> Candidates:
    base = set(scalars_of(t)) | {SZERO, ONE}
    pool = set(base)
    for a in base:
        pool.add(-a)
        for b in base:
            pool.add(a + b)
    scalars = tuple(sorted(c for c in pool if domain.admits(c)))
    seen = {}
    for _, u in subterms(t):
        if u.tag != ZERO_TAG and u not in seen:
            seen[u] = size(u)
    terms = tuple(sorted(seen, key=lambda u: (seen[u], str(u)))[:MAX_CANDIDATE_TERMS])
    return Candidates(scalars, terms, domain)


def _rev_app_sum(u, c, need_value):
    if u.tag == SUM_TAG and u.left.tag == APP_TAG and u.right.tag == APP_TAG and u.left.arg == u.right.arg:
        if not need_value or is_value(u.left.arg):
            return [App(Sum(u.left.fun, u.right.fun), u.left.arg)]
    return []


def _rev_app_smul(u, c, need_value):
    if u.tag == SMUL_TAG and u.body.tag == APP_TAG:
        if not need_value or is_value(u.body.arg):
            return [App(Smul(u.coeff, u.body.fun), u.body.arg)]
    return []


def _rev_app_zero(u, c, need_value):
    if u.tag != ZERO_TAG:
        return []
    args = [m for m in c.terms if not need_value or is_value(m)]
    return [App(ZERO, m) for m in [ZERO] + args]


def _rev_ar_sum(u, c):
    if u.tag == SUM_TAG and u.left.tag == APP_TAG and u.right.tag == APP_TAG:
        f = u.left.fun
        if is_base(f) and f == u.right.fun:
            return [App(f, Sum(u.left.arg, u.right.arg))]
    return []


def _rev_ar_smul(u, c):
    if u.tag == SMUL_TAG and u.body.tag == APP_TAG and is_base(u.body.fun):
        return [App(u.body.fun, Smul(u.coeff, u.body.arg))]
    return []


def _rev_ar_zero(u, c):
    if u.tag != ZERO_TAG:
        return []
    return [App(b, ZERO) for b in c.terms if is_base(b)]


def _rev_asso_l(u, c):
    return [_asso_r(u)] if u.tag == SUM_TAG and u.left.tag == SUM_TAG else []


def _rev_asso_r(u, c):
    return [_asso_l(u)] if u.tag == SUM_TAG and u.right.tag == SUM_TAG else []


def _rev_com(u, c):
    return [_com(u)] if u.tag == SUM_TAG else []


def _rev_f_fact(u, c):
    if u.tag != SMUL_TAG:
        return []
    out = []
    for a in c.scalars:
        b = u.coeff - a
        if c.domain.admits(b):
            out.append(Sum(Smul(a, u.body), Smul(b, u.body)))
    return out


def _rev_f_fact1(u, c):
    if u.tag == SMUL_TAG and c.domain.admits(u.coeff - ONE):
        return [Sum(Smul(u.coeff - ONE, u.body), u.body)]
    return []


def _rev_f_fact11(u, c):
    if u.tag == SMUL_TAG and u.coeff == TWO:
        return [Sum(u.body, u.body)]
    return []


def _rev_f_smul_smul(u, c):
    if u.tag != SMUL_TAG:
        return []
    out = []
    for a in c.nonzero_scalars:
        b = u.coeff / a
        if c.domain.admits(b):
            out.append(Smul(a, Smul(b, u.body)))
    return out


def _rev_s_dist(u, c):
    if (u.tag == SUM_TAG and u.left.tag == SMUL_TAG and u.right.tag == SMUL_TAG
            and u.left.coeff == u.right.coeff):
        return [Smul(u.left.coeff, Sum(u.left.body, u.right.body))]
    return []


def _rev_s_one(u, c):
    return [Smul(ONE, u)]


def _rev_s_zero_coeff(u, c):
    return [Smul(SZERO, m) for m in c.terms] if u.tag == ZERO_TAG else []


def _rev_s_zero_term(u, c):
    return [Smul(a, ZERO) for a in c.scalars] if u.tag == ZERO_TAG else []


def _rev_s_zero_sum(u, c):
    return [Sum(ZERO, u)]


REVERSE: dict = {
    R.A_app_sum: lambda u, c: _rev_app_sum(u, c, False),
    R.A_app_smul: lambda u, c: _rev_app_smul(u, c, False),
    R.A_app_zero: lambda u, c: _rev_app_zero(u, c, False),
    R.Al_sum: lambda u, c: _rev_app_sum(u, c, True),
    R.Al_smul: lambda u, c: _rev_app_smul(u, c, True),
    R.Al_zero: lambda u, c: _rev_app_zero(u, c, True),
    R.Ar_sum: _rev_ar_sum, R.Ar_smul: _rev_ar_smul, R.Ar_zero: _rev_ar_zero,
    R.Asso_L: _rev_asso_l, R.Asso_R: _rev_asso_r, R.Com: _rev_com,
    R.F_fact: _rev_f_fact, R.F_fact1: _rev_f_fact1, R.F_fact11: _rev_f_fact11,
    R.F_smul_smul: _rev_f_smul_smul,
    R.S_dist: _rev_s_dist, R.S_one: _rev_s_one, R.S_zero_coeff: _rev_s_zero_coeff,
    R.S_zero_term: _rev_s_zero_term, R.S_zero_sum: _rev_s_zero_sum,
}

# reverse rules that fold two summands into one redex
PAIR_REVERSE = (R.A_app_sum, R.Al_sum, R.Ar_sum, R.S_dist)
PAIR_FORWARD = (R.F_fact, R.F_fact1, R.F_fact11, R.S_zero_sum)


def reverse_root(u: Term, rule: RuleName, cands: Candidates) -> list:
    """Every ``t`` (from the candidate material) with ``t -> u`` by ``rule`` at the root."""
    return REVERSE[rule](u, cands)


# -- one-step enumeration -------------------------------------------------------

def step_all(t: Term, lang: Language, *, algebraic_only: bool = False,
             fragment: Optional[Fragment] = None, reverse: Optional[bool] = None) -> list:
    """All one-step reducts of ``t`` in ``lang`` as StepRecords.

    Symmetric languages also offer each algebraic rule backwards (beta is
    never reversed); reverse steps draw new material from
    ``reverse_candidates`` and both endpoints must lie in ``fragment``.
    """
    table = _table(lang, algebraic_only)
    records = []
    positions = list(redex_positions(t, lang.cbv))
    for pos, u, _ in positions:
        for rule in table[u.tag] if u.tag in table else ():
            r = FORWARD[rule](u)
            if r is not None:
                records.append(StepRecord(rule, pos, False, replace_at(t, pos, r)))
    if reverse is None:
        reverse = lang.symmetric
    if reverse:
        if fragment is not None and not fragment.admits(t):
            return records
        domain = fragment.scalar_domain if fragment is not None else ScalarDomain.RING
        cands = reverse_candidates(t, domain)
        rules = sorted(lang.algebraic_rules, key=lambda r: r.order)
        for pos, u, _ in positions:
            for rule in rules:
                for s in REVERSE[rule](u, cands):
                    new = replace_at(t, pos, s)
                    if fragment is None or fragment.admits(new):
                        records.append(StepRecord(rule, pos, True, new))
    return records


def step_is_valid(before: Term, step: StepRecord, lang: Language,
                  rule_map: Optional[Callable] = None) -> bool:
    rule = rule_map(step.rule) if rule_map else step.rule
    if rule is None:
        return False
    if step.reversed:
        if not lang.symmetric or rule.is_beta:
            return False
        back = apply_rule(step.result, rule, step.position, lang)
        return back is not None and back == before
    after = apply_rule(before, rule, step.position, lang)
    return after is not None and after == step.result


def replay(trace: ReductionTrace, lang: Language, rule_map: Optional[Callable] = None,
           fragment: Optional[Fragment] = None) -> Optional[int]:
    """Index of the first step ``lang`` rejects, or None if the whole trace replays."""
    cur = trace.start
    for i, step in enumerate(trace.steps):
        if not step_is_valid(cur, step, lang, rule_map):
            return i
        if fragment is not None and step.reversed and not (fragment.admits(cur) and fragment.admits(step.result)):
            return i
        cur = step.result
    return None


class FuelExhausted(RuntimeError):
    def __init__(self, trace: ReductionTrace, message: str = "fuel exhausted"):
        super().__init__(message)
        self.trace = trace
