"""Reduction strategies and reachability search modulo AC.

Search and the default strategy work on moves rather than raw steps. A
move is a single non-AC step, or a *pair move*: a run of Asso/Com steps
that makes two summands of a sum adjacent, followed by the rule that
combines them. Pair moves let a rule fire on summands that are far apart
without ever exploring the AC class step by step. Every move expands to
plain StepRecords, so traces replay rule by rule.
"""

from __future__ import annotations

import enum
import heapq
from collections import deque
from dataclasses import dataclass
from typing import Callable, Optional

from . import kernels
from .ac import right_comb, summands
from .fragments import Fragment
from .rules import (AC_RULES, FORWARD, PAIR_FORWARD, PAIR_REVERSE, REVERSE, FuelExhausted, Language,
                    ReductionTrace, RuleName, StepRecord, apply_rule, redex_positions, replace_at,
                    step_all)
from .scalars import ScalarDomain
from .terms import APP_TAG, SMUL_TAG, SUM_TAG, ZERO_TAG, Sum, Term, subterm_at

R = RuleName


class Strategy(enum.Enum):
    LEFTMOST_OUTERMOST = "leftmost-outermost"
    EXHAUSTIVE = "exhaustive"


@dataclass(frozen=True)
class Move:
    sort_key: tuple
    result: Term
    build: Callable[[], list]

    def steps(self) -> list:
        return self.build()


def _single(rec: StepRecord) -> Move:
    return Move((rec.position, rec.rule.order, 1), rec.result, lambda: [rec])


class _Builder:
    """Applies steps one at a time, checking each against the language."""

    def __init__(self, t: Term, lang: Language):
        self.t = t
        self.lang = lang
        self.steps = []

    def forward(self, rule, pos):
        nxt = apply_rule(self.t, rule, pos, self.lang)
        if nxt is None:
            raise AssertionError(f"{rule.value} does not apply at {pos} in {self.t}")
        self.t = nxt
        self.steps.append(StepRecord(rule, pos, False, nxt))

    def backward(self, rule, pos, new_sub):
        nxt = replace_at(self.t, pos, new_sub)
        if apply_rule(nxt, rule, pos, self.lang) != self.t:
            raise AssertionError(f"reverse {rule.value} at {pos} is not sound")
        self.t = nxt
        self.steps.append(StepRecord(rule, pos, True, nxt))


def _to_right_comb(b: _Builder, p: tuple):
    q = p
    while subterm_at(b.t, q).tag == 4:  # SUM
        if subterm_at(b.t, q).left.tag == 4:
            b.forward(R.Asso_R, q)
        else:
            q = q + (1,)


def _swap(b: _Builder, p: tuple, k: int, n: int):
    """Swap leaves k and k+1 of the right comb of n leaves at p."""
    q = p + (1,) * k
    if k + 1 == n - 1:
        b.forward(R.Com, q)
    else:
        b.forward(R.Asso_L, q)
        b.forward(R.Com, q + (0,))
        b.forward(R.Asso_R, q)


def _bring_front(b: _Builder, p: tuple, order: list, idx: int, target: int, n: int):
    i = order.index(idx)
    for k in range(i - 1, target - 1, -1):
        _swap(b, p, k, n)
        order[k], order[k + 1] = order[k + 1], order[k]


def _pair_builder(t, lang, p, n, i, j, final):
    """Steps bringing leaf i (and j, unless None) to the front, then ``final``."""
    def build():
        b = _Builder(t, lang)
        _to_right_comb(b, p)
        order = list(range(n))
        _bring_front(b, p, order, i, 0, n)
        if j is not None:
            _bring_front(b, p, order, j, 1, n)
        final(b)
        return b.steps
    return build


def pair_moves(t: Term, lang: Language, *, forward=True, reverse=False, fragment=None,
               domain=ScalarDomain.RING) -> list:
    moves = []
    for p, u, in_sum in redex_positions(t, lang.cbv):
        if u.tag != 4 or in_sum:
            continue
        leaves = summands(u)
        n = len(leaves)
        if forward:
            for i, a in enumerate(leaves):
                if a.tag == ZERO_TAG:
                    rest = leaves[:i] + leaves[i + 1:]
                    res = replace_at(t, p, right_comb(rest))
                    fin = (lambda b, p=p: b.forward(R.S_zero_sum, p))
                    moves.append(Move((p, R.S_zero_sum.order, n), res, _pair_builder(t, lang, p, n, i, None, fin)))
                    break
            for rule in PAIR_FORWARD:
                if rule is R.S_zero_sum:
                    continue
                fn = FORWARD[rule]
                for i in range(n):
                    for j in range(n):
                        if i == j:
                            continue
                        if rule is not R.F_fact1 and j < i:
                            continue
                        c = fn(Sum(leaves[i], leaves[j]))
                        if c is None:
                            continue
                        moves.append(_combine_move(t, lang, p, leaves, i, j, c, rule, False))
        if reverse:
            for rule in PAIR_REVERSE:
                if rule not in lang.algebraic_rules:
                    continue
                for i in range(n):
                    for j in range(n):
                        if i == j:
                            continue
                        cs = REVERSE[rule](Sum(leaves[i], leaves[j]), None)
                        for c in cs:
                            mv = _combine_move(t, lang, p, leaves, i, j, c, rule, True)
                            if fragment is None or fragment.admits(mv.result):
                                moves.append(mv)
    return moves


def _combine_move(t, lang, p, leaves, i, j, c, rule, rev):
    n = len(leaves)
    rest = [leaves[k] for k in range(n) if k not in (i, j)]
    new_sum = c if not rest else Sum(c, right_comb(rest))
    res = replace_at(t, p, new_sum)
    at = p if n == 2 else p + (0,)

    def fin(b):
        if n > 2:
            b.forward(R.Asso_L, p)
        if rev:
            b.backward(rule, at, c)
        else:
            b.forward(rule, at)

    return Move((p, rule.order, n), res, _pair_builder(t, lang, p, n, i, j, fin))


def moves(t: Term, lang: Language, *, algebraic_only=False, fragment: Optional[Fragment] = None,
          reverse: Optional[bool] = None, only: Optional[frozenset] = None) -> list:
    """Non-AC one-step moves of ``t``, pair moves included, sorted and deduplicated modulo AC.

    ``only`` restricts the (non-AC) rules a move may use.
    """
    if reverse is None:
        reverse = lang.symmetric
    domain = fragment.scalar_domain if fragment is not None else ScalarDomain.RING
    out = [_single(r) for r in step_all(t, lang, algebraic_only=algebraic_only, fragment=fragment,
                                        reverse=reverse)
           if r.rule not in AC_RULES and (only is None or r.rule in only)]
    if only is None or only & set(PAIR_FORWARD + PAIR_REVERSE):
        pms = pair_moves(t, lang, reverse=reverse, fragment=fragment, domain=domain)
        out.extend(m for m in pms if only is None or m.sort_key[1] in {r.order for r in only})
    out.sort(key=lambda m: m.sort_key)
    seen = set()
    unique = []
    for m in out:
        k = kernels.ac_key(m.result)
        if k not in seen:
            seen.add(k)
            unique.append(m)
    return unique


def reduce(t: Term, lang: Language, strategy: Strategy = Strategy.LEFTMOST_OUTERMOST, fuel: int = 1000,
           *, algebraic_only: bool = False) -> ReductionTrace:
    """Reduce with the oriented rules of ``lang`` until no move applies.

    The move with the least position wins, ties going to rule declaration
    order. Bare Asso/Com steps are never chosen; they only occur inside pair
    moves. ``fuel`` bounds the number of moves.
    """
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    trace = ReductionTrace(t, [], [] if strategy is Strategy.EXHAUSTIVE else None)
    cur = t
    for _ in range(fuel):
        ms = moves(cur, lang, algebraic_only=algebraic_only, reverse=False)
        if not ms:
            return trace
        if trace.alternatives is not None:
            trace.alternatives.append(len(step_all(cur, lang, algebraic_only=algebraic_only)))
        steps = ms[0].steps()
        trace.steps.extend(steps)
        cur = steps[-1].result
        if trace.alternatives is not None:
            trace.alternatives.extend([1] * (len(steps) - 1))
    if moves(cur, lang, algebraic_only=algebraic_only, reverse=False):
        raise FuelExhausted(trace)
    return trace


def normalize(t: Term, lang: Language, fuel: int = 1000, algebraic_only: bool = False) -> Term:
    return reduce(t, lang, fuel=fuel, algebraic_only=algebraic_only).end


def search(src: Term, lang: Language, goal: Callable[[Term], bool], fuel: int = 500, *,
           algebraic_only: bool = False, fragment: Optional[Fragment] = None,
           reverse: Optional[bool] = None) -> Optional[ReductionTrace]:
    """Breadth-first search for a term satisfying ``goal``.

    States are identified modulo AC; ``fuel`` bounds the number of states
    expanded. Frontier order is deterministic.
    """
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    if fragment is not None and not fragment.admits(src):
        return None
    if goal(src):
        return ReductionTrace(src, [])
    parent = {kernels.ac_key(src): None}
    queue = deque([src])
    expanded = 0
    while queue and expanded < fuel:
        cur = queue.popleft()
        expanded += 1
        ck = kernels.ac_key(cur)
        for m in moves(cur, lang, algebraic_only=algebraic_only, fragment=fragment, reverse=reverse):
            k = kernels.ac_key(m.result)
            if k in parent:
                continue
            if fragment is not None and not fragment.admits(m.result):
                continue
            parent[k] = (ck, m)
            if goal(m.result):
                return _rebuild(src, parent, k)
            queue.append(m.result)
    return None


def _rebuild(src, parent, k) -> ReductionTrace:
    chain = []
    while parent[k] is not None:
        pk, m = parent[k]
        chain.append(m)
        k = pk
    steps = []
    for m in reversed(chain):
        steps.extend(m.steps())
    return ReductionTrace(src, steps)


def mismatch(cur: Term, goal: Term) -> int:
    """Estimated work left to turn ``cur`` into ``goal``, zero iff AC-equal.

    Summands are matched as multisets and leftovers paired greedily, so
    finishing any summand lowers the score; unmatched material costs its
    size.
    """
    if kernels.ac_key(cur) == kernels.ac_key(goal):
        return 0
    ct, gt = cur.tag, goal.tag
    if ct == SUM_TAG or gt == SUM_TAG:
        pending = {}
        for u in summands(goal):
            pending.setdefault(kernels.ac_key(u), []).append(u)
        left = []
        for u in summands(cur):
            bucket = pending.get(kernels.ac_key(u))
            if bucket:
                bucket.pop()
            else:
                left.append(u)
        right = [u for b in pending.values() for u in b]
        cost = 0
        for u in left:
            if not right:
                cost += kernels.size(u)
                continue
            scores = [mismatch(u, w) for w in right]
            best = min(range(len(right)), key=scores.__getitem__)
            cost += scores[best]
            right.pop(best)
        return cost + sum(kernels.size(w) for w in right)
    if ct == gt == SMUL_TAG:
        return mismatch(cur.body, goal.body) + (cur.coeff != goal.coeff)
    if ct == gt == APP_TAG:
        return mismatch(cur.fun, goal.fun) + mismatch(cur.arg, goal.arg)
    return kernels.size(cur) + kernels.size(goal)


# beta and the rules moving applications through sums and scalars: all the
# continuation-passing administrative reductions need
ADMINISTRATIVE = frozenset({R.BetaN, R.BetaV, R.A_app_sum, R.A_app_smul, R.A_app_zero, R.Al_sum, R.Al_smul,
                            R.Al_zero, R.Ar_sum, R.Ar_smul, R.Ar_zero})


def reduces_to(src: Term, dst: Term, lang: Language, fuel: int = 500, *, algebraic_only: bool = False,
               fragment: Optional[Fragment] = None, reverse: Optional[bool] = None,
               staged: bool = True) -> Optional[ReductionTrace]:
    """A trace from ``src`` to a term AC-equal to ``dst``, or None within ``fuel`` expansions.

    Best-first: states closer to ``dst`` (by ``mismatch``) are expanded
    first, ties in discovery order. With ``staged``, a first pass uses only
    the ``ADMINISTRATIVE`` rules, which keeps the sum and scalar rules from
    flooding the frontier with dead ends; the full language is searched
    only if that fails. Each pass gets ``fuel`` expansions.
    """
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    kw = dict(algebraic_only=algebraic_only, fragment=fragment, reverse=reverse)
    if staged and not algebraic_only:
        found = _best_first(src, dst, lang, fuel, only=ADMINISTRATIVE & lang.rules, **kw)
        if found is not None:
            return found
    return _best_first(src, dst, lang, fuel, **kw)


def _best_first(src, dst, lang, fuel, *, only=None, algebraic_only=False, fragment=None, reverse=None):
    if fragment is not None and not fragment.admits(src):
        return None
    target = kernels.ac_key(dst)
    sk = kernels.ac_key(src)
    if sk == target:
        return ReductionTrace(src, [])
    parent = {sk: None}
    heap = [(mismatch(src, dst), 0, src)]
    counter = 1
    expanded = 0
    while heap and expanded < fuel:
        _, _, cur = heapq.heappop(heap)
        expanded += 1
        ck = kernels.ac_key(cur)
        for m in moves(cur, lang, algebraic_only=algebraic_only, fragment=fragment, reverse=reverse, only=only):
            k = kernels.ac_key(m.result)
            if k in parent:
                continue
            if fragment is not None and not fragment.admits(m.result):
                continue
            parent[k] = (ck, m)
            if k == target:
                return _rebuild(src, parent, k)
            heapq.heappush(heap, (mismatch(m.result, dst), counter, m.result))
            counter += 1
    return None


def reachable(src: Term, lang: Language, depth: int, *, algebraic_only=False, fragment=None,
              reverse=None, limit: int = 20000) -> dict:
    """AC-classes reachable within ``depth`` moves: ``{ac_key: (term, parent_key, move)}``."""
    table = {kernels.ac_key(src): (src, None, None)}
    layer = [src]
    for _ in range(depth):
        nxt = []
        for cur in layer:
            ck = kernels.ac_key(cur)
            for m in moves(cur, lang, algebraic_only=algebraic_only, fragment=fragment, reverse=reverse):
                k = kernels.ac_key(m.result)
                if k not in table:
                    table[k] = (m.result, ck, m)
                    nxt.append(m.result)
            if len(table) > limit:
                return table
        if not nxt:
            break
        layer = nxt
    return table
