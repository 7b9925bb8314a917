"""Seeded random terms of an exact size.

Sums are biased towards repeating a summand (``M + M``, ``a.M + b.M``,
``a.M + M``) so that the factorisation rules actually get exercised.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence

from .scalars import ScalarDomain
from .terms import ZERO, App, Lam, Smul, Sum, Term, Var

DEFAULT_SCALARS = (Fraction(0), Fraction(1), Fraction(2), Fraction(-1), Fraction(1, 2))
FREE_NAMES = ("x", "y", "z")
BINDERS = ("x", "y", "u", "v")


class TermGenerator:
    def __init__(self, seed=0, *, scalars: Sequence = DEFAULT_SCALARS, free_names: Sequence = FREE_NAMES,
                 domain: ScalarDomain = ScalarDomain.RING, dup_bias: float = 0.3):
        self.rng = random.Random(seed)
        self.scalars = tuple(Fraction(s) for s in scalars if domain.admits(Fraction(s)))
        self.free_names = tuple(free_names)
        self.dup_bias = dup_bias

    def scalar(self) -> Fraction:
        return self.rng.choice(self.scalars)

    def _leaf(self, scope, closed) -> Term:
        pool = list(scope) + ([] if closed else list(self.free_names))
        if not pool or self.rng.random() < 0.15:
            return ZERO
        return Var(self.rng.choice(pool))

    def term(self, size: int, *, closed: bool = False, scope: tuple = ()) -> Term:
        """A term with exactly ``size`` nodes."""
        rng = self.rng
        if size <= 1:
            return self._leaf(scope, closed)
        if size == 2:
            kind = rng.choice(("lam", "smul"))
        else:
            kind = rng.choice(("lam", "smul", "app", "app", "sum", "sum"))
        if kind == "lam":
            b = rng.choice(BINDERS)
            return Lam(b, self.term(size - 1, closed=closed, scope=scope + (b,)))
        if kind == "smul":
            return Smul(self.scalar(), self.term(size - 1, closed=closed, scope=scope))
        if kind == "sum" and rng.random() < self.dup_bias:
            dup = self._duplicated_sum(size, closed, scope)
            if dup is not None:
                return dup
        left = rng.randint(1, size - 2)
        a = self.term(left, closed=closed, scope=scope)
        b = self.term(size - 1 - left, closed=closed, scope=scope)
        return App(a, b) if kind == "app" else Sum(a, b)

    def _duplicated_sum(self, size, closed, scope) -> Optional[Term]:
        rest = size - 1
        shapes = []
        if rest % 2 == 0:
            shapes.append("mm")
            if rest >= 4:
                shapes.append("amm_b")
        if (rest - 1) % 2 == 0 and rest >= 3:
            shapes.append("am_m")
        if not shapes:
            return None
        shape = self.rng.choice(shapes)
        if shape == "mm":
            m = self.term(rest // 2, closed=closed, scope=scope)
            return Sum(m, m)
        if shape == "amm_b":
            m = self.term(rest // 2 - 1, closed=closed, scope=scope)
            return Sum(Smul(self.scalar(), m), Smul(self.scalar(), m))
        m = self.term((rest - 1) // 2, closed=closed, scope=scope)
        return Sum(Smul(self.scalar(), m), m)

    def sized_term(self, max_size: int, **kw) -> Term:
        return self.term(self.rng.randint(1, max_size), **kw)

    def value(self, size: int, *, closed: bool = False, scope: tuple = ()) -> Term:
        """A value with exactly ``size`` nodes."""
        rng = self.rng
        if size <= 1:
            return self._leaf(scope, closed)
        kinds = ["lam", "smul"] + (["sum", "sum"] if size >= 3 else [])
        kind = rng.choice(kinds)
        if kind == "lam":
            b = rng.choice(BINDERS)
            return Lam(b, self.term(size - 1, closed=closed, scope=scope + (b,)))
        if kind == "smul":
            return Smul(self.scalar(), self.value(size - 1, closed=closed, scope=scope))
        left = rng.randint(1, size - 2)
        return Sum(self.value(left, closed=closed, scope=scope),
                   self.value(size - 1 - left, closed=closed, scope=scope))

    def base(self, size: int, *, closed: bool = False) -> Term:
        if size <= 1 and not closed:
            return Var(self.rng.choice(self.free_names))
        b = self.rng.choice(BINDERS)
        return Lam(b, self.term(max(size - 1, 1), closed=closed, scope=(b,)))


def random_terms(count: int, max_size: int, seed: int = 0, **kw) -> list:
    gen = TermGenerator(seed)
    return [gen.sized_term(max_size, **kw) for _ in range(count)]
