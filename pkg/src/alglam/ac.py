"""AC-canonical forms, AC-equality, the termination measure, AC-length."""

from __future__ import annotations

import enum
from fractions import Fraction

from . import kernels
from .terms import APP_TAG, SMUL_TAG, SUM_TAG, ZERO, ZERO_TAG, App, Smul, Sum, Term


class Level(enum.Enum):
    AC_ONLY = "ac"
    AC_PLUS_ALGEBRAIC = "algebraic"


class NonAlgebraicStep(ValueError):
    pass


def summands(t: Term) -> list:
    """Leaves of the maximal sum rooted at ``t``, left to right."""
    out = []
    stack = [t]
    while stack:
        u = stack.pop()
        if u.tag == SUM_TAG:
            stack.append(u.right)
            stack.append(u.left)
        else:
            out.append(u)
    return out


def right_comb(parts) -> Term:
    if not parts:
        return ZERO
    result = parts[-1]
    for p in reversed(parts[:-1]):
        result = Sum(p, result)
    return result


def _ac_only(t: Term) -> Term:
    tag = t.tag
    if tag == APP_TAG:
        return App(_ac_only(t.fun), _ac_only(t.arg))
    if tag == SMUL_TAG:
        return Smul(t.coeff, _ac_only(t.body))
    if tag == SUM_TAG:
        parts = sorted((_ac_only(u) for u in summands(t)), key=kernels.ac_key)
        return right_comb(parts)
    return t


def _linear(t: Term, coeff: Fraction, acc: dict):
    """Accumulate ``coeff.t`` as a combination of atoms into ``acc``."""
    tag = t.tag
    if tag == ZERO_TAG or coeff == 0:
        return
    if tag == SUM_TAG:
        for u in summands(t):
            _linear(u, coeff, acc)
        return
    if tag == SMUL_TAG:
        _linear(t.body, coeff * t.coeff, acc)
        return
    if tag == APP_TAG:
        t = App(_algebraic(t.fun), _ac_only(t.arg))
    k = kernels.ac_key(t)
    if k in acc:
        atom, c = acc[k]
        acc[k] = (atom, c + coeff)
    else:
        acc[k] = (t, coeff)


def _algebraic(t: Term) -> Term:
    acc: dict = {}
    _linear(t, Fraction(1), acc)
    parts = [atom if c == 1 else Smul(c, atom) for atom, c in acc.values() if c != 0]
    parts.sort(key=kernels.ac_key)
    return right_comb(parts)


def ac_canonical(t: Term, level: Level = Level.AC_ONLY) -> Term:
    """Canonical representative of ``t``'s class.

    ``AC_ONLY`` flattens and sorts sums at every position outside an
    abstraction. ``AC_PLUS_ALGEBRAIC`` returns the normal form of the
    Asso/Com/F/S rules under the function-position and sum/scalar contexts,
    i.e. a sum of pairwise distinct atoms with merged nonzero coefficients.
    """
    if level is Level.AC_PLUS_ALGEBRAIC:
        return _algebraic(t)
    return _ac_only(t)


def ac_equal(a: Term, b: Term) -> bool:
    return kernels.ac_key(a) == kernels.ac_key(b)


def ac_measure(t: Term) -> int:
    return kernels.measure(t)


def ac_length(trace) -> int:
    from .rules import AC_RULES

    n = 0
    for step in trace.steps:
        if step.rule.is_beta:
            raise NonAlgebraicStep(f"beta step {step.rule.value} at {step.position}")
        if step.rule not in AC_RULES:
            n += 1
    return n
