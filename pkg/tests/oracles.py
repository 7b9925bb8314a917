"""Independent reference implementations used to cross-check the package.

None of these share code with alglam beyond the term classes: they use a
locally-nameless encoding of their own, plain recursion and Counters.
"""

from collections import Counter
from fractions import Fraction

from alglam.terms import App, Lam, Smul, Sum, Var, Zero


def locally_nameless(t, env=()):
    """Bound variables become ('b', i); free ones stay ('f', name)."""
    if isinstance(t, Var):
        for i, name in enumerate(reversed(env)):
            if name == t.name:
                return ("b", i)
        return ("f", t.name)
    if isinstance(t, Zero):
        return ("0",)
    if isinstance(t, Lam):
        return ("lam", locally_nameless(t.body, env + (t.binder,)))
    if isinstance(t, App):
        return ("app", locally_nameless(t.fun, env), locally_nameless(t.arg, env))
    if isinstance(t, Sum):
        return ("+", locally_nameless(t.left, env), locally_nameless(t.right, env))
    if isinstance(t, Smul):
        return ("*", Fraction(t.coeff), locally_nameless(t.body, env))
    raise TypeError(t)


def ln_substitute(ln, x, u):
    """Replace free name x by the locally closed u. No shifting is needed."""
    tag = ln[0]
    if tag == "f":
        return u if ln[1] == x else ln
    if tag in ("b", "0"):
        return ln
    if tag == "lam":
        return ("lam", ln_substitute(ln[1], x, u))
    if tag == "*":
        return ("*", ln[1], ln_substitute(ln[2], x, u))
    return (tag, ln_substitute(ln[1], x, u), ln_substitute(ln[2], x, u))


def substitution_oracle(body, x, arg):
    return ln_substitute(locally_nameless(body), x, locally_nameless(arg))


def measure_oracle(t):
    if isinstance(t, (Var, Lam)):
        return 1
    if isinstance(t, Zero):
        return 0
    if isinstance(t, App):
        a, b = measure_oracle(t.fun), measure_oracle(t.arg)
        return 9 * a * b + 6 * a + 6 * b + 4
    if isinstance(t, Smul):
        return 2 * measure_oracle(t.body) + 1
    return measure_oracle(t.left) + measure_oracle(t.right) + 2


def _freeze(c):
    return tuple(sorted(c.items(), key=repr))


def ac_class(t, env=()):
    """Summands as a Counter of classes, outside abstractions."""
    if isinstance(t, Sum):
        return ("+", _freeze(_flat(t, env)))
    if isinstance(t, Smul):
        return ("*", t.coeff, ac_class(t.body, env))
    if isinstance(t, App):
        return ("app", ac_class(t.fun, env), ac_class(t.arg, env))
    return ("atom", locally_nameless(t, env))


def _flat(t, env):
    if isinstance(t, Sum):
        return _flat(t.left, env) + _flat(t.right, env)
    return Counter([ac_class(t, env)])


def ac_equal_oracle(a, b):
    return ac_class(a) == ac_class(b)


def linear_oracle(t):
    """Coefficient map of t read as a formal combination of atoms (0 entries dropped)."""
    out = Counter()

    def go(u, c):
        if isinstance(u, Zero) or c == 0:
            return
        if isinstance(u, Sum):
            go(u.left, c)
            go(u.right, c)
        elif isinstance(u, Smul):
            go(u.body, c * u.coeff)
        else:
            key = ("app", _lin_norm(u.fun), ac_class(u.arg)) if isinstance(u, App) else ac_class(u)
            out[key] += c

    go(t, Fraction(1))
    return {k: v for k, v in out.items() if v != 0}


def _lin_norm(t):
    m = linear_oracle(t)
    return ("lin", tuple(sorted(m.items(), key=repr)))


def linear_equal_oracle(a, b):
    return linear_oracle(a) == linear_oracle(b)
