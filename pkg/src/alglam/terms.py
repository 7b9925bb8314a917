"""Terms of the algebraic lambda-calculi.

Terms are immutable. ``==`` and ``hash`` are alpha-equivalence: they go
through a nameless key (de Bruijn indices for bound variables, names for
free ones), so terms can be used directly in sets and dicts.
"""

from __future__ import annotations

from typing import Iterator

from .scalars import ScalarDomain, scalar

ZERO_TAG, VAR_TAG, LAM_TAG, APP_TAG, SUM_TAG, SMUL_TAG = range(6)


class Term:
    __slots__ = ("_key", "_ackey", "_fv")
    tag = -1

    def __init__(self):
        self._key = None
        self._ackey = None
        self._fv = None

    @property
    def key(self):
        if self._key is None:
            self._key = kernels.nameless_key(self)
        return self._key

    @property
    def free_vars(self) -> frozenset:
        if self._fv is None:
            self._fv = _free_vars(self)
        return self._fv

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Term):
            return NotImplemented
        return self.key == other.key

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash(self.key)

    def __str__(self):
        from .syntax import pretty

        return pretty(self)

    def __repr__(self):
        return f"<{type(self).__name__} {self}>"

    def children(self) -> tuple:
        return ()


class Zero(Term):
    __slots__ = ()
    tag = ZERO_TAG


class Var(Term):
    __slots__ = ("name",)
    tag = VAR_TAG

    def __init__(self, name: str):
        super().__init__()
        self.name = name


class Lam(Term):
    __slots__ = ("binder", "body")
    tag = LAM_TAG

    def __init__(self, binder: str, body: Term):
        super().__init__()
        self.binder = binder
        self.body = body


class App(Term):
    __slots__ = ("fun", "arg")
    tag = APP_TAG

    def __init__(self, fun: Term, arg: Term):
        super().__init__()
        self.fun = fun
        self.arg = arg

    def children(self):
        return (self.fun, self.arg)


class Sum(Term):
    __slots__ = ("left", "right")
    tag = SUM_TAG

    def __init__(self, left: Term, right: Term):
        super().__init__()
        self.left = left
        self.right = right

    def children(self):
        return (self.left, self.right)


class Smul(Term):
    __slots__ = ("coeff", "body")
    tag = SMUL_TAG

    def __init__(self, coeff, body: Term, domain: ScalarDomain = ScalarDomain.RING):
        super().__init__()
        self.coeff = scalar(coeff, domain)
        self.body = body

    def children(self):
        return (self.body,)


from . import kernels  # noqa: E402  (kernels need the tag constants above)

ZERO = Zero()


def var(name: str) -> Var:
    return Var(name)


def lam(binder: str, body: Term) -> Lam:
    return Lam(binder, body)


def app(fun: Term, *args: Term) -> Term:
    for a in args:
        fun = App(fun, a)
    return fun


def add(*terms: Term) -> Term:
    """Right-nested sum; ``add()`` is 0."""
    if not terms:
        return ZERO
    result = terms[-1]
    for t in reversed(terms[:-1]):
        result = Sum(t, result)
    return result


def smul(coeff, body: Term) -> Smul:
    return Smul(coeff, body)


def minus(m: Term, n: Term) -> Sum:
    """``m - n``, i.e. ``m + (-1).n``."""
    return Sum(m, Smul(-1, n))


IDENTITY = Lam("x", Var("x"))


# -- predicates ---------------------------------------------------------------

def is_base(t: Term) -> bool:
    return t.tag == VAR_TAG or t.tag == LAM_TAG


def is_value(t: Term) -> bool:
    tag = t.tag
    if tag in (ZERO_TAG, VAR_TAG, LAM_TAG):
        return True
    if tag == SMUL_TAG:
        return is_value(t.body)
    if tag == SUM_TAG:
        return is_value(t.left) and is_value(t.right)
    return False


def is_closed(t: Term) -> bool:
    return not t.free_vars


def alpha_equal(a: Term, b: Term) -> bool:
    return a.key == b.key


def size(t: Term) -> int:
    return kernels.size(t)


def _free_vars(t: Term) -> frozenset:
    tag = t.tag
    if tag == VAR_TAG:
        return frozenset((t.name,))
    if tag == ZERO_TAG:
        return frozenset()
    if tag == LAM_TAG:
        return t.body.free_vars - {t.binder}
    if tag == SMUL_TAG:
        return t.body.free_vars
    a, b = t.children()
    return a.free_vars | b.free_vars


def all_names(t: Term) -> set:
    """Every variable name occurring in ``t``, free or bound."""
    names = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if u.tag == VAR_TAG:
            names.add(u.name)
        elif u.tag == LAM_TAG:
            names.add(u.binder)
            stack.append(u.body)
        else:
            stack.extend(u.children())
    return names


def scalars_of(t: Term) -> list:
    out = []
    stack = [t]
    while stack:
        u = stack.pop()
        if u.tag == SMUL_TAG:
            out.append(u.coeff)
        if u.tag == LAM_TAG:
            stack.append(u.body)
        else:
            stack.extend(u.children())
    return out


def fresh_name(base: str, avoid) -> str:
    """First of ``base``, ``base0``, ``base1``... not in ``avoid``.

    Deterministic and free of global state, so concurrent callers can't
    race and repeated runs print identical terms.
    """
    if base not in avoid:
        return base
    stem = base.rstrip("0123456789") or base
    i = 0
    while f"{stem}{i}" in avoid:
        i += 1
    return f"{stem}{i}"


# -- substitution -------------------------------------------------------------

def substitute(body: Term, x: str, arg: Term) -> Term:
    """Capture-avoiding ``body[x := arg]``."""
    if x not in body.free_vars:
        return body
    return _subst(body, x, arg, arg.free_vars)


def _subst(t: Term, x: str, arg: Term, arg_fv: frozenset) -> Term:
    if x not in t.free_vars:
        return t
    tag = t.tag
    if tag == VAR_TAG:
        return arg
    if tag == LAM_TAG:
        y, b = t.binder, t.body
        if y in arg_fv:
            z = fresh_name(y, arg_fv | b.free_vars | {x})
            b = _subst(b, y, Var(z), frozenset((z,)))
            y = z
        return Lam(y, _subst(b, x, arg, arg_fv))
    if tag == APP_TAG:
        return App(_subst(t.fun, x, arg, arg_fv), _subst(t.arg, x, arg, arg_fv))
    if tag == SUM_TAG:
        return Sum(_subst(t.left, x, arg, arg_fv), _subst(t.right, x, arg, arg_fv))
    return Smul(t.coeff, _subst(t.body, x, arg, arg_fv))


def rename_apart(t: Term, avoid=frozenset()) -> Term:
    """Alpha-rename binders so they are pairwise distinct and clash with no free name."""
    used = set(all_names(t)) | set(avoid)

    def go(u: Term, env: dict) -> Term:
        tag = u.tag
        if tag == VAR_TAG:
            return Var(env.get(u.name, u.name))
        if tag == ZERO_TAG:
            return u
        if tag == LAM_TAG:
            z = fresh_name(u.binder, used) if u.binder in used_binders else u.binder
            used_binders.add(z)
            used.add(z)
            return Lam(z, go(u.body, {**env, u.binder: z}))
        if tag == APP_TAG:
            return App(go(u.fun, env), go(u.arg, env))
        if tag == SUM_TAG:
            return Sum(go(u.left, env), go(u.right, env))
        return Smul(u.coeff, go(u.body, env))

    used_binders = set(t.free_vars) | set(avoid)
    return go(t, {})


# -- positions ----------------------------------------------------------------

def subterm_at(t: Term, position) -> Term:
    for i in position:
        if t.tag == LAM_TAG or t.tag == SMUL_TAG:
            if i != 0:
                raise IndexError(f"invalid position {tuple(position)}")
            t = t.body
        else:
            kids = t.children()
            if i >= len(kids):
                raise IndexError(f"invalid position {tuple(position)}")
            t = kids[i]
    return t


def replace_at(t: Term, position, new: Term) -> Term:
    if not position:
        return new
    i, rest = position[0], position[1:]
    tag = t.tag
    if tag == APP_TAG:
        return App(replace_at(t.fun, rest, new), t.arg) if i == 0 else App(t.fun, replace_at(t.arg, rest, new))
    if tag == SUM_TAG:
        return Sum(replace_at(t.left, rest, new), t.right) if i == 0 else Sum(t.left, replace_at(t.right, rest, new))
    if tag == SMUL_TAG and i == 0:
        return Smul(t.coeff, replace_at(t.body, rest, new))
    if tag == LAM_TAG and i == 0:
        return Lam(t.binder, replace_at(t.body, rest, new))
    raise IndexError(f"invalid position {tuple(position)}")


def subterms(t: Term, under_lambda: bool = False) -> Iterator[tuple]:
    """Yield ``(position, subterm)`` pairs, pre-order."""
    stack = [((), t)]
    while stack:
        pos, u = stack.pop()
        yield pos, u
        if u.tag == LAM_TAG:
            if under_lambda:
                stack.append((pos + (0,), u.body))
            continue
        kids = u.children()
        for i in range(len(kids) - 1, -1, -1):
            stack.append((pos + (i,), kids[i]))

