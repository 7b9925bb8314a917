# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels. Must agree exactly with ``_kernels_py``."""

IMPLEMENTATION = "cython"

DEF ZERO_TAG = 0
DEF VAR_TAG = 1
DEF LAM_TAG = 2
DEF APP_TAG = 3
DEF SUM_TAG = 4
DEF SMUL_TAG = 5

cdef tuple _ZERO_KEY = (0,)


cdef object _nk(object t, list env):
    cdef int tag = t.tag
    cdef Py_ssize_t i, n
    if tag == VAR_TAG:
        name = t.name
        n = len(env)
        for i in range(n - 1, -1, -1):
            if env[i] == name:
                return (2, n - 1 - i)
        return (1, name)
    if tag == ZERO_TAG:
        return _ZERO_KEY
    if tag == LAM_TAG:
        env.append(t.binder)
        body = _nk(t.body, env)
        env.pop()
        return (3, body)
    if tag == APP_TAG:
        return (4, _nk(t.fun, env), _nk(t.arg, env))
    if tag == SUM_TAG:
        return (5, _nk(t.left, env), _nk(t.right, env))
    return (6, _nk(t.body, env), t.coeff)


def nameless_key(t):
    return _nk(t, [])


cdef void _collect_summands(object t, list out):
    while t.tag == SUM_TAG:
        _collect_summands(t.left, out)
        t = t.right
    out.append(_ac(t))


cdef object _ac(object t):
    cached = t._ackey
    if cached is not None:
        return cached
    cdef int tag = t.tag
    cdef list out
    if tag == VAR_TAG:
        k = (1, t.name)
    elif tag == ZERO_TAG:
        k = _ZERO_KEY
    elif tag == LAM_TAG:
        k = t.key
    elif tag == APP_TAG:
        k = (4, _ac(t.fun), _ac(t.arg))
    elif tag == SUM_TAG:
        out = []
        _collect_summands(t, out)
        out.sort()
        k = (7, tuple(out))
    else:
        k = (6, _ac(t.body), t.coeff)
    t._ackey = k
    return k


def ac_key(t):
    return _ac(t)


cdef object _measure(object t):
    cdef int tag = t.tag
    if tag == VAR_TAG or tag == LAM_TAG:
        return 1
    if tag == ZERO_TAG:
        return 0
    if tag == APP_TAG:
        return (3 * _measure(t.fun) + 2) * (3 * _measure(t.arg) + 2)
    if tag == SUM_TAG:
        return 2 + _measure(t.left) + _measure(t.right)
    return 1 + 2 * _measure(t.body)


def measure(t):
    return _measure(t)


def size(t):
    cdef Py_ssize_t n = 0
    cdef int tag
    cdef list stack = [t]
    while stack:
        u = stack.pop()
        n += 1
        tag = u.tag
        if tag == LAM_TAG or tag == SMUL_TAG:
            stack.append(u.body)
        elif tag == APP_TAG:
            stack.append(u.fun)
            stack.append(u.arg)
        elif tag == SUM_TAG:
            stack.append(u.left)
            stack.append(u.right)
    return n
