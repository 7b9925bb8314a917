"""Pure-Python hot kernels; ``_kernels.pyx`` is the compiled twin.

Keys are nested tuples. Tag layout (first element)::

    0 zero   1 free var   2 bound var (de Bruijn index)   3 lambda
    4 app    5 binary sum (under a lambda)   6 smul (body, coeff)
    7 flattened sorted sum (outside lambdas, AC keys only)
"""

ZERO_TAG, VAR_TAG, LAM_TAG, APP_TAG, SUM_TAG, SMUL_TAG = range(6)

IMPLEMENTATION = "python"


def _nk(t, env):
    tag = t.tag
    if tag == VAR_TAG:
        name = t.name
        for i in range(len(env) - 1, -1, -1):
            if env[i] == name:
                return (2, len(env) - 1 - i)
        return (1, name)
    if tag == ZERO_TAG:
        return (0,)
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


def _collect_summands(t, out):
    while t.tag == SUM_TAG:
        _collect_summands(t.left, out)
        t = t.right
    out.append(ac_key(t))


def ac_key(t):
    """Key identifying ``t`` up to alpha and to A/C of ``+`` outside abstractions."""
    cached = t._ackey
    if cached is not None:
        return cached
    tag = t.tag
    if tag == VAR_TAG:
        k = (1, t.name)
    elif tag == ZERO_TAG:
        k = (0,)
    elif tag == LAM_TAG:
        k = t.key
    elif tag == APP_TAG:
        k = (4, ac_key(t.fun), ac_key(t.arg))
    elif tag == SUM_TAG:
        out = []
        _collect_summands(t, out)
        out.sort()
        k = (7, tuple(out))
    else:
        k = (6, ac_key(t.body), t.coeff)
    t._ackey = k
    return k


def measure(t):
    tag = t.tag
    if tag == VAR_TAG or tag == LAM_TAG:
        return 1
    if tag == ZERO_TAG:
        return 0
    if tag == APP_TAG:
        return (3 * measure(t.fun) + 2) * (3 * measure(t.arg) + 2)
    if tag == SUM_TAG:
        return 2 + measure(t.left) + measure(t.right)
    return 1 + 2 * measure(t.body)


def size(t):
    n = 0
    stack = [t]
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
