"""Compiled vs pure-Python kernels on random terms.

    python3 benchmarks/bench_kernels.py [--count N] [--size S] [--repeat R]
"""

import argparse
import importlib
import sys
import timeit

from alglam import _kernels_py
from alglam.random_terms import TermGenerator


def fresh_copies(terms):
    # drop the cached keys so every run does the full work
    for t in terms:
        stack = [t]
        while stack:
            u = stack.pop()
            u._key = None
            u._ackey = None
            stack.extend(u.children())
            if hasattr(u, "body") and u.tag == 2:
                stack.append(u.body)


def bench(mod, terms, repeat):
    out = {}
    for name in ("nameless_key", "ac_key", "measure", "size"):
        fn = getattr(mod, name)

        def run():
            fresh_copies(terms)
            for t in terms:
                fn(t)

        out[name] = min(timeit.repeat(run, number=1, repeat=repeat))
    return out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=2000)
    p.add_argument("--size", type=int, default=40)
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args(argv)
    gen = TermGenerator(a.seed)
    terms = [gen.term(a.size) for _ in range(a.count)]
    try:
        compiled = importlib.import_module("alglam._kernels")
    except ImportError:
        print("compiled kernels not built; only the pure-Python timings are shown", file=sys.stderr)
        compiled = None
    py = bench(_kernels_py, terms, a.repeat)
    cy = bench(compiled, terms, a.repeat) if compiled else {}
    # reference timing: the cache reset alone
    base = min(timeit.repeat(lambda: fresh_copies(terms), number=1, repeat=a.repeat))
    print(f"{a.count} terms of size {a.size}, best of {a.repeat} (cache reset {base * 1e3:.1f} ms subtracted)")
    print(f"{'kernel':<14}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, tp in py.items():
        tp -= base
        if name in cy:
            tc = cy[name] - base
            print(f"{name:<14}{tp * 1e3:>12.1f}{tc * 1e3:>12.1f}{tp / max(tc, 1e-9):>9.1f}x")
        else:
            print(f"{name:<14}{tp * 1e3:>12.1f}{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()
