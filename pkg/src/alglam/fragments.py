"""Term fragments: a term predicate plus a scalar domain."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .scalars import ScalarDomain
from .terms import Term, scalars_of, size


@dataclass(frozen=True)
class Fragment:
    name: str
    term_ok: Callable[[Term], bool] = field(compare=False)
    scalar_domain: ScalarDomain = ScalarDomain.RING
    # whether the predicate is meant to be closed under oriented reduction
    reduction_closed: bool = True

    def admits(self, t: Term) -> bool:
        if self.scalar_domain is ScalarDomain.NONNEG and any(c < 0 for c in scalars_of(t)):
            return False
        return self.term_ok(t)


def _anything(t: Term) -> bool:
    return True


UNRESTRICTED = Fragment("unrestricted", _anything, ScalarDomain.RING)
NONNEG = Fragment("nonneg", _anything, ScalarDomain.NONNEG)


def size_bounded(n: int, domain: ScalarDomain = ScalarDomain.RING) -> Fragment:
    """Search-control fragment. Not closed under beta, which can grow terms."""
    return Fragment(f"size<={n}", lambda t: size(t) <= n, domain, reduction_closed=False)


FRAGMENTS = {"none": UNRESTRICTED, "unrestricted": UNRESTRICTED, "nonneg": NONNEG}


def fragment_by_name(name: str) -> Fragment:
    if name.startswith("size<="):
        return size_bounded(int(name[len("size<="):]))
    try:
        return FRAGMENTS[name]
    except KeyError:
        raise ValueError(f"unknown fragment {name!r}; expected one of {sorted(FRAGMENTS)} or size<=N") from None
