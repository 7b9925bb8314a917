"""Exact scalars and the scalar domains terms may draw from."""

from __future__ import annotations

import enum
from fractions import Fraction


class ScalarDomainError(ValueError):
    pass


class ScalarDomain(enum.Enum):
    RING = "ring"
    NONNEG = "nonneg"

    def admits(self, value: Fraction) -> bool:
        return self is ScalarDomain.RING or value >= 0

    def check(self, value: Fraction) -> Fraction:
        if not self.admits(value):
            raise ScalarDomainError(f"scalar {format_scalar(value)} is outside the {self.value} domain")
        return value


ZERO = Fraction(0)
ONE = Fraction(1)
TWO = Fraction(2)


def scalar(value, domain: ScalarDomain = ScalarDomain.RING) -> Fraction:
    """Coerce ``value`` to an exact rational, rejecting floats."""
    if isinstance(value, float):
        raise TypeError("scalars are exact; pass a Fraction, int or 'p/q' string")
    return domain.check(Fraction(value))


def format_scalar(value: Fraction) -> str:
    text = str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    return f"({text})" if value < 0 else text
