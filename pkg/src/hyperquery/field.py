"""Prime fields Z_p and the exact-rational mode used when p = infinity."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from sympy import isprime, nextprime

Element = Union[int, Fraction]


@dataclass(frozen=True)
class FieldSpec:
    """Arithmetic context: ``modulus`` is a prime, or ``None`` for exact rationals."""

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None and not isprime(self.modulus):
            raise ValueError(f"modulus {self.modulus} is not prime")

    @property
    def is_finite(self) -> bool:
        return self.modulus is not None

    def reduce(self, a) -> Element:
        if self.modulus is None:
            a = Fraction(a)
            return int(a) if a.denominator == 1 else a
        if isinstance(a, Fraction):
            return a.numerator * pow(a.denominator, -1, self.modulus) % self.modulus
        return int(a) % self.modulus

    def neg(self, a) -> Element:
        return self.reduce(-a)

    def inv(self, a) -> Element:
        return field_inv(a, self)

    def check_rank(self, d: int) -> None:
        """Raise unless ``p > d!`` (always true in exact mode)."""
        if self.modulus is not None and self.modulus <= math.factorial(d):
            raise ValueError(f"p={self.modulus} must exceed {d}! = {math.factorial(d)}")

    def to_json(self):
        return "inf" if self.modulus is None else self.modulus

    @classmethod
    def from_json(cls, value) -> FieldSpec:
        if value in ("inf", None):
            return INFINITY
        return cls(int(value))

    def __str__(self):
        return "Z_inf" if self.modulus is None else f"Z_{self.modulus}"


INFINITY = FieldSpec(None)


def select_prime(m: int, d: int) -> FieldSpec:
    """Smallest prime strictly above ``max(m, d!)``."""
    if m < 1 or d < 1:
        raise ValueError("m and d must be positive")
    return FieldSpec(int(nextprime(max(m, math.factorial(d)))))


def field_inv(a, field: FieldSpec) -> Element:
    if a == 0 or field.reduce(a) == 0:
        raise ValueError("zero has no inverse")
    if field.modulus is None:
        return Fraction(1) / Fraction(a)
    return pow(field.reduce(a), -1, field.modulus)
