"""Coefficient rings for exact linear algebra.

Three rings are supported: the integers, the rationals and prime fields.
Scalars are plain Python objects (``int`` for Z and GF(p), ``int`` or
``Fraction`` for Q), so all arithmetic is exact; there is no floating
point anywhere in this module.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from .errors import DomainError, ValidationError


@dataclass(frozen=True)
class Ring:
    """An exact coefficient ring: Z, Q or GF(p)."""

    kind: str  # "Z" | "Q" | "GF"
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "GF"):
            raise ValidationError(f"ring kind must be Z, Q or GF, got {self.kind!r}")
        if self.kind == "GF":
            if self.p is None or self.p < 2 or not gmpy2.is_prime(self.p):
                raise ValidationError(f"GF modulus must be prime, got {self.p!r}")
        elif self.p is not None:
            raise ValidationError(f"ring {self.kind} takes no modulus")

    # -- predicates ---------------------------------------------------

    @property
    def is_field(self) -> bool:
        return self.kind in ("Q", "GF")

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "GF" else 0

    # -- scalar arithmetic --------------------------------------------

    def coerce(self, x):
        """Bring ``x`` (int, Fraction, or scalar of this ring) into the ring."""
        if self.kind == "Z":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise DomainError(f"{x} is not an integer")
                return int(x)
            return int(x)
        if self.kind == "Q":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DomainError(
                    f"{x} has denominator divisible by {self.p}; "
                    f"cannot reduce into GF({self.p})")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    @property
    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def add(self, a, b):
        return (a + b) % self.p if self.kind == "GF" else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.kind == "GF" else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.kind == "GF" else a * b

    def neg(self, a):
        return (-a) % self.p if self.kind == "GF" else -a

    def is_zero(self, a) -> bool:
        return a == 0

    def inv(self, a):
        """Multiplicative inverse; DomainError for non-units."""
        if self.is_zero(a):
            raise DomainError("division by zero")
        if self.kind == "Q":
            return 1 / Fraction(a)
        if self.kind == "GF":
            return pow(a % self.p, self.p - 2, self.p)
        if a in (1, -1):
            return a
        raise DomainError(f"{a} is not a unit in Z")

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def __str__(self):
        return f"F{self.p}" if self.kind == "GF" else self.kind


ZZ = Ring("Z")
QQ = Ring("Q")


def GF(p: int) -> Ring:
    return Ring("GF", p)


def parse_ring(text: str) -> Ring:
    """Parse a ring name as used on the command line: ``Z``, ``Q``, ``F5``, ``GF(5)``."""
    t = text.strip()
    if t == "Z":
        return ZZ
    if t == "Q":
        return QQ
    if t.startswith("F") and t[1:].isdigit():
        return GF(int(t[1:]))
    if t.startswith("GF(") and t.endswith(")") and t[3:-1].isdigit():
        return GF(int(t[3:-1]))
    raise ValidationError(f"unrecognized ring {text!r} (expected Z, Q, Fp or GF(p))")
