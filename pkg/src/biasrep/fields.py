"""Exact coefficient fields: the rationals and prime fields GF(p).

Elements are plain Python values (``Fraction`` for Q, ``int`` in ``range(p)``
for GF(p)) so that they hash, compare and print without wrapper classes.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import InputError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class Field:
    """Common interface. Subclasses define the arithmetic."""

    name: str
    characteristic: int

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def is_finite(self) -> bool:
        return self.characteristic != 0

    def __repr__(self) -> str:
        return f"Field({self.name!r})"

    def __str__(self) -> str:
        return self.name

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self) -> int:
        return hash(self.name)


class Rationals(Field):
    name = "Q"
    characteristic = 0

    def coerce(self, x) -> Fraction:
        return x if isinstance(x, Fraction) else Fraction(x)

    def parse(self, s) -> Fraction:
        if isinstance(s, (int, Fraction)):
            return Fraction(s)
        try:
            return Fraction(str(s).strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse {s!r} as a rational") from exc

    def format(self, x) -> str:
        return str(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return 1 / a

    def div(self, a, b):
        return a * self.inv(b)

    def elements(self):
        raise ValueError("Q is infinite")


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise InputError(f"GF({p}): {p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def coerce(self, x) -> int:
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def parse(self, s) -> int:
        if isinstance(s, int):
            return s % self.p
        try:
            return self.coerce(Fraction(str(s).strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse {s!r} as an element of {self.name}") from exc

    def format(self, x) -> str:
        return str(x)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def elements(self):
        return list(range(self.p))


Q = Rationals()

_GF_RE = re.compile(r"^\s*(?:GF|F)\(?\s*(\d+)\s*\)?\s*$", re.IGNORECASE)


def parse_field(spec) -> Field:
    """Parse ``"Q"`` or ``"GF(p)"``; a Field instance passes through."""
    if isinstance(spec, Field):
        return spec
    s = str(spec).strip()
    if s.upper() in ("Q", "QQ"):
        return Q
    m = _GF_RE.match(s)
    if not m:
        raise InputError(f"unknown field {spec!r}; expected Q or GF(p)")
    return PrimeField(int(m.group(1)))
