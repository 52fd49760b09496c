"""Exact coefficient rings: integers, rationals, and integers mod n.

Elements are plain Python values kept in canonical form: ``int`` for the
integers, ``fractions.Fraction`` (lowest terms, positive denominator) for the
rationals, and residues in ``[0, n)`` for the integers mod n.  Ring objects
are immutable and compare by kind (and modulus).
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from .errors import NotInvertible

Elem = Union[int, Fraction]


class Ring:
    """Common interface of the three supported coefficient rings."""

    kind: str = ""

    @property
    def zero(self) -> Elem:
        raise NotImplementedError

    @property
    def one(self) -> Elem:
        raise NotImplementedError

    def of(self, value) -> Elem:
        """Coerce ``value`` (int, Fraction, or decimal / p-over-q string) to canonical form."""
        raise NotImplementedError

    def add(self, a: Elem, b: Elem) -> Elem:
        raise NotImplementedError

    def sub(self, a: Elem, b: Elem) -> Elem:
        raise NotImplementedError

    def mul(self, a: Elem, b: Elem) -> Elem:
        raise NotImplementedError

    def neg(self, a: Elem) -> Elem:
        raise NotImplementedError

    def is_unit(self, a: Elem) -> bool:
        raise NotImplementedError

    def inv(self, a: Elem) -> Elem:
        raise NotImplementedError

    def is_zero(self, a: Elem) -> bool:
        return a == self.zero

    def is_one(self, a: Elem) -> bool:
        return a == self.one

    def parse(self, text: str) -> Elem:
        return self.of(text)

    def show(self, a: Elem) -> str:
        return str(a)

    def sum(self, values) -> Elem:
        total = self.zero
        for v in values:
            total = self.add(total, v)
        return total

    def dot(self, u, v) -> Elem:
        if len(u) != len(v):
            raise ValueError("dot: length mismatch")
        total = self.zero
        for a, b in zip(u, v):
            if a != 0 and b != 0:
                total = self.add(total, self.mul(a, b))
        return total

    def describe(self) -> dict:
        """JSON-ready descriptor, inverse of :func:`ring_from_descriptor`."""
        return {"kind": self.kind}

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return self.kind


class IntegerRing(Ring):
    kind = "integers"

    zero = 0
    one = 1

    def of(self, value) -> int:
        if type(value) is int:
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not an integer ring element")
        if isinstance(value, int):
            return value
        if isinstance(value, str):
            return int(value, 10)
        if isinstance(value, Fraction) and value.denominator == 1:
            return int(value)
        raise TypeError(f"not an integer: {value!r}")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_unit(self, a):
        return a == 1 or a == -1

    def inv(self, a):
        if not self.is_unit(a):
            raise NotInvertible(f"{a} is not a unit in Z", determinant=a)
        return a

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("integers")


class RationalRing(Ring):
    kind = "rationals"

    zero = Fraction(0)
    one = Fraction(1)

    def of(self, value) -> Fraction:
        if type(value) is Fraction:  # immutable: safe to share
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a rational ring element")
        if isinstance(value, (int, Fraction, str)):
            return Fraction(value)
        raise TypeError(f"not a rational: {value!r}")

    def is_zero(self, a):
        return not a

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise NotInvertible("0 is not a unit in Q", determinant=a)
        return Fraction(1) / a

    def show(self, a) -> str:
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def __eq__(self, other):
        return isinstance(other, RationalRing)

    def __hash__(self):
        return hash("rationals")


class ModularRing(Ring):
    """Integers mod ``n`` with ``n >= 2`` (so that 1 != 0)."""

    kind = "integers_mod"

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 2:
            raise ValueError("modulus must be an integer >= 2")
        self.n = n

    zero = 0
    one = 1

    def of(self, value) -> int:
        if isinstance(value, bool):
            raise TypeError("bool is not a modular ring element")
        if isinstance(value, str):
            value = int(value, 10)
        if isinstance(value, Fraction):
            if value.denominator == 1:
                value = int(value)
            else:
                raise TypeError(f"not a residue: {value!r}")
        if not isinstance(value, int):
            raise TypeError(f"not a residue: {value!r}")
        return value % self.n

    def add(self, a, b):
        return (a + b) % self.n

    def sub(self, a, b):
        return (a - b) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def is_unit(self, a):
        return math.gcd(a % self.n, self.n) == 1

    def inv(self, a):
        if not self.is_unit(a):
            raise NotInvertible(f"{a} is not a unit in Z/{self.n}", determinant=a)
        return pow(a % self.n, -1, self.n)

    def describe(self) -> dict:
        return {"kind": self.kind, "n": self.n}

    def __eq__(self, other):
        return isinstance(other, ModularRing) and other.n == self.n

    def __hash__(self):
        return hash(("integers_mod", self.n))

    def __repr__(self):  # pragma: no cover - cosmetic
        return f"Z/{self.n}"


ZZ = IntegerRing()
QQ = RationalRing()


def Zmod(n: int) -> ModularRing:
    return ModularRing(n)


def ring_from_descriptor(desc: dict) -> Ring:
    """Rebuild a ring from its :meth:`Ring.describe` dictionary."""
    kind = desc.get("kind")
    if kind == "integers":
        return ZZ
    if kind == "rationals":
        return QQ
    if kind == "integers_mod":
        return Zmod(int(desc["n"]))
    raise ValueError(f"unknown ring kind: {kind!r}")
