"""Arithmetic in prime fields GF(q).

Scalars at the API surface are :class:`FieldElement` values that carry
their modulus; mixing moduli raises :class:`ModulusMismatch`.  Bulk
containers (polynomials, matrices, shares) keep canonical ``int`` residues
next to a single modulus, and the ``*_int`` helpers below operate on those.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DivisionByZero, ModulusMismatch, NotPrime


@lru_cache(maxsize=None)
def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0:
        return False
    for f in range(3, math.isqrt(q) + 1, 2):
        if q % f == 0:
            return False
    return True


def check_prime(q: int) -> int:
    if not is_prime(q):
        raise NotPrime(f"modulus {q} is not prime")
    return q


def next_prime(lower: int) -> int:
    """Smallest prime ``p >= lower``."""
    p = max(2, lower)
    while not is_prime(p):
        p += 1
    return p


def symbol_bytes(q: int) -> int:
    """Bytes needed to serialize one residue mod ``q``: ceil(log2(q) / 8)."""
    return max(1, ((q - 1).bit_length() + 7) // 8)


def inv_int(a: int, q: int) -> int:
    a %= q
    if a == 0:
        raise DivisionByZero(f"0 has no inverse in GF({q})")
    return pow(a, -1, q)


@dataclass(frozen=True, slots=True)
class FieldElement:
    """An element of GF(modulus), stored as its canonical residue."""

    value: int
    modulus: int

    def __post_init__(self):
        check_prime(self.modulus)
        if not 0 <= self.value < self.modulus:
            object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise ModulusMismatch(f"GF({self.modulus}) vs GF({other.modulus})")
            return other
        if isinstance(other, int):
            return FieldElement(other % self.modulus, self.modulus)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement((self.value + other.value) % self.modulus, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement((self.value - other.value) % self.modulus, self.modulus)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return FieldElement(-self.value % self.modulus, self.modulus)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.value * other.value % self.modulus, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, e: int):
        return power(self, e)

    def inverse(self) -> FieldElement:
        return FieldElement(inv_int(self.value, self.modulus), self.modulus)

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.modulus})"

    def to_bytes(self) -> bytes:
        return self.value.to_bytes(symbol_bytes(self.modulus), "little")

    @classmethod
    def from_bytes(cls, data: bytes, modulus: int) -> FieldElement:
        value = int.from_bytes(data, "little")
        if value >= modulus:
            raise ValueError(f"{value} is not a canonical residue mod {modulus}")
        return cls(value, modulus)


class PrimeField:
    """Factory for the elements of GF(q)."""

    def __init__(self, q: int):
        self.q = check_prime(q)

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value % self.q, self.q)

    def __iter__(self):
        return (FieldElement(v, self.q) for v in range(self.q))

    def __len__(self) -> int:
        return self.q

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("GF", self.q))

    def __repr__(self) -> str:
        return f"GF({self.q})"


def _same(a: FieldElement, b: FieldElement) -> int:
    if a.modulus != b.modulus:
        raise ModulusMismatch(f"GF({a.modulus}) vs GF({b.modulus})")
    return a.modulus


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    q = _same(a, b)
    return FieldElement((a.value + b.value) % q, q)


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    q = _same(a, b)
    return FieldElement(a.value * b.value % q, q)


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def power(a: FieldElement, e: int) -> FieldElement:
    """``a ** e`` with the convention ``power(0, 0) == 1``."""
    if e < 0:
        return power(a.inverse(), -e)
    return FieldElement(pow(a.value, e, a.modulus), a.modulus)
