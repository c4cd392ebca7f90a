"""Arithmetic in the prime field F_q.

Elements are canonical residues in ``[0, q)``.  Prime powers are rejected:
``GF(p^m)`` would need a polynomial representation and plain residues
mod ``p^m`` do not form a field.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import CompositeOrder, FieldMismatch, ZeroInverse


def is_prime(q: int) -> bool:
    """Deterministic trial-division primality test."""
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    for p in range(3, isqrt(q) + 1, 2):
        if q % p == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The prime field with ``q`` elements."""

    q: int

    def __post_init__(self) -> None:
        if not isinstance(self.q, int) or isinstance(self.q, bool):
            raise TypeError(f"field order must be an int, got {type(self.q).__name__}")
        if not is_prime(self.q):
            raise CompositeOrder(f"field order {self.q} is not prime")

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value % self.q, self)

    def __iter__(self):
        return (FieldElement(v, self) for v in range(self.q))

    @property
    def nonzero(self) -> range:
        return range(1, self.q)

    def inv(self, a: int) -> int:
        """Inverse of a raw residue."""
        a %= self.q
        if a == 0:
            raise ZeroInverse(f"0 has no inverse in F_{self.q}")
        return pow(a, -1, self.q)


def field_make(q: int) -> FieldSpec:
    """Return the field of order ``q``; raises :class:`CompositeOrder` unless q is prime."""
    return FieldSpec(q)


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: FieldSpec

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.field.q:
            raise ValueError(f"{self.value} is not a residue in [0, {self.field.q})")

    def _check(self, other: FieldElement) -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"F_{self.field.q} vs F_{other.field.q}")

    def __add__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement((self.value + other.value) % self.field.q, self.field)

    def __sub__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement((self.value - other.value) % self.field.q, self.field)

    def __neg__(self) -> FieldElement:
        return FieldElement(-self.value % self.field.q, self.field)

    def __mul__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.value * other.value % self.field.q, self.field)

    def __truediv__(self, other: FieldElement) -> FieldElement:
        return self * other.inverse()

    def inverse(self) -> FieldElement:
        return FieldElement(self.field.inv(self.value), self.field)

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.field.q})"


def _same_field(f: FieldSpec, *elements: FieldElement) -> None:
    for e in elements:
        if e.field != f:
            raise FieldMismatch(f"element of F_{e.field.q} used with F_{f.q}")


def fe_add(a: FieldElement, b: FieldElement, f: FieldSpec) -> FieldElement:
    _same_field(f, a, b)
    return a + b


def fe_sub(a: FieldElement, b: FieldElement, f: FieldSpec) -> FieldElement:
    _same_field(f, a, b)
    return a - b


def fe_neg(a: FieldElement, f: FieldSpec) -> FieldElement:
    _same_field(f, a)
    return -a


def fe_mul(a: FieldElement, b: FieldElement, f: FieldSpec) -> FieldElement:
    _same_field(f, a, b)
    return a * b


def fe_inv(a: FieldElement, f: FieldSpec) -> FieldElement:
    _same_field(f, a)
    return a.inverse()
