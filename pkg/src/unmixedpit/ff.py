"""Prime field arithmetic.

Field elements are carried around the package as plain Python ints in
``[0, p)``; :class:`PrimeField` owns the modulus and the operations.
:class:`FieldElement` is a thin operator-overloading wrapper for callers who
want ``a + b`` semantics instead of ``F.add(a, b)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FieldMismatchError

MERSENNE_61 = (1 << 61) - 1
DEFAULT_MODULUS = MERSENNE_61

# Deterministic Miller-Rabin witnesses, valid for every n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic for n < 3.3e24, probabilistic (error < 4^-13) above that."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field F_p. Two fields are equal iff their moduli are."""

    p: int = DEFAULT_MODULUS

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"modulus {self.p!r} is not prime")

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(value % self.p, self)

    def reduce(self, value: int) -> int:
        return value % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("zero has no inverse in F_p")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p

    def pow(self, a: int, e: int) -> int:
        return pow(a, e, self.p)

    def check_same(self, other: "PrimeField") -> None:
        if self != other:
            raise FieldMismatchError(f"mixing F_{self.p} with F_{other.p}")


DEFAULT_FIELD = PrimeField(DEFAULT_MODULUS)


def resolve_field(field: PrimeField | int | None = None) -> PrimeField:
    if field is None:
        return DEFAULT_FIELD
    if isinstance(field, int):
        return PrimeField(field)
    return field


class FieldElement:
    """Immutable element of a :class:`PrimeField`; serializes as its decimal residue."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField | None = None):
        field = resolve_field(field)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value % field.p)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            self.field.check_same(other.field)
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def _wrap(self, v: int) -> "FieldElement":
        return FieldElement(v, self.field)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.div(o, self.value))

    def __neg__(self):
        return self._wrap(-self.value)

    def __pow__(self, e: int):
        if e < 0:
            return self._wrap(pow(self.field.inv(self.value), -e, self.field.p))
        return self._wrap(pow(self.value, e, self.field.p))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.p))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"FieldElement({self.value}, p={self.field.p})"


_OPS = {"add", "sub", "mul", "div"}


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Apply ``op`` in {"add", "sub", "mul", "div"}; division by zero raises."""
    if op not in _OPS:
        raise ValueError(f"unknown field operation {op!r}")
    a.field.check_same(b.field)
    return FieldElement(getattr(a.field, op)(a.value, b.value), a.field)
