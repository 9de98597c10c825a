"""
Exact coefficient arithmetic over F_p (odd p) and the rationals.

Polynomials keep raw canonical values (int residues, or Fractions) for speed;
a Field performs the arithmetic on them. FieldElement wraps a raw value with
its Field for the public, operator-based API.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from sympy import isprime
from sympy.ntheory import sqrt_mod

from app.errors import CharacteristicError, DivisionByZeroError, FieldMismatchError


@dataclass(frozen=True)
class Field:
    characteristic: int

    def __post_init__(self):
        p = self.characteristic
        if p == 0:
            return
        if p == 2:
            raise CharacteristicError("p must be an odd prime (characteristic 2 is not supported)")
        if p < 0 or not isprime(p):
            raise CharacteristicError(f"p must be an odd prime, got {p}")

    @classmethod
    def rationals(cls):
        return cls(0)

    @classmethod
    def prime(cls, p):
        p = int(p)
        if p == 0:
            raise CharacteristicError("p must be an odd prime, got 0")
        return cls(p)

    @property
    def is_prime_field(self):
        return self.characteristic > 0

    # ---- canonical values -------------------------------------------------

    def convert(self, value):
        """Canonical raw value for an int, Fraction or FieldElement."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError(f"element of {value.field} used in {self}")
            return value.value
        p = self.characteristic
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise DivisionByZeroError(f"denominator {value.denominator} vanishes mod {p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    @property
    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def element(self, value):
        return FieldElement(self, self.convert(value))

    # ---- raw arithmetic ---------------------------------------------------

    def add(self, a, b):
        p = self.characteristic
        return a + b if p == 0 else (a + b) % p

    def sub(self, a, b):
        p = self.characteristic
        return a - b if p == 0 else (a - b) % p

    def mul(self, a, b):
        p = self.characteristic
        return a * b if p == 0 else (a * b) % p

    def neg(self, a):
        p = self.characteristic
        return -a if p == 0 else (-a) % p

    def inv(self, a):
        if a == 0:
            raise DivisionByZeroError("inverse of zero")
        p = self.characteristic
        return 1 / a if p == 0 else pow(a, -1, p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, n):
        p = self.characteristic
        return a ** n if p == 0 else pow(a, n, p)

    def is_square(self, a):
        """Quadratic-residue test: Euler's criterion mod p, exact test over Q."""
        if a == 0:
            raise DivisionByZeroError("square test of zero")
        p = self.characteristic
        if p == 0:
            return _rational_sqrt(a) is not None
        return pow(a, (p - 1) // 2, p) == 1

    def sqrt(self, a):
        """A square root of a, or None when a is not a square."""
        if a == 0:
            return self.zero
        p = self.characteristic
        if p == 0:
            return _rational_sqrt(a)
        if not self.is_square(a):
            return None
        return min(sqrt_mod(a, p, all_roots=True))

    def format(self, a):
        """Symmetric representative for F_p so that p-1 prints as -1."""
        p = self.characteristic
        if p == 0:
            return str(a)
        return str(a - p) if a > p // 2 else str(a)

    def signed(self, a):
        """Integer/Fraction value of a with the symmetric residue convention."""
        p = self.characteristic
        if p == 0:
            return a
        return a - p if a > p // 2 else a

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


def _rational_sqrt(a):
    a = Fraction(a)
    if a < 0:
        return None
    n, d = isqrt(a.numerator), isqrt(a.denominator)
    if n * n == a.numerator and d * d == a.denominator:
        return Fraction(n, d)
    return None


@dataclass(frozen=True)
class FieldElement:
    field: Field
    value: object

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other.value
        return self.field.convert(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        return FieldElement(self.field, self.field.power(self.value, n))

    def inv(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def is_zero(self):
        return self.value == 0

    def is_square_constant(self):
        return self.field.is_square(self.value)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.convert(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"FieldElement({self}, {self.field})"


def add(a, b):
    return a + b


def sub(a, b):
    return a - b


def mul(a, b):
    return a * b


def neg(a):
    return -a


def inv(a):
    return a.inv()


def is_square_constant(a):
    return a.is_square_constant()


def rank(rows, field):
    """Row rank of a list of equal-length raw-value vectors by Gaussian elimination."""
    rows = [[field.convert(x) for x in r] for r in rows]
    rows = [r for r in rows if any(x != 0 for x in r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv_p = field.inv(rows[r][col])
        rows[r] = [field.mul(x, inv_p) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r
