"""
Sparse multivariate polynomials over a coefficient Field.

A Polynomial maps dense exponent tuples to raw canonical coefficients; the
term order is not stored on the polynomial but passed to (or defaulted from
the ring by) every order-dependent operation.
"""

import re
from dataclasses import dataclass, field as dc_field
from enum import Enum
from functools import cached_property

from app.errors import (
    DegreeShapeError,
    DivisionByZeroError,
    OrderKindError,
    RingMismatchError,
    UnknownVariableError,
)
from app.services.coeff import Field, FieldElement

VARIABLE_RE = re.compile(r'^[A-Za-z][A-Za-z0-9_]*$')


# =========================
# MONOMIALS (dense exponent tuples)
# =========================

def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a, b):
    """True iff monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a):
    return sum(a)


def mono_coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


# =========================
# MONOMIAL ORDERS
# =========================

class Ordering(Enum):
    LT = -1
    EQ = 0
    GT = 1


def _revlex_tail(m):
    return tuple(-x for x in reversed(m))


@dataclass(frozen=True)
class MonomialOrder:
    kind: str
    split: int = 0
    inner: tuple = ()

    KINDS = ('lex', 'degrevlex', 'negdegrevlex', 'block')

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise OrderKindError(f"unknown monomial order {self.kind!r}")
        if self.kind == 'block':
            if self.split < 1 or len(self.inner) != 2:
                raise OrderKindError("block order needs a split point >= 1 and two inner orders")
            if any(not o.is_global for o in self.inner):
                raise OrderKindError("block order inner orders must be global")

    @classmethod
    def lex(cls):
        return cls('lex')

    @classmethod
    def degrevlex(cls):
        return cls('degrevlex')

    @classmethod
    def negdegrevlex(cls):
        return cls('negdegrevlex')

    @classmethod
    def block(cls, k, first=None, second=None):
        return cls('block', k, (first or cls.degrevlex(), second or cls.degrevlex()))

    @classmethod
    def from_name(cls, name):
        name = name.strip()
        if name.startswith('block:'):
            try:
                k = int(name.split(':', 1)[1])
            except ValueError:
                raise OrderKindError(f"bad block split in {name!r}")
            return cls.block(k)
        return cls(name)

    @property
    def name(self):
        return f"block:{self.split}" if self.kind == 'block' else self.kind

    @property
    def is_global(self):
        return self.kind != 'negdegrevlex'

    @property
    def is_local(self):
        return self.kind == 'negdegrevlex'

    @cached_property
    def key(self):
        """Sort key: larger key means larger monomial."""
        if self.kind == 'lex':
            return lambda m: m
        if self.kind == 'degrevlex':
            return lambda m: (sum(m), _revlex_tail(m))
        if self.kind == 'negdegrevlex':
            return lambda m: (-sum(m), _revlex_tail(m))
        k = self.split
        first, second = self.inner[0].key, self.inner[1].key
        return lambda m: (first(m[:k]), second(m[k:]))

    def compare(self, m1, m2):
        k1, k2 = self.key(m1), self.key(m2)
        if k1 == k2:
            return Ordering.EQ
        return Ordering.GT if k1 > k2 else Ordering.LT


def compare(m1, m2, order):
    return order.compare(m1, m2)


# =========================
# RINGS
# =========================

@dataclass(frozen=True)
class Ring:
    field: Field
    variables: tuple
    order: MonomialOrder = dc_field(default_factory=MonomialOrder.degrevlex, compare=False)

    def __post_init__(self):
        names = tuple(self.variables)
        object.__setattr__(self, 'variables', names)
        if len(set(names)) != len(names):
            raise RingMismatchError(f"duplicate variable names in {names}")
        for name in names:
            if not VARIABLE_RE.match(name):
                raise UnknownVariableError(f"invalid variable name {name!r}")
        if self.order.kind == 'block' and self.order.split > len(names):
            raise OrderKindError("block split exceeds the number of variables")

    @property
    def ngens(self):
        return len(self.variables)

    @cached_property
    def _index(self):
        return {name: i for i, name in enumerate(self.variables)}

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError(f"unknown variable {name!r}")

    def has(self, name):
        return name in self._index

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, c):
        value = self.field.convert(c)
        return Polynomial(self, {(0,) * self.ngens: value} if value != 0 else {})

    def gen(self, name):
        exp = [0] * self.ngens
        exp[self.index(name)] = 1
        return Polynomial(self, {tuple(exp): self.field.one})

    def gens(self):
        return [self.gen(n) for n in self.variables]

    def monomial(self, exp, coeff=1):
        value = self.field.convert(coeff)
        return Polynomial(self, {tuple(exp): value} if value != 0 else {})

    def parse(self, text):
        from app.services.poly_parser import parse
        return parse(text, self)

    def with_order(self, order):
        return Ring(self.field, self.variables, order)

    def extend(self, names, front=True, order=None):
        names = tuple(names)
        variables = names + self.variables if front else self.variables + names
        return Ring(self.field, variables, order or self.order)

    def drop(self, names, order=None):
        names = set(names)
        return Ring(self.field, tuple(v for v in self.variables if v not in names), order or self.order)

    def __str__(self):
        return f"{self.field}[{', '.join(self.variables)}]"


# =========================
# POLYNOMIALS
# =========================

class Polynomial:
    __slots__ = ('ring', '_terms')

    def __init__(self, ring, terms):
        self.ring = ring
        self._terms = terms

    # ---- construction helpers --------------------------------------------

    def _new(self, terms):
        return Polynomial(self.ring, terms)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{other.ring} vs {self.ring}")
            return other
        if isinstance(other, FieldElement):
            return self.ring.constant(other)
        return self.ring.constant(other)

    # ---- basic queries -----------------------------------------------------

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def coefficient(self, exp):
        return self._terms.get(tuple(exp), self.ring.field.zero)

    def terms(self, order=None):
        """(monomial, FieldElement) pairs, strictly decreasing in the order."""
        f = self.ring.field
        return [(m, FieldElement(f, c)) for m, c in self.sorted_items(order)]

    def sorted_items(self, order=None):
        order = order or self.ring.order
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order=None):
        order = order or self.ring.order
        m = max(self._terms, key=order.key)
        return m, self._terms[m]

    def leading_monomial(self, order=None):
        return self.leading_term(order)[0]

    def leading_coefficient(self, order=None):
        return self.leading_term(order)[1]

    def total_degree(self):
        return max((sum(m) for m in self._terms), default=-1)

    def min_degree(self):
        return min((sum(m) for m in self._terms), default=-1)

    def degree_in(self, name):
        i = self.ring.index(name)
        return max((m[i] for m in self._terms), default=-1)

    def variables(self):
        used = set()
        for m in self._terms:
            used.update(i for i, e in enumerate(m) if e)
        return {self.ring.variables[i] for i in sorted(used)}

    def is_constant(self):
        return all(sum(m) == 0 for m in self._terms)

    def constant_term(self):
        return self._terms.get((0,) * self.ring.ngens, self.ring.field.zero)

    def is_monomial(self):
        return len(self._terms) == 1

    def is_homogeneous(self, weights=None):
        weights = weights or (1,) * self.ring.ngens
        degrees = {sum(w * e for w, e in zip(weights, m)) for m in self._terms}
        return len(degrees) <= 1

    # ---- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        f = self.ring.field
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = f.add(out.get(m, f.zero), c)
            if v == 0:
                out.pop(m, None)
            else:
                out[m] = v
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return self._new({m: f.neg(c) for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        f = self.ring.field
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                v = f.add(out.get(m, f.zero), f.mul(c1, c2))
                if v == 0:
                    out.pop(m, None)
                else:
                    out[m] = v
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise DegreeShapeError("negative polynomial power")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c):
        """Multiply by a raw coefficient."""
        if c == 0:
            return self.ring.zero()
        f = self.ring.field
        return self._new({m: f.mul(v, c) for m, v in self._terms.items()})

    def mul_term(self, exp, c):
        f = self.ring.field
        if c == 0:
            return self.ring.zero()
        return self._new({mono_mul(m, exp): f.mul(v, c) for m, v in self._terms.items()})

    def monic(self, order=None):
        if not self._terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient(order)))

    def divide_exact(self, divisor):
        """Quotient q with self = q * divisor; raises when divisor does not divide."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise DivisionByZeroError("division by the zero polynomial")
        order = self.ring.order if self.ring.order.is_global else MonomialOrder.degrevlex()
        f = self.ring.field
        lm_g, lc_g = divisor.leading_term(order)
        inv_lc = f.inv(lc_g)
        rest, quotient = self, {}
        while rest:
            lm, lc = rest.leading_term(order)
            if not mono_divides(lm_g, lm):
                raise DegreeShapeError("polynomial division is not exact")
            q = mono_div(lm, lm_g)
            c = f.mul(lc, inv_lc)
            quotient[q] = c
            rest = rest - divisor.mul_term(q, c)
        return self._new(quotient)

    # ---- homogeneous pieces ------------------------------------------------

    def homogeneous_component(self, d):
        return self._new({m: c for m, c in self._terms.items() if sum(m) == d})

    def lowest_form(self):
        if not self._terms:
            return self
        return self.homogeneous_component(self.min_degree())

    def linear_part(self):
        return self.homogeneous_component(1)

    # ---- calculus and coefficient extraction ----------------------------------

    def derivative(self, name):
        i = self.ring.index(name)
        f = self.ring.field
        out = {}
        for m, c in self._terms.items():
            if m[i] == 0:
                continue
            v = f.mul(c, f.convert(m[i]))
            if v != 0:
                dm = list(m)
                dm[i] -= 1
                out[tuple(dm)] = v
        return self._new(out)

    def coefficients_in(self, names):
        """Split by the exponents of the block variables: {block exponents: coefficient}."""
        idx = [self.ring.index(n) for n in names]
        out = {}
        for m, c in self._terms.items():
            key = tuple(m[i] for i in idx)
            rest = list(m)
            for i in idx:
                rest[i] = 0
            out.setdefault(key, {})[tuple(rest)] = c
        return {k: self._new(v) for k, v in sorted(out.items())}

    def coefficient_in(self, name, k):
        """Coefficient of name^k as a polynomial free of name."""
        return self.coefficients_in([name]).get((k,), self.ring.zero())

    # ---- substitution and ring maps -----------------------------------------

    def substitute(self, bindings, target=None):
        """Simultaneous substitution of variables by polynomials of the target ring.

        Unbound variables map to the same-named variable of the target ring.
        """
        target = target or self.ring
        if target.field != self.ring.field:
            raise RingMismatchError(f"cannot substitute from {self.ring.field} into {target.field}")
        images = []
        for name in self.ring.variables:
            if name in bindings:
                value = bindings[name]
                images.append(value if isinstance(value, Polynomial) else target.constant(value))
            elif target.has(name):
                images.append(target.gen(name))
            else:
                images.append(None)
        for img in images:
            if img is not None and img.ring != target:
                raise RingMismatchError("binding lives in a different ring")
        powers = [{} for _ in images]
        result = target.zero()
        for m, c in self._terms.items():
            term = target.constant(c)
            for i, e in enumerate(m):
                if e == 0:
                    continue
                if images[i] is None:
                    raise UnknownVariableError(f"unbound variable {self.ring.variables[i]!r}")
                if e not in powers[i]:
                    powers[i][e] = images[i] ** e
                term = term * powers[i][e]
            result = result + term
        return result

    def to_ring(self, target):
        """Move into a ring with a superset/permutation of the used variables."""
        if target.field != self.ring.field:
            raise RingMismatchError(f"{self.ring.field} vs {target.field}")
        if target == self.ring:
            return Polynomial(target, self._terms)
        positions = []
        for i, name in enumerate(self.ring.variables):
            positions.append(target.index(name) if target.has(name) else None)
        out = {}
        for m, c in self._terms.items():
            exp = [0] * target.ngens
            for i, e in enumerate(m):
                if e:
                    if positions[i] is None:
                        raise UnknownVariableError(
                            f"variable {self.ring.variables[i]!r} is missing from {target}")
                    exp[positions[i]] = e
            out[tuple(exp)] = c
        return Polynomial(target, out)

    # ---- comparison and printing -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        try:
            return self == self.ring.constant(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self._terms.items())))

    def format_monomial(self, m):
        parts = []
        for name, e in zip(self.ring.variables, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def to_string(self, order=None):
        if not self._terms:
            return "0"
        f = self.ring.field
        out = []
        for m, c in self.sorted_items(order):
            s = f.signed(c)
            negative = s < 0
            a = -s if negative else s
            mono = self.format_monomial(m)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not out:
                out.append(f"-{body}" if negative else body)
            else:
                out.append(f" - {body}" if negative else f" + {body}")
        return "".join(out)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r} in {self.ring})"


# =========================
# MODULE-LEVEL OPERATIONS
# =========================

def add(f, g):
    return f + g


def mul(f, g):
    return f * g


def substitute(f, bindings, target=None):
    return f.substitute(bindings, target)


def linear_part(f):
    return f.linear_part()


def lowest_form(f):
    return f.lowest_form()


def is_homogeneous(f, weights=None):
    return f.is_homogeneous(weights)


def pseudo_remainder(f, g, name):
    """lc^k * f - q * g with deg_name below deg_name(g); lc is g's leading coefficient in name."""
    d = g.degree_in(name)
    if d < 1:
        raise DegreeShapeError(f"divisor does not involve {name}")
    i = g.ring.index(name)
    lc = g.coefficient_in(name, d)
    r = f
    while r and r.degree_in(name) >= d:
        e = r.degree_in(name)
        c = r.coefficient_in(name, e)
        shift = [0] * r.ring.ngens
        shift[i] = e - d
        r = lc * r - (c * g).mul_term(tuple(shift), r.ring.field.one)
    return r
