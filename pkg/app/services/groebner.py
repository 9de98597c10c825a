"""
Buchberger's algorithm for global orders and the ideal operations built on it:
membership, equality, elimination, intersection, colon, saturation and
radical membership.
"""

import logging
from dataclasses import dataclass, field as dc_field

from app.errors import DivisionByZeroError, OrderKindError, RingMismatchError
from app.services.deadline import check_deadline
from app.services.poly import (
    MonomialOrder,
    Polynomial,
    mono_coprime,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

logger = logging.getLogger(__name__)


# =========================
# IDEALS
# =========================

@dataclass(frozen=True)
class Ideal:
    ring: object
    generators: tuple
    _cache: dict = dc_field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        seen = []
        for g in self.generators:
            if not isinstance(g, Polynomial):
                g = self.ring.constant(g)
            if g.ring != self.ring:
                raise RingMismatchError(f"generator {g} is not in {self.ring}")
            if g and g not in seen:
                seen.append(g)
        object.__setattr__(self, 'generators', tuple(seen))

    @classmethod
    def parse(cls, ring, *texts):
        return cls(ring, tuple(ring.parse(t) for t in texts))

    def __add__(self, other):
        if isinstance(other, Ideal):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return Ideal(self.ring, self.generators + other.generators)
        return Ideal(self.ring, self.generators + tuple(other))

    def __mul__(self, other):
        return Ideal(self.ring, tuple(f * g for f in self.generators for g in other.generators))

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def is_zero(self):
        return not self.generators

    def is_homogeneous(self, weights=None):
        return all(g.is_homogeneous(weights) for g in self.generators)

    def groebner(self, order=None):
        order = order or (self.ring.order if self.ring.order.is_global else MonomialOrder.degrevlex())
        if order not in self._cache:
            self._cache[order] = buchberger(self, order)
        return self._cache[order]

    def contains(self, f):
        return self.groebner().contains(f)

    def is_unit(self):
        return self.groebner().is_unit()

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


@dataclass(frozen=True)
class GroebnerBasis:
    ideal: Ideal
    order: MonomialOrder
    basis: tuple

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)

    def leading_monomials(self):
        return [g.leading_monomial(self.order) for g in self.basis]

    def reduce(self, f):
        return normal_form(f, self.basis, self.order)

    def contains(self, f):
        return normal_form(f, self.basis, self.order).is_zero()

    def is_unit(self):
        return any(g.is_constant() and g for g in self.basis)

    def certify(self):
        return is_groebner(self.basis, self.order)


# =========================
# TERM-DICT KERNELS
# =========================

def _reduce(terms, basis, order, field, full=True):
    """Remainder of terms modulo monic basis entries (lm, terms); full or top reduction."""
    p = dict(terms)
    r = {}
    key = order.key
    steps = 0
    while p:
        steps += 1
        if steps % 256 == 0:
            check_deadline()
        m = max(p, key=key)
        c = p[m]
        for lm_g, g in basis:
            if mono_divides(lm_g, m):
                q = mono_div(m, lm_g)
                for gm, gc in g.items():
                    mm = mono_mul(gm, q)
                    v = field.sub(p.get(mm, field.zero), field.mul(c, gc))
                    if v == 0:
                        p.pop(mm, None)
                    else:
                        p[mm] = v
                break
        else:
            r[m] = c
            del p[m]
            if not full:
                r.update(p)
                break
    return r


def _entry(terms, order, field):
    lm = max(terms, key=order.key)
    inv = field.inv(terms[lm])
    return lm, {m: field.mul(c, inv) for m, c in terms.items()}


def _spoly(e1, e2, field):
    (lm1, g1), (lm2, g2) = e1, e2
    lcm = mono_lcm(lm1, lm2)
    q1, q2 = mono_div(lcm, lm1), mono_div(lcm, lm2)
    out = {mono_mul(m, q1): c for m, c in g1.items()}
    for m, c in g2.items():
        mm = mono_mul(m, q2)
        v = field.sub(out.get(mm, field.zero), c)
        if v == 0:
            out.pop(mm, None)
        else:
            out[mm] = v
    return out


def _update(G, P, entry, order):
    """Gebauer-Moeller pair update when entry joins the basis G."""
    lmf = entry[0]
    lmG = [g[0] for g in G]
    kept = set()
    for a, b in P:
        lcm_ab = mono_lcm(lmG[a], lmG[b])
        if (not mono_divides(lmf, lcm_ab)
                or lcm_ab == mono_lcm(lmG[a], lmf)
                or lcm_ab == mono_lcm(lmG[b], lmf)):
            kept.add((a, b))
    lcm_dict = {}
    for i, lm in enumerate(lmG):
        lcm_dict.setdefault(mono_lcm(lm, lmf), []).append(i)
    minimal = []
    for L in sorted(lcm_dict, key=order.key):
        if all(not mono_divides(L_, L) for L_ in minimal):
            minimal.append(L)
    new = len(G)
    for L in minimal:
        if not any(mono_coprime(lmG[i], lmf) for i in lcm_dict[L]):
            kept.add((min(lcm_dict[L]), new))
    return G + [entry], kept


def _minimalize(G, order):
    out = []
    for lm, g in sorted(G, key=lambda e: order.key(e[0])):
        if all(not mono_divides(lm_h, lm) for lm_h, _ in out):
            out.append((lm, g))
    return out


def _interreduce(G, order, field):
    out = []
    for i, (lm, g) in enumerate(G):
        others = G[:i] + G[i + 1:]
        out.append(_entry(_reduce(g, others, order, field), order, field))
    return out


def _groebner_terms(polys, order, field):
    G, P = [], set()
    for t in polys:
        if t:
            G, P = _update(G, P, _entry(t, order, field), order)
    while P:
        check_deadline()
        i, j = min(P, key=lambda p: (order.key(mono_lcm(G[p[0]][0], G[p[1]][0])), p))
        P.remove((i, j))
        r = _reduce(_spoly(G[i], G[j], field), G, order, field)
        if r:
            G, P = _update(G, P, _entry(r, order, field), order)
    return _interreduce(_minimalize(G, order), order, field)


def _require_global(order):
    if not order.is_global:
        raise OrderKindError(f"{order.name} is a local order; use the local module")


# =========================
# PUBLIC OPERATIONS
# =========================

def normal_form(f, G, order=None):
    """Fully reduced remainder of f modulo G (any generating list, not necessarily a basis)."""
    order = order or f.ring.order
    _require_global(order)
    field = f.ring.field
    basis = [_entry(dict(g.items()), order, field) for g in G if g]
    return Polynomial(f.ring, _reduce(dict(f.items()), basis, order, field))


def buchberger(ideal, order=None):
    """Reduced Groebner basis of the ideal with respect to a global order."""
    ring = ideal.ring
    order = order or ring.order
    _require_global(order)
    field = ring.field
    entries = _groebner_terms([dict(g.items()) for g in ideal.generators], order, field)
    basis = tuple(Polynomial(ring, g) for _, g in entries)
    logger.debug("groebner basis over %s (%s): %d generators -> %d elements",
                 ring, order.name, len(ideal.generators), len(basis))
    return GroebnerBasis(ideal, order, basis)


def is_groebner(G, order):
    """Post-hoc certificate: every S-polynomial of G reduces to zero modulo G."""
    _require_global(order)
    G = [g for g in G if g]
    if not G:
        return True
    field = G[0].ring.field
    entries = [_entry(dict(g.items()), order, field) for g in G]
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            if mono_coprime(entries[i][0], entries[j][0]):
                continue
            if _reduce(_spoly(entries[i], entries[j], field), entries, order, field):
                return False
    return True


def ideal_member(f, ideal):
    return ideal.contains(f)


def ideal_equal(I, K):
    if I.ring != K.ring:
        raise RingMismatchError(f"{I.ring} vs {K.ring}")
    return all(K.contains(g) for g in I.generators) and all(I.contains(g) for g in K.generators)


def fresh_variable(ring, base='t'):
    name, n = base, 0
    while ring.has(name):
        n += 1
        name = f"{base}{n}"
    return name


def _eliminate_front(ext_ring, gens, k, target):
    """Generators free of the first k variables of ext_ring, moved into target."""
    ideal = Ideal(ext_ring, tuple(gens))
    gb = ideal.groebner(ext_ring.order)
    kept = [g for g in gb.basis if all(all(e == 0 for e in m[:k]) for m in g.monomials())]
    return Ideal(target, tuple(g.to_ring(target) for g in kept))


def eliminate(ideal, names):
    """I intersected with the subring omitting the named variables (block order)."""
    ring = ideal.ring
    names = [n for n in ring.variables if n in set(names)]
    for n in names:
        ring.index(n)
    if not names:
        return ideal
    rest = tuple(v for v in ring.variables if v not in names)
    ext = type(ring)(ring.field, tuple(names) + rest, MonomialOrder.block(len(names)))
    target = ring.drop(names)
    return _eliminate_front(ext, [g.to_ring(ext) for g in ideal.generators], len(names), target)


def _with_aux(ring):
    t = fresh_variable(ring, 't')
    ext = ring.extend([t], front=True, order=MonomialOrder.block(1))
    return ext, ext.gen(t)


def intersect(I, K):
    if I.ring != K.ring:
        raise RingMismatchError(f"{I.ring} vs {K.ring}")
    ext, t = _with_aux(I.ring)
    gens = [t * f.to_ring(ext) for f in I.generators]
    gens += [(1 - t) * g.to_ring(ext) for g in K.generators]
    return _eliminate_front(ext, gens, 1, I.ring)


def colon(ideal, f):
    """(I : f) = (I ∩ (f)) / f."""
    if f.is_zero():
        raise DivisionByZeroError("colon by the zero polynomial")
    if f.is_constant():
        return ideal
    meet = intersect(ideal, Ideal(ideal.ring, (f,)))
    return Ideal(ideal.ring, tuple(g.divide_exact(f) for g in meet.generators))


def saturate(ideal, f):
    """(I : f^inf) via elimination of t from (I, 1 - t*f)."""
    if f.is_zero():
        raise DivisionByZeroError("saturation by the zero polynomial")
    if f.is_constant():
        return ideal
    ext, t = _with_aux(ideal.ring)
    gens = [g.to_ring(ext) for g in ideal.generators] + [1 - t * f.to_ring(ext)]
    return _eliminate_front(ext, gens, 1, ideal.ring)


def saturation_exponent(ideal, f, limit=16):
    """Least n with (I : f^n) = (I : f^(n+1)), or None past the limit."""
    current = ideal
    for n in range(limit + 1):
        nxt = colon(current, f)
        if ideal_equal(nxt, current):
            return n
        current = nxt
    return None


def radical_member(f, ideal):
    """f in rad(I) iff 1 in (I, 1 - t*f)."""
    ext, t = _with_aux(ideal.ring)
    gens = [g.to_ring(ext) for g in ideal.generators] + [1 - t * f.to_ring(ext)]
    return Ideal(ext, tuple(gens)).is_unit()
