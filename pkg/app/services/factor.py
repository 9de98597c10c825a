"""
Irreducibility certificates and the small factorization toolkit they need:
gcd, squarefree part and polynomial square roots.
"""

import logging
from dataclasses import dataclass, field as dc_field

from app.errors import DegreeShapeError, DivisionByZeroError
from app.services.groebner import Ideal, intersect
from app.services.local import elimination_chain_certificate
from app.services.poly import MonomialOrder, mono_div, mono_divides, pseudo_remainder

logger = logging.getLogger(__name__)

PRIMITIVE_LINEAR = 'primitive-linear-in-block'
QUADRATIC_DISCRIMINANT = 'monic-quadratic-discriminant'
UNIT_ELIMINATION = 'unit-elimination'

_DEGREVLEX = MonomialOrder.degrevlex()


def _monic(f):
    return f.monic(_DEGREVLEX)


# =========================
# GCD / SQUAREFREE / SQRT
# =========================

def gcd(f, g):
    """Monic gcd, as f*g / lcm with the lcm generating (f) ∩ (g)."""
    ring = f.ring
    if f.is_zero():
        return _monic(g)
    if g.is_zero():
        return _monic(f)
    if f.is_constant() or g.is_constant():
        return ring.one()
    meet = intersect(Ideal(ring, (f,)), Ideal(ring, (g,)))
    lcm = meet.generators[0]
    return _monic((f * g).divide_exact(lcm))


def _pth_root(f):
    p = f.ring.field.characteristic
    terms = {tuple(e // p for e in m): c for m, c in f.items()}
    return type(f)(f.ring, terms)


def squarefree_part(f):
    """Product of the distinct irreducible factors of f, monic."""
    if f.is_zero():
        raise DivisionByZeroError("squarefree part of zero")
    if f.is_constant():
        return f.ring.one()
    partials = [d for d in (f.derivative(v) for v in sorted(f.variables())) if d]
    if not partials:
        # characteristic p and f is a p-th power
        return squarefree_part(_pth_root(f))
    g = f
    for d in partials:
        g = gcd(g, d)
    head = _monic(f.divide_exact(g))
    if g.is_constant():
        return head
    rest = squarefree_part(g)
    return _monic((head * rest).divide_exact(gcd(head, rest)))


def poly_sqrt(f):
    """g with g*g == f, or None. Built term by term from the degrevlex leading term."""
    if f.is_zero():
        return f
    ring, field = f.ring, f.ring.field
    lm, lc = f.leading_term(_DEGREVLEX)
    if any(e % 2 for e in lm):
        return None
    root_c = field.sqrt(lc)
    if root_c is None:
        return None
    lead = ring.monomial(tuple(e // 2 for e in lm), field.element(root_c))
    two_lead_inv = field.inv(field.mul(field.convert(2), root_c))
    half_min = f.min_degree() / 2
    g = lead
    r = f - g * g
    while r:
        lm_r, lc_r = r.leading_term(_DEGREVLEX)
        if not mono_divides(lead.leading_monomial(_DEGREVLEX), lm_r):
            return None
        q = mono_div(lm_r, lead.leading_monomial(_DEGREVLEX))
        if sum(q) < half_min:
            return None
        term = ring.monomial(q, field.element(field.mul(lc_r, two_lead_inv)))
        g = g + term
        r = f - g * g
    return g


def eliminate_linear(f, g, name):
    """Remove name from f using g = u*name + a with u invertible (pseudo-remainder)."""
    if g.degree_in(name) != 1:
        raise DegreeShapeError(f"{g} is not linear in {name}")
    return pseudo_remainder(f, g, name)


# =========================
# CERTIFICATES
# =========================

@dataclass(frozen=True)
class IrreducibilityCertificate:
    method: str
    data: dict = dc_field(default_factory=dict)
    geometric: bool = False
    granted: bool = False

    def __bool__(self):
        return self.granted

    def witnesses(self):
        out = {'method': self.method, 'granted': self.granted, 'geometric': self.geometric}
        for k, v in sorted(self.data.items()):
            if isinstance(v, (list, tuple)):
                out[k] = [str(x) for x in v]
            elif isinstance(v, (bool, int)):
                out[k] = v
            else:
                out[k] = str(v)
        return out

    def recheck(self):
        """Re-verify the verdict from the stored witnesses."""
        if self.method == PRIMITIVE_LINEAR:
            f, block = self.data['polynomial'], self.data['block']
            coeffs = list(f.coefficients_in(block).values())
            if coeffs != list(self.data['coefficients']):
                return False
            content = self.data['gcd']
            if not all(_divides(content, c) for c in coeffs):
                return False
            return content.is_constant() == self.granted
        if self.method == QUADRATIC_DISCRIMINANT:
            a, b, c = self.data['a'], self.data['b'], self.data['c']
            disc = b * b - 4 * a * c
            if disc != self.data['discriminant']:
                return False
            square = disc.is_zero() or poly_sqrt(disc) is not None
            geometric = not disc.is_zero() and poly_sqrt(_monic(disc)) is None
            primitive = gcd(gcd(a, b), c).is_constant()
            return (primitive and not square) == self.granted and (self.granted and geometric) == self.geometric
        if self.method == UNIT_ELIMINATION:
            cert = elimination_chain_certificate(self.data['ideal'], self.data['targets'])
            return cert.granted == self.granted
        return False


def _divides(d, f):
    try:
        f.divide_exact(d)
    except DegreeShapeError:
        return False
    return True


def _constant_multiple(a, unit):
    try:
        return a.divide_exact(unit).is_constant()
    except DegreeShapeError:
        return False


def _block_degree(m, idx):
    return sum(m[i] for i in idx)


def irreducible_linear_in_block(f, block):
    """Granted iff f is primitive as a linear form in the block variables."""
    block = list(block)
    idx = [f.ring.index(n) for n in block]
    degrees = {_block_degree(m, idx) for m in f.monomials()}
    if max(degrees, default=0) != 1:
        raise DegreeShapeError(f"{f} has degree {max(degrees, default=0)} in {block}, expected 1")
    coeffs = list(f.coefficients_in(block).values())
    content = coeffs[0]
    for c in coeffs[1:]:
        content = gcd(content, c)
    granted = content.is_constant()
    logger.debug("primitive-linear certificate for %s: gcd %s", f, content)
    return IrreducibilityCertificate(
        PRIMITIVE_LINEAR,
        {'polynomial': f, 'block': block, 'coefficients': coeffs, 'gcd': content},
        geometric=granted,
        granted=granted,
    )


def irreducible_monic_quadratic(f, var, unit=None):
    """Discriminant test for f = a*var^2 + b*var + c over the fraction field.

    a must be a nonzero constant, a local unit (nonzero constant term), or a
    constant multiple of the declared unit. Granted iff (a, b, c) has trivial
    content and b^2 - 4ac is not a square; geometric iff its monic
    normalization is not a square either.
    """
    if f.degree_in(var) != 2:
        raise DegreeShapeError(f"{f} is not quadratic in {var}")
    a, b, c = (f.coefficient_in(var, k) for k in (2, 1, 0))
    if a.is_constant():
        normalization = 'constant'
    elif a.constant_term() != 0:
        normalization = 'local unit'
    elif unit is not None and _constant_multiple(a, unit):
        normalization = f'unit {unit}'
    else:
        raise DegreeShapeError(f"leading coefficient {a} of {f} in {var} is not a unit")
    disc = b * b - 4 * a * c
    square_root = None if disc.is_zero() else poly_sqrt(disc)
    square = disc.is_zero() or square_root is not None
    primitive = gcd(gcd(a, b), c).is_constant()
    granted = primitive and not square
    geometric = granted and poly_sqrt(_monic(disc)) is None
    data = {
        'polynomial': f,
        'variable': var,
        'a': a,
        'b': b,
        'c': c,
        'normalization': normalization,
        'discriminant': disc,
        'squarefree_part': squarefree_part(disc) if not disc.is_zero() else disc,
    }
    if square_root is not None:
        data['square_root'] = square_root
    logger.debug("quadratic certificate in %s: discriminant %s, granted %s", var, disc, granted)
    return IrreducibilityCertificate(QUADRATIC_DISCRIMINANT, data, geometric=geometric, granted=granted)


def irreducible_by_unit_elimination(ideal, targets):
    """Domain certificate: ring/I at the origin is a power series ring."""
    cert = elimination_chain_certificate(ideal, targets)
    return IrreducibilityCertificate(
        UNIT_ELIMINATION,
        {'ideal': ideal, 'targets': list(targets), 'power_series_in': cert.data.get('power_series_in', [])},
        geometric=cert.granted,
        granted=cert.granted,
    )
