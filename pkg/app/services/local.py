"""
Computations in the localization at the origin: Mora's weak normal form,
standard bases for negdegrevlex, tangent cones, local multiplicity and the
regularity / elimination certificates.
"""

import logging
import math
from dataclasses import dataclass, field as dc_field

from app import config
from app.errors import DegreeShapeError, MoraStepLimitError, OrderKindError, UnitIdealError
from app.services.coeff import rank
from app.services.deadline import check_deadline
from app.services.groebner import Ideal, _entry, _spoly, _update
from app.services.hilbert import hilbert_data_monomial, multiplicity_graded
from app.services.poly import MonomialOrder, Polynomial, mono_coprime, mono_div, mono_divides, mono_lcm, mono_mul, pseudo_remainder

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StandardBasis:
    ideal: Ideal
    order: MonomialOrder
    basis: tuple

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)

    def leading_monomials(self):
        return [g.leading_monomial(self.order) for g in self.basis]

    def is_unit(self):
        return any(sum(m) == 0 for m in self.leading_monomials())

    def leading_ideal(self):
        ring = self.ideal.ring
        return Ideal(ring, tuple(ring.monomial(m) for m in self.leading_monomials()))


@dataclass(frozen=True)
class LocalCertificate:
    granted: bool
    data: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.granted


def _local_order(order):
    order = order or MonomialOrder.negdegrevlex()
    if not order.is_local:
        raise OrderKindError(f"{order.name} is a global order; use the groebner module")
    return order


def _ecart(terms, lm):
    return max(sum(m) for m in terms) - sum(lm)


# =========================
# MORA WEAK NORMAL FORM
# =========================

def _mora(terms, T, order, field, max_steps, stats):
    key = order.key
    h = dict(terms)
    T = list(T)
    steps = 0
    while h:
        lm_h = max(h, key=key)
        candidates = [(e, i) for i, (lm, _, e) in enumerate(T) if mono_divides(lm, lm_h)]
        if not candidates:
            break
        steps += 1
        if steps > max_steps:
            raise MoraStepLimitError(f"Mora normal form exceeded {max_steps} steps")
        if steps % 256 == 0:
            check_deadline()
        e_g, i = min(candidates)
        lm_g, g, _ = T[i]
        e_h = _ecart(h, lm_h)
        if e_g > e_h:
            lm_n, h_n = _entry(h, order, field)
            T.append((lm_n, h_n, e_h))
        c = h[lm_h]
        q = mono_div(lm_h, lm_g)
        for gm, gc in g.items():
            mm = mono_mul(gm, q)
            v = field.sub(h.get(mm, field.zero), field.mul(c, gc))
            if v == 0:
                h.pop(mm, None)
            else:
                h[mm] = v
    if stats is not None:
        stats['steps'] = stats.get('steps', 0) + steps
        stats['max_steps'] = max(stats.get('max_steps', 0), steps)
    return h


def _reducers(G, order, field):
    out = []
    for g in G:
        if g:
            lm, terms = _entry(dict(g.items()), order, field)
            out.append((lm, terms, _ecart(terms, lm)))
    return out


def mora_normal_form(f, G, order=None, stats=None, max_steps=None):
    """Weak normal form h of f: u*f = h mod (G) for a unit u, LM(h) outside LM(G)."""
    order = _local_order(order)
    field = f.ring.field
    max_steps = max_steps or config.MORA_MAX_STEPS
    T = _reducers(G, order, field)
    return Polynomial(f.ring, _mora(dict(f.items()), T, order, field, max_steps, stats))


# =========================
# STANDARD BASES
# =========================

def standard_basis(ideal, order=None, stats=None, max_steps=None):
    """Standard basis for a local degree order, minimal up to leading terms."""
    order = _local_order(order)
    ring = ideal.ring
    field = ring.field
    max_steps = max_steps or config.MORA_MAX_STEPS
    # pair bookkeeping sorts lcms by a degree order so divisors come first
    by_degree = MonomialOrder.degrevlex()
    S, P = [], set()
    for g in ideal.generators:
        S, P = _update(S, P, _entry(dict(g.items()), order, field), by_degree)
    while P:
        check_deadline()
        i, j = min(P, key=lambda p: (sum(mono_lcm(S[p[0]][0], S[p[1]][0])), p))
        P.remove((i, j))
        T = [(lm, g, _ecart(g, lm)) for lm, g in S]
        h = _mora(_spoly(S[i], S[j], field), T, order, field, max_steps, stats)
        if h:
            S, P = _update(S, P, _entry(h, order, field), by_degree)
    kept = []
    for lm, g in sorted(S, key=lambda e: order.key(e[0]), reverse=True):
        if all(not mono_divides(lm_k, lm) for lm_k, _ in kept):
            kept.append((lm, g))
    basis = tuple(Polynomial(ring, g) for _, g in kept)
    logger.debug("standard basis over %s: %d generators -> %d elements",
                 ring, len(ideal.generators), len(basis))
    return StandardBasis(ideal, order, basis)


def is_standard_basis(G, order=None, max_steps=None):
    """Every S-polynomial of G has Mora normal form 0 against G."""
    order = _local_order(order)
    G = [g for g in G if g]
    if not G:
        return True
    field = G[0].ring.field
    max_steps = max_steps or config.MORA_MAX_STEPS
    T = _reducers(G, order, field)
    for i in range(len(T)):
        for j in range(i + 1, len(T)):
            if mono_coprime(T[i][0], T[j][0]):
                continue
            s = _spoly(T[i][:2], T[j][:2], field)
            if _mora(s, T, order, field, max_steps, None):
                return False
    return True


def _local_sb(ideal, stats=None):
    cached = ideal._cache.get('local')
    if cached is None:
        cached = ideal._cache['local'] = standard_basis(ideal, stats=stats)
    return cached


def local_member(f, ideal):
    return mora_normal_form(f, _local_sb(ideal).basis).is_zero()


def tangent_cone(ideal):
    """Ideal of lowest forms of a standard basis (homogeneous)."""
    if ideal.is_homogeneous():
        return ideal
    sb = _local_sb(ideal)
    return Ideal(ideal.ring, tuple(g.lowest_form() for g in sb.basis))


def local_dimension(ideal):
    sb = _local_sb(ideal)
    if sb.is_unit():
        return -1
    return hilbert_data_monomial(sb.leading_ideal()).dimension


def local_multiplicity(ideal, stats=None):
    """Hilbert-Samuel multiplicity of the local quotient at the origin."""
    if ideal.is_homogeneous():
        if ideal.is_unit():
            raise UnitIdealError(f"{ideal} is the unit ideal")
        return multiplicity_graded(ideal)
    if _local_sb(ideal, stats).is_unit():
        raise UnitIdealError(f"{ideal} is the unit ideal at the origin")
    return multiplicity_graded(tangent_cone(ideal))


def local_colength(ideal):
    """Length of the local quotient at the origin; math.inf when dim > 0."""
    sb = _local_sb(ideal)
    if sb.is_unit():
        return 0
    data = hilbert_data_monomial(sb.leading_ideal())
    return math.inf if data.dimension > 0 else data.degree


# =========================
# CERTIFICATES
# =========================

def is_regular_at_origin(ideal):
    """Regular iff the linear parts of a standard basis have rank n - dim."""
    ring = ideal.ring
    sb = _local_sb(ideal)
    if sb.is_unit():
        return LocalCertificate(False, {'reason': 'unit ideal at the origin'})
    dim = hilbert_data_monomial(sb.leading_ideal()).dimension
    linear = [g.linear_part() for g in sb.basis]
    rows = []
    for lin in linear:
        row = [ring.field.zero] * ring.ngens
        for m, c in lin.items():
            row[m.index(1)] = c
        rows.append(row)
    r = rank(rows, ring.field)
    codim = ring.ngens - dim
    data = {
        'rank': r,
        'codim': codim,
        'dimension': dim,
        'linear_forms': [str(lin) for lin in linear if lin],
    }
    return LocalCertificate(r == codim, data)


def elimination_chain_certificate(ideal, targets):
    """Certify ring/I at the origin is a power series ring in the non-target variables.

    Generator k must be linear in targets[k] with a unit coefficient and vanish at
    the origin; the target is then removed from every later generator.
    """
    gens = list(ideal.generators)
    targets = list(targets)
    if len(gens) != len(targets):
        raise DegreeShapeError(f"{len(gens)} generators cannot pair with {len(targets)} targets")
    ring = ideal.ring
    for t in targets:
        ring.index(t)
    steps = []
    for k, target in enumerate(targets):
        g = gens[k]
        step = {'target': target, 'generator': str(g)}
        if g.degree_in(target) != 1:
            step['reason'] = f"degree {g.degree_in(target)} in {target}"
            steps.append(step)
            return LocalCertificate(False, {'steps': steps})
        unit = g.coefficient_in(target, 1)
        step['coefficient'] = str(unit)
        if unit.constant_term() == 0:
            step['reason'] = "coefficient is not a local unit"
            steps.append(step)
            return LocalCertificate(False, {'steps': steps})
        if g.constant_term() != 0:
            step['reason'] = "generator does not vanish at the origin"
            steps.append(step)
            return LocalCertificate(False, {'steps': steps})
        steps.append(step)
        for j in range(k + 1, len(gens)):
            gens[j] = pseudo_remainder(gens[j], g, target)
            if any(gens[j].degree_in(t) > 0 for t in targets[:k + 1]):
                return LocalCertificate(False, {'steps': steps, 'reason': 'eliminated target reappears'})
    remaining = [v for v in ring.variables if v not in targets]
    return LocalCertificate(True, {'steps': steps, 'power_series_in': remaining})
