"""
The deformation-ring layer: builds the four defining polynomials and J in each
coefficient mode and case, and turns every computational statement about them
into a Claim whose check runs on the algebra kernels.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, partial
from itertools import combinations, combinations_with_replacement

from app.errors import CharacteristicError, PreconditionError
from app.services.claim_runner import Claim, execute_claim, run_claims
from app.services.coeff import Field
from app.services.factor import (
    eliminate_linear,
    irreducible_by_unit_elimination,
    irreducible_linear_in_block,
    irreducible_monic_quadratic,
)
from app.services.groebner import Ideal, colon, ideal_equal, ideal_member, radical_member, saturate
from app.services.hilbert import colength, krull_dim
from app.services.local import (
    elimination_chain_certificate,
    is_regular_at_origin,
    local_colength,
    local_dimension,
    local_member,
    local_multiplicity,
)
from app.services.macaulay import macaulay_member
from app.services.poly import Ring
from app.services.report import VerificationReport

logger = logging.getLogger(__name__)


class DeformationCase(Enum):
    RAMIFIED = 'ramified'
    INDECOMPOSABLE = 'indecomposable'
    SPLIT = 'split'

    @property
    def is_unramified(self):
        return self is not DeformationCase.RAMIFIED


class CoefficientMode(Enum):
    SYMBOLIC_V = 'symbolic-v'
    MOD_P = 'mod-p'
    GRADED_W = 'graded-w'


EXPECTED_MULTIPLICITY = {
    DeformationCase.RAMIFIED: 1,
    DeformationCase.INDECOMPOSABLE: 2,
    DeformationCase.SPLIT: 4,
}

# =========================
# DEFINING POLYNOMIALS (source ring: x11 x12 x21 y11 y12 y21 v td)
# =========================
SOURCE_VARIABLES = ('x11', 'x12', 'x21', 'y11', 'y12', 'y21', 'v', 'td')
COORDINATES = ('x11', 'x12', 'x21', 'y11', 'y12', 'y21')

I1_TEXT = "(v + x11)*(v - x11) - x12*x21"
I2_TEXT = "(v + x11)^2*y12 - 2*(v + x11)*x12*y11 - x12^2*y21"
# middle term as produced by the minor det[v2 | M v2]
I3_TEXT = "x21^2*y12 - 2*x21*(v - x11)*y11 - (v - x11)^2*y21"
I3_PRINTED_TEXT = "x21^2*y12 - 2*x12*(v - x11)*y11 - (v - x11)^2*y21"
I3_MUTATED_TEXT = "x21^2*y12 + 2*x21*(v - x11)*y11 - (v - x11)^2*y21"
I4_TEXT = "(v + x11)*x21*y12 - 2*x12*x21*y11 - x12*(v - x11)*y21"
J_TEXT = "y12*x21 + 2*x11*y11 + x12*y21"

# graded replay: w and the x-coordinates carry degree 1, the y-coordinates 0
GRADED_WEIGHTS = {'x11': 1, 'x12': 1, 'x21': 1, 'y11': 0, 'y12': 0, 'y21': 0, 'w': 1}


@dataclass(frozen=True)
class DeformationContext:
    p: int = 0
    case: DeformationCase = DeformationCase.SPLIT
    mode: CoefficientMode = CoefficientMode.MOD_P
    with_td: bool = False
    mutate_i3: bool = False

    def __post_init__(self):
        if self.mode is CoefficientMode.SYMBOLIC_V:
            if self.p != 0:
                raise CharacteristicError("symbolic-v mode works over the rationals (p = 0)")
        else:
            Field.prime(self.p)

    @cached_property
    def field(self):
        return Field(self.p)

    @cached_property
    def unit_substitutions(self):
        """Coordinate -> hat variable, meaning coordinate = 1 + hat."""
        if self.mode is CoefficientMode.SYMBOLIC_V:
            return {}
        if self.case is DeformationCase.RAMIFIED:
            return {'x12': 'x12h'}
        if self.case is DeformationCase.INDECOMPOSABLE:
            return {'y12': 'y12h'}
        return {}

    @cached_property
    def ring(self):
        names = [self.unit_substitutions.get(n, n) for n in COORDINATES]
        if self.mode is CoefficientMode.SYMBOLIC_V:
            names.append('v')
            if self.with_td:
                names.append('td')
        elif self.mode is CoefficientMode.GRADED_W:
            names.append('w')
        return Ring(self.field, tuple(names))

    @cached_property
    def _source(self):
        return Ring(self.field, SOURCE_VARIABLES)

    @cached_property
    def _bindings(self):
        ring = self.ring
        bindings = {name: 1 + ring.gen(hat) for name, hat in self.unit_substitutions.items()}
        if self.mode is CoefficientMode.MOD_P:
            bindings['v'] = ring.zero()
        elif self.mode is CoefficientMode.GRADED_W:
            bindings['v'] = ring.gen('w')
        return bindings

    def poly(self, text):
        """Parse in the source coordinates and apply the mode and case substitutions."""
        return self._source.parse(text).substitute(self._bindings, self.ring)

    def weights(self):
        return tuple(GRADED_WEIGHTS.get(n, 0) for n in self.ring.variables)

    def label(self):
        if self.mode is CoefficientMode.SYMBOLIC_V:
            return 'QQ'
        return f"{self.case.value}.p{self.p}"


def build_generators(ctx):
    i3 = I3_MUTATED_TEXT if ctx.mutate_i3 else I3_TEXT
    return tuple(ctx.poly(t) for t in (I1_TEXT, I2_TEXT, i3, I4_TEXT))


def build_J(ctx):
    return ctx.poly(J_TEXT)


def build_ideal(ctx):
    return Ideal(ctx.ring, build_generators(ctx))


def _det(u, w):
    return u[0] * w[1] - u[1] * w[0]


def minor_vectors(ctx):
    """v1, v2, M*v1, M*v2 with M the generic matrix of delta."""
    if ctx.mode is not CoefficientMode.SYMBOLIC_V or not ctx.with_td:
        raise PreconditionError("the minor ideal needs symbolic v and t_delta")
    P = ctx.poly
    v1 = (P("-x12"), P("v + x11"))
    v2 = (P("v - x11"), P("-x21"))
    M = ((P("1 + td + y11"), P("y12")), (P("y21"), P("1 + td - y11")))

    def apply(u):
        return (M[0][0] * u[0] + M[0][1] * u[1], M[1][0] * u[0] + M[1][1] * u[1])

    return [v1, v2, apply(v1), apply(v2)]


def derive_minor_ideal(ctx):
    vectors = minor_vectors(ctx)
    return Ideal(ctx.ring, tuple(_det(a, b) for a, b in combinations(vectors, 2)))


def _monomials(ring, degree):
    out = []
    for combo in combinations_with_replacement(range(ring.ngens), degree):
        exp = [0] * ring.ngens
        for i in combo:
            exp[i] += 1
        out.append(ring.monomial(exp))
    return out


def _membership(checks, ideal, member=ideal_member):
    """Check named polynomials for membership; failures carry the polynomial."""
    witnesses, ok = {}, True
    for name, f in checks.items():
        if member(f, ideal):
            witnesses[name] = 'member'
        else:
            ok = False
            witnesses[name] = {'member': False, 'polynomial': f}
    return ok, witnesses


def _ctx(case, p, mode=CoefficientMode.MOD_P, mutate_i3=False):
    return DeformationContext(p=p, case=case, mode=mode, mutate_i3=mutate_i3)


# =========================
# IDENTITIES AND LEMMA 2 (rationals, symbolic v)
# =========================

def identity_polynomials(ctx):
    I1, I2, I3, I4 = build_generators(ctx)
    x11, x12, x21, v = (ctx.poly(n) for n in ('x11', 'x12', 'x21', 'v'))
    return {
        'eq5': x21 * I2 - (v + x11) * I4,
        'eq6': (v - x11) * I2 - x12 * I4,
        'eq7': x21 * I4 - (v + x11) * I3,
        'eq8': (v - x11) * I4 - x12 * I3,
    }


def check_identities(mutate_i3=False, identities=None):
    ctx = DeformationContext(mode=CoefficientMode.SYMBOLIC_V, mutate_i3=mutate_i3)
    principal = Ideal(ctx.ring, (build_generators(ctx)[0],))
    return _membership(identities or identity_polynomials(ctx), principal)


def check_identity_negative_control(mutate_i3=False):
    ctx = DeformationContext(mode=CoefficientMode.SYMBOLIC_V, mutate_i3=mutate_i3)
    I1, I2, I3, _ = build_generators(ctx)
    perturbed = ctx.poly("x21") * I2 - ctx.poly("v + x11") * I3
    member = ideal_member(perturbed, Ideal(ctx.ring, (I1,)))
    return not member, {'perturbed': 'x21*I2 - (v + x11)*I3', 'rejected': not member}


def check_minor_ideal(mutate_i3=False):
    ctx = DeformationContext(mode=CoefficientMode.SYMBOLIC_V, with_td=True, mutate_i3=mutate_i3)
    I1, I2, I3, _ = build_generators(ctx)
    minors = derive_minor_ideal(ctx)
    v1, v2, Mv1, Mv2 = minor_vectors(ctx)
    equal = ideal_equal(minors, build_ideal(ctx))
    witnesses = {
        'minors': len(minors),
        'det_v1_v2_is_minus_I1': _det(v1, v2) == -I1,
        'det_v1_Mv1_is_minus_I2': _det(v1, Mv1) == -I2,
        'det_v2_Mv2_is_minus_I3': _det(v2, Mv2) == -I3,
        'ideal_equal': equal,
    }
    return equal, witnesses


def check_eq3_consistency(mutate_i3=False):
    """The minor-derived I3 is the one in use, and the printed form breaks Eq. (7)."""
    ctx = DeformationContext(mode=CoefficientMode.SYMBOLIC_V, with_td=True, mutate_i3=mutate_i3)
    _, v2, _, Mv2 = minor_vectors(ctx)
    derived = -_det(v2, Mv2)
    engine = build_generators(ctx)[2]
    printed = ctx.poly(I3_PRINTED_TEXT)
    I1, _, _, I4 = build_generators(ctx)
    principal = Ideal(ctx.ring, (I1,))
    x21, v, x11 = ctx.poly("x21"), ctx.poly("v"), ctx.poly("x11")
    engine_eq7 = ideal_member(x21 * I4 - (v + x11) * engine, principal)
    printed_eq7 = ideal_member(x21 * I4 - (v + x11) * printed, principal)
    witnesses = {
        'derived_I3': derived,
        'printed_I3': printed,
        'engine_uses_derived': engine == derived,
        'printed_differs': printed != derived,
        'eq7_with_derived': engine_eq7,
        'eq7_with_printed': printed_eq7,
    }
    return engine == derived and engine_eq7 and not printed_eq7, witnesses


# =========================
# MOD p CLAIMS
# =========================

def check_modp_decomposition(case, p, mutate_i3=False):
    ctx = _ctx(case, p, mutate_i3=mutate_i3)
    I1, I2, I3, I4 = build_generators(ctx)
    J = build_J(ctx)
    x11, x12, x21, y11, y12, y21 = (ctx.poly(n) for n in COORDINATES)
    decomposed = Ideal(ctx.ring, (I1, x11 * J, x12 * J, x21 * J))
    equal = ideal_equal(build_ideal(ctx), decomposed)
    raw = {
        'I2 + x12*J + y12*I1': I2 + x12 * J + y12 * I1,
        'I3 - x21*J - y21*I1': I3 - x21 * J - y21 * I1,
        'I4 - x11*J - 2*y11*I1': I4 - x11 * J - 2 * y11 * I1,
    }
    witnesses = {'ideal_equal': equal, 'raw_expansions': {k: str(v) for k, v in raw.items()}}
    return equal, witnesses


def parameter_candidates(ctx):
    if ctx.case is DeformationCase.INDECOMPOSABLE:
        return {
            'printed': ('x12', 'x21', 'y11', 'y12h'),
            'alternative': ('x12', 'y11', 'y12h', 'y21'),
        }
    if ctx.case is DeformationCase.SPLIT:
        return {'printed': ('x12 - x21', 'x12 - y12', 'x12 - y21', 'y11')}
    raise PreconditionError("parameter ideals are only used in the unramified cases")


def _parameter_ideal(ctx, generators):
    return Ideal(ctx.ring, tuple(ctx.ring.parse(g) for g in generators))


def genuine_parameter_ideal(ctx):
    """First candidate whose quotient together with ideal + J has finite length."""
    base = build_ideal(ctx) + [build_J(ctx)]
    lengths = {}
    chosen = None
    for name, gens in parameter_candidates(ctx).items():
        q = _parameter_ideal(ctx, gens)
        length = local_colength(base + q)
        lengths[name] = length
        if chosen is None and length != float('inf'):
            chosen = (name, q, length)
    return chosen, lengths


def check_multiplicity(case, p, mutate_i3=False):
    """Tangent-cone multiplicity against the colength / regularity replay."""
    ctx = _ctx(case, p, mutate_i3=mutate_i3)
    ideal = build_ideal(ctx)
    stats = {}
    tangent = local_multiplicity(ideal, stats=stats)
    if case is DeformationCase.RAMIFIED:
        cert = is_regular_at_origin(Ideal(ctx.ring, (build_generators(ctx)[0], build_J(ctx))))
        replay = 1 if cert else None
        route = 'regular local ring'
    else:
        chosen, _ = genuine_parameter_ideal(ctx)
        replay = chosen[2] if chosen else None
        route = f"colength with the {chosen[0]} parameter ideal" if chosen else 'no parameter ideal'
    expected = EXPECTED_MULTIPLICITY[case]
    witnesses = {
        'tangent_cone_route': tangent,
        'replay_route': replay,
        'replay_method': route,
        'expected': expected,
        'mora_max_steps': stats.get('max_steps', 0),
    }
    return tangent == replay == expected, witnesses


def check_regular_ramified(p, mutate_i3=False):
    ctx = _ctx(DeformationCase.RAMIFIED, p, mutate_i3=mutate_i3)
    I1, I2, I3, I4 = build_generators(ctx)
    J = build_J(ctx)
    pair = Ideal(ctx.ring, (I1, J))
    ideal = build_ideal(ctx)
    cert = is_regular_at_origin(pair)
    chain = elimination_chain_certificate(pair, ('x21', 'y21'))
    ok_pres, presentation = _membership({'I2': I2, 'I3': I3, 'I4': I4}, pair, local_member)
    j_in_ideal = local_member(J, ideal)
    witnesses = {
        'regular': cert.granted,
        'linear_rank': cert.data.get('rank'),
        'dimension': cert.data.get('dimension'),
        'elimination_chain': chain.granted,
        'power_series_in': chain.data.get('power_series_in', []),
        'generators_in_(I1,J)': presentation,
        'J_in_ideal': j_in_ideal,
    }
    ok = cert.granted and cert.data.get('dimension') == 4 and chain.granted and ok_pres and j_in_ideal
    return ok, witnesses


def check_complete_intersection(case, p, mutate_i3=False):
    ctx = _ctx(case, p, mutate_i3=mutate_i3)
    I1, I2, I3, I4 = build_generators(ctx)
    J = build_J(ctx)
    pair = Ideal(ctx.ring, (I1, J))
    ok_pres, presentation = _membership({'I2': I2, 'I3': I3, 'I4': I4}, pair, local_member)
    dim = local_dimension(pair)
    equations = len(pair)
    witnesses = {
        'dimension': dim,
        'ambient': ctx.ring.ngens,
        'equations': equations,
        'ideal_plus_J_is_(I1,J)': presentation,
    }
    return ok_pres and dim == 4 and ctx.ring.ngens - dim == equations, witnesses


def check_parameters(case, p, mutate_i3=False):
    ctx = _ctx(case, p, mutate_i3=mutate_i3)
    base = build_ideal(ctx) + [build_J(ctx)]
    ring = ctx.ring
    m = Ideal(ring, tuple(ring.gens()))
    if case is DeformationCase.INDECOMPOSABLE:
        chosen, lengths = genuine_parameter_ideal(ctx)
        witnesses = {'colengths': lengths}
        if chosen is None:
            return False, witnesses
        name, q, length = chosen
        witnesses['parameter_ideal'] = name
        # q*m contains m^2 modulo the ideal, locally
        target = base + (q * m)
        ok_sq, squares = _membership({str(f): f for f in _monomials(ring, 2)}, target, local_member)
        witnesses['m^2 in q*m'] = ok_sq if ok_sq else squares
        witnesses['colength'] = length
        return ok_sq and length == 2, witnesses
    if case is DeformationCase.SPLIT:
        q = _parameter_ideal(ctx, parameter_candidates(ctx)['printed'])
        length = colength(base + q, at_origin=True)
        # homogeneous: degree-3 linear algebra decides membership exactly
        target = base + (q * m * m)
        ok_cube, cubes = _membership(
            {str(f): f for f in _monomials(ring, 3)}, target,
            lambda f, I: macaulay_member(f, I, 3))
        witnesses = {
            'colength': length,
            'm^3 in q*m^2': ok_cube if ok_cube else cubes,
        }
        return ok_cube and length == 4, witnesses
    raise PreconditionError("parameter ideals are only used in the unramified cases")


def _annihilator_dims(ctx):
    ideal = build_ideal(ctx)
    J = build_J(ctx)
    ann = colon(ideal, J)
    contains = {n: ideal_member(ctx.poly(n), ann) for n in ('x11', 'x12', 'x21')}
    return ideal, J, ann, contains, local_dimension(ann), local_dimension(ideal)


def check_annihilator(case, p, mutate_i3=False):
    if not case.is_unramified:
        raise PreconditionError("the annihilator step needs an unramified case")
    ctx = _ctx(case, p, mutate_i3=mutate_i3)
    _, _, ann, contains, dim_ann, dim = _annihilator_dims(ctx)
    witnesses = {
        'annihilator_contains': contains,
        'dim_quotient_by_annihilator': dim_ann,
        'dim': dim,
        'annihilator_generators': len(ann),
    }
    return all(contains.values()) and dim_ann <= 3 and dim == 4, witnesses


def check_non_cm(case, p, mutate_i3=False):
    if not case.is_unramified:
        raise PreconditionError("the non-Cohen-Macaulay corollary needs an unramified case")
    ctx = _ctx(case, p, mutate_i3=mutate_i3)
    ideal, J, _, contains, dim_ann, dim = _annihilator_dims(ctx)
    j_nonzero = not local_member(J, ideal)
    witnesses = {
        'J_not_in_ideal': j_nonzero,
        'dim_submodule': dim_ann,
        'dim': dim,
        'annihilator_contains': contains,
    }
    return j_nonzero and all(contains.values()) and dim_ann < dim == 4, witnesses


def check_irreducible_reduced(case, p, mutate_i3=False):
    ctx = _ctx(case, p, mutate_i3=mutate_i3)
    I1 = build_generators(ctx)[0]
    J = build_J(ctx)
    ideal = build_ideal(ctx)
    pair = Ideal(ctx.ring, (I1, J))
    witnesses = {
        'J^2_in_ideal': ideal_member(J * J, ideal),
        'J_in_radical': radical_member(J, ideal),
    }
    if case is DeformationCase.RAMIFIED:
        cert = irreducible_by_unit_elimination(pair, ('x21', 'y21'))
        witnesses['domain'] = cert.witnesses()
        # J already lies in the ideal locally, so R/pi is the domain itself
        witnesses['J_in_ideal_locally'] = local_member(J, ideal)
        ok = cert.granted and cert.geometric and witnesses['J_in_ideal_locally']
    else:
        if case is DeformationCase.INDECOMPOSABLE:
            quadratic = eliminate_linear(I1, J, 'x21')
            cert = irreducible_monic_quadratic(quadratic, 'x11')
            witnesses['eliminated'] = 'x21'
        else:
            y21 = ctx.poly('y21')
            stable = ideal_equal(saturate(pair, y21), pair)
            witnesses['y21_saturation_stable'] = stable
            quadratic = eliminate_linear(I1, J, 'x12')
            cert = irreducible_monic_quadratic(quadratic, 'x11', unit=y21)
            witnesses['eliminated'] = 'x12'
        witnesses['quadratic'] = quadratic
        witnesses['certificate'] = cert.witnesses()
        witnesses['certificate_rechecks'] = cert.recheck()
        # Ann(J) is not inside (ideal, J): x11 kills J but is not in it
        witnesses['x11_not_in_ideal_plus_J'] = not local_member(ctx.poly('x11'), ideal + [J])
        ok = (cert.granted and cert.geometric and witnesses['certificate_rechecks']
              and witnesses['x11_not_in_ideal_plus_J']
              and witnesses.get('y21_saturation_stable', True))
    ok = ok and witnesses['J^2_in_ideal'] and witnesses['J_in_radical']
    return ok, witnesses


# =========================
# LEMMA 4 (graded replay with v -> w)
# =========================

def check_lemma4_graded(p, mutate_i3=False):
    ctx = _ctx(DeformationCase.SPLIT, p, CoefficientMode.GRADED_W, mutate_i3)
    I1, I2, I3, I4 = build_generators(ctx)
    ideal = build_ideal(ctx)
    weights = ctx.weights()
    homogeneous = {}
    for name, g in zip(('I1', 'I2', 'I3', 'I4'), (I1, I2, I3, I4)):
        lead = sum(wt * e for wt, e in zip(weights, g.leading_monomial()))
        homogeneous[name] = g.is_homogeneous(weights) and lead == 2
    # w lives only in the graded ring, not in the source text ring
    x12, w = ctx.poly('x12'), ctx.ring.gen('w')
    sat_x12 = ideal_equal(saturate(ideal, x12), ideal)
    pair_sat = ideal_equal(saturate(Ideal(ctx.ring, (I1, I2)), x12), ideal)
    cert_i2 = irreducible_linear_in_block(I2, ('y11', 'y12', 'y21'))
    cert_i1 = irreducible_linear_in_block(I1, ('x21',))
    sat_w = ideal_equal(saturate(ideal, w), ideal)
    witnesses = {
        'homogeneous_degree_2': homogeneous,
        'x12_saturation_stable': sat_x12,
        'pair_saturation_is_ideal': pair_sat,
        'I2_primitive_linear': cert_i2.witnesses(),
        'I1_primitive_linear': cert_i1.witnesses(),
        'w_saturation_stable': sat_w,
    }
    ok = all(homogeneous.values()) and sat_x12 and pair_sat and cert_i2.granted and cert_i1.granted and sat_w
    return ok, witnesses


def check_lemma4_ramified(p, mutate_i3=False):
    ctx = _ctx(DeformationCase.RAMIFIED, p, CoefficientMode.GRADED_W, mutate_i3)
    I1, I2, I3, I4 = build_generators(ctx)
    pair = Ideal(ctx.ring, (I1, I2))
    chain = elimination_chain_certificate(pair, ('x21', 'y21'))
    ok_mem, members = _membership({'I3': I3, 'I4': I4}, pair, local_member)
    witnesses = {
        'elimination_chain': chain.granted,
        'power_series_in': chain.data.get('power_series_in', []),
        'I3_I4_in_(I1,I2)': members,
    }
    return chain.granted and ok_mem, witnesses


# =========================
# CLAIM CATALOGUE
# =========================

def global_claims(mutate_i3=False):
    return [
        Claim('identities.eq5-8', "Remark, Eqs. (5)-(8)", partial(check_identities, mutate_i3)),
        Claim('identities.negative-control', "Remark, Eqs. (5)-(8), perturbed",
              partial(check_identity_negative_control, mutate_i3)),
        Claim('lemma2.minor-ideal', "Lemma 2", partial(check_minor_ideal, mutate_i3)),
        Claim('eq3.minor-consistency', "Eq. (3) against Lemma 2", partial(check_eq3_consistency, mutate_i3)),
    ]


def prime_claims(p, cases, mutate_i3=False):
    claims = []
    if any(c.is_unramified for c in cases):
        claims.append(Claim(f'lemma4.graded.p{p}', "Lemma 4, gr_I R", partial(check_lemma4_graded, p, mutate_i3)))
    if DeformationCase.RAMIFIED in cases:
        claims.append(Claim(f'lemma4.ramified.p{p}', "Lemma 4, ramified case",
                            partial(check_lemma4_ramified, p, mutate_i3)))
    return claims


def case_claims(case, p, mutate_i3=False):
    tag = f"{case.value}.p{p}"
    claims = [
        Claim(f'modp.decomposition.{tag}', "Eqs. (J2)-(J4)", partial(check_modp_decomposition, case, p, mutate_i3)),
        Claim(f'theorem1.multiplicity.{tag}', "Theorem 1 / Theorem 2", partial(check_multiplicity, case, p, mutate_i3)),
        Claim(f'proposition.irreducible-reduced.{tag}', "Proposition, Lemma 5",
              partial(check_irreducible_reduced, case, p, mutate_i3)),
    ]
    if case is DeformationCase.RAMIFIED:
        claims.append(Claim(f'theorem2.regular.{tag}', "Theorem 2, ramified case",
                            partial(check_regular_ramified, p, mutate_i3)))
    else:
        claims += [
            Claim(f'theorem2.complete-intersection.{tag}', "Theorem 2, R/(pi,J)",
                  partial(check_complete_intersection, case, p, mutate_i3)),
            Claim(f'theorem2.parameters.{tag}', "Theorem 2, parameter ideal q",
                  partial(check_parameters, case, p, mutate_i3)),
            Claim(f'theorem2.annihilator.{tag}', "Theorem 2, sequence (s1)",
                  partial(check_annihilator, case, p, mutate_i3)),
            Claim(f'corollary.non-cm.{tag}', "Corollary", partial(check_non_cm, case, p, mutate_i3)),
        ]
    return claims


def all_claims(primes, cases=tuple(DeformationCase), mutate_i3=False):
    cases = tuple(cases)
    claims = global_claims(mutate_i3)
    for p in primes:
        claims += prime_claims(p, cases, mutate_i3)
        for case in cases:
            claims += case_claims(case, p, mutate_i3)
    return claims


def _validate_primes(primes):
    primes = sorted(set(int(p) for p in primes))
    for p in primes:
        Field.prime(p)
    return primes


def run_full_verification(primes, cases=tuple(DeformationCase), jobs=1, timeout=0,
                          mutate_i3=False, failed_dir=None):
    primes = _validate_primes(primes)
    cases = tuple(cases)
    claims = all_claims(primes, cases, mutate_i3)
    logger.info("Verifying %d claims for cases %s at primes %s",
                len(claims), ", ".join(c.value for c in cases), primes)
    results = run_claims(claims, jobs=jobs, timeout=timeout, failed_dir=failed_dir)
    context = {
        'primes': primes,
        'cases': [c.value for c in cases],
        'mutate_i3': mutate_i3,
        'expected_multiplicity': {c.value: EXPECTED_MULTIPLICITY[c] for c in cases},
    }
    report = VerificationReport(context, results)
    logger.info("Verdict: %s (%s)", report.verdict, report.counts())
    return report


# =========================
# SINGLE-CLAIM ENTRY POINTS
# =========================

def verify_identities_5_8(mutate_i3=False, identities=None):
    return execute_claim(Claim('identities.eq5-8', "Remark, Eqs. (5)-(8)",
                               partial(check_identities, mutate_i3, identities)))


def verify_modp_decomposition(case, p, mutate_i3=False):
    return execute_claim(case_claims(case, p, mutate_i3)[0])


def compute_multiplicity(case, p):
    return local_multiplicity(build_ideal(_ctx(case, p)))


def verify_theorem2_replay(case, p, mutate_i3=False):
    return [execute_claim(c) for c in case_claims(case, p, mutate_i3) if c.claim_id.startswith('theorem2.')]


def verify_non_CM(case, p, mutate_i3=False):
    if not case.is_unramified:
        raise PreconditionError("the non-Cohen-Macaulay corollary needs an unramified case")
    return execute_claim(Claim(f'corollary.non-cm.{case.value}.p{p}', "Corollary",
                               partial(check_non_cm, case, p, mutate_i3)))


def verify_irreducible_generically_reduced(case, p, mutate_i3=False):
    return execute_claim(Claim(f'proposition.irreducible-reduced.{case.value}.p{p}', "Proposition, Lemma 5",
                               partial(check_irreducible_reduced, case, p, mutate_i3)))


def verify_lemma4_graded(p, mutate_i3=False):
    return execute_claim(Claim(f'lemma4.graded.p{p}', "Lemma 4, gr_I R", partial(check_lemma4_graded, p, mutate_i3)))


def krull_dim_mod_p(case, p):
    return krull_dim(build_ideal(_ctx(case, p)))
