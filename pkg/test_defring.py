import pytest

from app.errors import CharacteristicError, PreconditionError
from app.services.defring import (
    I3_PRINTED_TEXT,
    CoefficientMode,
    DeformationCase,
    DeformationContext,
    all_claims,
    build_generators,
    build_ideal,
    build_J,
    check_eq3_consistency,
    check_identities,
    check_multiplicity,
    check_parameters,
    compute_multiplicity,
    derive_minor_ideal,
    run_full_verification,
    verify_identities_5_8,
    verify_irreducible_generically_reduced,
    verify_lemma4_graded,
    verify_modp_decomposition,
    verify_non_CM,
    verify_theorem2_replay,
)
from app.services.groebner import ideal_equal
from app.services.report import FAILED, VERIFIED

RAMIFIED = DeformationCase.RAMIFIED
INDECOMPOSABLE = DeformationCase.INDECOMPOSABLE
SPLIT = DeformationCase.SPLIT

PRIMES = [3, 5, 7, 11, 13]
EXPECTED = [(RAMIFIED, 1), (INDECOMPOSABLE, 2), (SPLIT, 4)]


def _case_id(value):
    return value.value if isinstance(value, DeformationCase) else None


def test_context_validation():
    with pytest.raises(CharacteristicError, match="p must be an odd prime"):
        DeformationContext(p=2)
    with pytest.raises(CharacteristicError):
        DeformationContext(p=5, mode=CoefficientMode.SYMBOLIC_V)


def test_generators_mod_p_split():
    ctx = DeformationContext(p=5, case=SPLIT)
    I1, _, _, I4 = build_generators(ctx)
    assert I1 == ctx.ring.parse("-x11^2 - x12*x21")
    assert I4 == ctx.ring.parse("x11*x21*y12 - 2*x12*x21*y11 + x11*x12*y21")


def test_unit_substitutions():
    ramified = DeformationContext(p=5, case=RAMIFIED)
    assert 'x12h' in ramified.ring.variables and 'x12' not in ramified.ring.variables
    assert build_J(ramified) == ramified.ring.parse("y12*x21 + 2*x11*y11 + (1 + x12h)*y21")
    indecomposable = DeformationContext(p=5, case=INDECOMPOSABLE)
    assert 'y12h' in indecomposable.ring.variables
    graded = DeformationContext(p=5, case=SPLIT, mode=CoefficientMode.GRADED_W)
    assert graded.ring.variables[-1] == 'w'


def test_raw_identities_at_v_zero():
    ctx = DeformationContext(p=7, case=SPLIT)
    I1, I2, I3, I4 = build_generators(ctx)
    J = build_J(ctx)
    x11, x12, x21, y11, y12, y21 = ctx.ring.gens()
    assert (I2 + x12 * J + y12 * I1).is_zero()
    assert (I3 - x21 * J - y21 * I1).is_zero()
    assert (I4 - x11 * J - 2 * y11 * I1).is_zero()


def test_mutated_i3_differs():
    ctx = DeformationContext(p=5, case=SPLIT)
    mutated = DeformationContext(p=5, case=SPLIT, mutate_i3=True)
    assert build_generators(ctx)[2] != build_generators(mutated)[2]
    assert build_generators(ctx)[0] == build_generators(mutated)[0]


def test_identities_claim():
    result = verify_identities_5_8()
    assert result.status == VERIFIED
    assert result.witnesses['eq5'] == 'member' and result.witnesses['eq7'] == 'member'


def test_perturbed_identity_fails_with_witness():
    ctx = DeformationContext(mode=CoefficientMode.SYMBOLIC_V)
    I1, I2, I3, _ = build_generators(ctx)
    x21, v, x11 = ctx.poly("x21"), ctx.poly("v"), ctx.poly("x11")
    ok, witnesses = check_identities(identities={'perturbed': x21 * I2 - (v + x11) * I3})
    assert not ok
    assert witnesses['perturbed']['member'] is False
    result = verify_identities_5_8(identities={'perturbed': x21 * I2 - (v + x11) * I3})
    assert result.status == FAILED
    assert result.witnesses['perturbed']['polynomial']


def test_mutated_identities_fail():
    ok, witnesses = check_identities(mutate_i3=True)
    assert not ok
    assert witnesses['eq5'] == 'member'
    assert witnesses['eq7'] != 'member'


def test_minor_ideal():
    ctx = DeformationContext(mode=CoefficientMode.SYMBOLIC_V, with_td=True)
    minors = derive_minor_ideal(ctx)
    assert len(minors) == 6
    assert ideal_equal(minors, build_ideal(ctx))
    with pytest.raises(PreconditionError):
        derive_minor_ideal(DeformationContext(p=5))


def test_eq3_consistency():
    ok, witnesses = check_eq3_consistency()
    assert ok
    assert witnesses['printed_differs'] and not witnesses['eq7_with_printed']
    ctx = DeformationContext(mode=CoefficientMode.SYMBOLIC_V, with_td=True)
    assert ctx.poly(I3_PRINTED_TEXT) != build_generators(ctx)[2]


@pytest.mark.parametrize("p", [3, 5, 13])
def test_modp_decomposition_split(p):
    result = verify_modp_decomposition(SPLIT, p)
    assert result.status == VERIFIED, result.witnesses


def test_non_cm_needs_unramified_case():
    with pytest.raises(PreconditionError):
        verify_non_CM(RAMIFIED, 5)


def test_claim_catalogue():
    claims = all_claims([5], (RAMIFIED,))
    ids = [c.claim_id for c in claims]
    assert len(ids) == len(set(ids))
    assert 'identities.eq5-8' in ids
    assert 'theorem2.regular.ramified.p5' in ids
    assert 'lemma4.ramified.p5' in ids
    assert not any(i.startswith('corollary.non-cm') for i in ids)
    unramified = [c.claim_id for c in all_claims([3], (SPLIT, INDECOMPOSABLE))]
    assert 'corollary.non-cm.split.p3' in unramified
    assert 'lemma4.graded.p3' in unramified


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("case, expected", EXPECTED, ids=_case_id)
def test_multiplicities(case, expected, p):
    assert compute_multiplicity(case, p) == expected


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("case, expected", EXPECTED, ids=_case_id)
def test_multiplicity_routes_agree(case, expected, p):
    ok, witnesses = check_multiplicity(case, p)
    assert ok, witnesses
    assert witnesses['tangent_cone_route'] == witnesses['replay_route'] == expected


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("case, expected", [(INDECOMPOSABLE, 2), (SPLIT, 4)], ids=_case_id)
def test_parameter_colengths(case, expected, p):
    ok, witnesses = check_parameters(case, p)
    assert ok, witnesses
    assert witnesses['colength'] == expected


@pytest.mark.parametrize("p", [3, 5, 7, 13])
def test_lemma4_graded(p):
    result = verify_lemma4_graded(p)
    assert result.status == VERIFIED, result.witnesses
    assert all(result.witnesses['homogeneous_degree_2'].values())
    assert result.witnesses['w_saturation_stable']


@pytest.mark.slow
@pytest.mark.parametrize("case", [RAMIFIED, INDECOMPOSABLE, SPLIT])
def test_theorem2_replay(case):
    results = verify_theorem2_replay(case, 5)
    assert results
    assert all(r.status == VERIFIED for r in results), [r.to_dict() for r in results]


@pytest.mark.slow
def test_indecomposable_parameter_ideal_is_the_alternative():
    results = {r.claim_id: r for r in verify_theorem2_replay(INDECOMPOSABLE, 5)}
    params = results['theorem2.parameters.indecomposable.p5'].witnesses
    assert params['colengths']['printed'] == 'infinite'
    assert params['colengths']['alternative'] == 2
    assert params['parameter_ideal'] == 'alternative'


@pytest.mark.slow
@pytest.mark.parametrize("case", [INDECOMPOSABLE, SPLIT])
def test_non_cm(case):
    result = verify_non_CM(case, 5)
    assert result.status == VERIFIED, result.witnesses
    assert result.witnesses['dim'] == 4
    assert result.witnesses['dim_submodule'] <= 3


@pytest.mark.slow
@pytest.mark.parametrize("case", [RAMIFIED, INDECOMPOSABLE, SPLIT])
def test_irreducible_generically_reduced(case):
    result = verify_irreducible_generically_reduced(case, 5)
    assert result.status == VERIFIED, result.witnesses
    assert result.witnesses['J^2_in_ideal'] is True


@pytest.mark.slow
def test_full_verification_at_five():
    report = run_full_verification([5], jobs=2)
    assert report.verdict == VERIFIED, [c.to_dict() for c in report.failed()]
    multiplicities = {
        case: report.claim(f'theorem1.multiplicity.{case.value}.p5').witnesses
        for case in DeformationCase
    }
    assert multiplicities[RAMIFIED]['tangent_cone_route'] == 1
    assert multiplicities[INDECOMPOSABLE]['tangent_cone_route'] == 2
    assert multiplicities[SPLIT]['tangent_cone_route'] == 4
    for witnesses in multiplicities.values():
        assert witnesses['tangent_cone_route'] == witnesses['replay_route']


@pytest.mark.slow
def test_negative_control_fails():
    report = run_full_verification([5], cases=(SPLIT,), mutate_i3=True)
    assert report.verdict == FAILED
    failed = {c.claim_id for c in report.failed()}
    assert 'identities.eq5-8' in failed
    assert 'lemma2.minor-ideal' in failed
    assert 'modp.decomposition.split.p5' in failed


@pytest.mark.slow
def test_report_is_reproducible():
    report_a = run_full_verification([3], cases=(SPLIT,))
    report_b = run_full_verification([3], cases=(SPLIT,))
    assert report_a.to_json() == report_b.to_json()
    assert 'elapsed_ms' not in report_a.to_json()
    assert 'elapsed_ms' in report_a.to_json(timings=True)
