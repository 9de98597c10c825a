import json
import time

from app.services.claim_runner import Claim, execute_claim, persist_failed_claim, run_claims
from app.services.deadline import check_deadline, time_budget
from app.services.report import FAILED, SKIPPED, VERIFIED, ClaimResult, VerificationReport


def _passes():
    return True, {'value': 4}


def _fails():
    return False, {'value': float('inf')}


def _raises():
    raise ValueError("boom")


def _spins():
    while True:
        check_deadline()
        time.sleep(0.005)


def test_statuses():
    assert execute_claim(Claim('a', 'Theorem 1', _passes)).status == VERIFIED
    failed = execute_claim(Claim('b', 'Theorem 1', _fails))
    assert failed.status == FAILED
    assert failed.witnesses == {'value': 'infinite'}
    crashed = execute_claim(Claim('c', 'Lemma 2', _raises))
    assert crashed.status == FAILED
    assert crashed.witnesses['error'] == "ValueError: boom"


def test_timeout_skips():
    result = execute_claim(Claim('slow', 'Lemma 4', _spins), timeout=0.05)
    assert result.status == SKIPPED
    assert 'timeout' in result.witnesses['reason']


def test_time_budget_without_limit():
    with time_budget(0):
        check_deadline()


def test_run_claims_keeps_order(tmp_path):
    claims = [Claim(f'claim.{i}', 'Remark', _passes if i % 2 else _fails) for i in range(6)]
    results = run_claims(claims, jobs=3, failed_dir=str(tmp_path))
    assert [r.claim_id for r in results] == [c.claim_id for c in claims]
    assert [r.status for r in results] == [FAILED, VERIFIED] * 3
    assert len(list(tmp_path.glob('failed_*_claim.*.json'))) == 3


def test_persist_failed_claim(tmp_path):
    result = ClaimResult('theorem1.multiplicity.split.p5', 'Theorem 1', FAILED, {'e': 3}, 12.5)
    path = persist_failed_claim(result, str(tmp_path))
    with open(path, encoding='utf-8') as f:
        data = json.load(f)
    assert data['claim_id'] == result.claim_id
    assert data['elapsed_ms'] == 12.5


def test_report():
    claims = [
        ClaimResult('b', 'Lemma 2', VERIFIED, {}, 3.0),
        ClaimResult('a', 'Remark', SKIPPED, {'reason': 'timeout after 1s'}, 1000.0),
    ]
    report = VerificationReport({'primes': [5]}, claims)
    assert [c.claim_id for c in report.claims] == ['a', 'b']
    assert report.verdict == VERIFIED
    assert report.counts() == {VERIFIED: 1, FAILED: 0, SKIPPED: 1}
    data = json.loads(report.to_json())
    assert data['schema_version'] == 1
    assert 'elapsed_ms' not in data['claims'][0]
    assert json.loads(report.to_json(timings=True))['claims'][1]['elapsed_ms'] == 3.0

    report = VerificationReport({}, claims + [ClaimResult('c', 'Corollary', FAILED)])
    assert report.verdict == FAILED
    assert [c.claim_id for c in report.failed()] == ['c']
