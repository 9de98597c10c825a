import json
import os

import pytest
from click.testing import CliRunner

from app.cli import cli
from app.services.report import VerificationReport

IDEALS = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data', 'ideals')


def ideal_path(name):
    return os.path.join(IDEALS, name)


@pytest.fixture
def runner():
    return CliRunner()


def write(tmp_path, text, name='input.ideal'):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_gb_of_coordinate_ideal(runner, tmp_path):
    path = write(tmp_path, "ring 0 x y; order degrevlex\nx\ny\n")
    result = runner.invoke(cli, ['gb', path])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "ring 0 x y; order degrevlex"
    assert sorted(lines[1:]) == ["x", "y"]


def test_gb_twisted_cubic(runner, tmp_path):
    out = tmp_path / "basis.ideal"
    result = runner.invoke(cli, ['gb', ideal_path('twisted_cubic.ideal'), '-o', str(out)])
    assert result.exit_code == 0
    assert "y^3 - z^2" in out.read_text().splitlines()


def test_gb_is_deterministic(runner):
    first = runner.invoke(cli, ['gb', ideal_path('split_p5.ideal')]).output
    second = runner.invoke(cli, ['gb', ideal_path('split_p5.ideal')]).output
    assert first == second


def test_malformed_header(runner, tmp_path):
    path = write(tmp_path, "ring x y\nx\n")
    result = runner.invoke(cli, ['gb', path])
    assert result.exit_code == 2
    assert "line 1" in result.output


def test_bad_polynomial_line(runner, tmp_path):
    path = write(tmp_path, "ring 5 x y; order lex\nx +\n")
    result = runner.invoke(cli, ['gb', path])
    assert result.exit_code == 2
    assert "line 2" in result.output


def test_even_characteristic_in_file(runner, tmp_path):
    path = write(tmp_path, "ring 2 x; order lex\nx\n")
    result = runner.invoke(cli, ['mult', path])
    assert result.exit_code == 2
    assert "odd prime" in result.output


def test_mult(runner):
    result = runner.invoke(cli, ['mult', ideal_path('split_p5.ideal')])
    assert result.exit_code == 0
    assert result.output.strip() == "dim 4, e 4"
    result = runner.invoke(cli, ['mult', ideal_path('double_line.ideal')])
    assert result.output.strip() == "dim 1, e 2"
    result = runner.invoke(cli, ['mult', ideal_path('fat_point.ideal')])
    assert result.output.strip() == "dim 0, length 4"


def test_mult_inhomogeneous_needs_local(runner, tmp_path):
    path = write(tmp_path, "ring 0 x y; order degrevlex\ny^2 - x^3 - x^2\n")
    result = runner.invoke(cli, ['mult', path])
    assert result.exit_code == 2
    assert "--local" in result.output
    result = runner.invoke(cli, ['mult', '--local', path])
    assert result.exit_code == 0
    assert result.output.strip() == "dim 1, e 2"


@pytest.mark.slow
def test_mult_local_indecomposable(runner):
    result = runner.invoke(cli, ['mult', '--local', ideal_path('indecomposable_p5.ideal')])
    assert result.exit_code == 0
    assert result.output.strip() == "dim 4, e 2"


def test_verify_paper_rejects_even_prime(runner):
    result = runner.invoke(cli, ['verify-paper', '--prime', '2'])
    assert result.exit_code == 2
    assert "p must be an odd prime" in result.output


def test_verify_paper_rejects_unknown_case(runner):
    result = runner.invoke(cli, ['verify-paper', '--case', 'crystalline'])
    assert result.exit_code == 2


@pytest.mark.slow
def test_verify_paper_all_cases(runner, tmp_path):
    report_path = tmp_path / "report.json"
    result = runner.invoke(cli, ['verify-paper', '--case', 'all', '--prime', '5', '--report', str(report_path)])
    assert result.exit_code == 0, result.output
    report = json.loads(report_path.read_text())
    assert report['verdict'] == 'verified'
    e = {c['claim_id']: c['witnesses']['tangent_cone_route']
         for c in report['claims'] if c['claim_id'].startswith('theorem1.multiplicity.')}
    assert e == {
        'theorem1.multiplicity.indecomposable.p5': 2,
        'theorem1.multiplicity.ramified.p5': 1,
        'theorem1.multiplicity.split.p5': 4,
    }


@pytest.mark.slow
def test_verify_paper_split_two_primes(runner, tmp_path):
    report_path = tmp_path / "report.json"
    result = runner.invoke(cli, ['verify-paper', '--case', 'split', '--prime', '3', '--prime', '13',
                                 '--report', str(report_path), '--jobs', '2'])
    assert result.exit_code == 0, result.output
    assert "theorem1.multiplicity.split.p3: e = 4" in result.output
    assert "theorem1.multiplicity.split.p13: e = 4" in result.output


@pytest.mark.slow
def test_verify_paper_negative_control(runner):
    result = runner.invoke(cli, ['verify-paper', '--case', 'split', '--prime', '5', '--mutate-i3'])
    assert result.exit_code == 1
    assert "FAILED identities.eq5-8" in result.output


@pytest.mark.slow
def test_report_byte_identical(runner, tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for path in paths:
        runner.invoke(cli, ['verify-paper', '--case', 'ramified', '--prime', '3', '--report', str(path)])
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_gb_rejects_undecodable_file(runner, tmp_path):
    path = tmp_path / "binary.ideal"
    path.write_bytes(b"ring 0 x; order lex\n\xff\n")
    result = runner.invoke(cli, ['gb', str(path)])
    assert result.exit_code == 2
    assert "not UTF-8" in result.output
    assert "byte 20" in result.output


def test_verify_paper_unwritable_report(runner, tmp_path, monkeypatch):
    monkeypatch.setattr('app.cli.run_full_verification',
                        lambda *args, **kwargs: VerificationReport({'primes': [3]}, []))
    report_path = tmp_path / "missing" / "report.json"
    result = runner.invoke(cli, ['verify-paper', '--case', 'ramified', '--prime', '3',
                                 '--report', str(report_path)])
    assert result.exit_code == 2
    assert "cannot write report" in result.output
