import time

import pytest

from app import create_app
from app.routes import verify
from app.services.report import VerificationReport


@pytest.fixture
def client():
    app = create_app()
    app.config['TESTING'] = True
    return app.test_client()


def test_gb(client):
    resp = client.post("/gb", data="ring 0 x y; order degrevlex\nx + y\ny\n")
    assert resp.status_code == 200
    body = resp.get_json()
    assert body["header"] == "ring 0 x y; order degrevlex"
    assert sorted(body["basis"]) == ["x", "y"]


def test_mult(client):
    resp = client.post("/mult", data="ring 7 x y; order degrevlex\nx^2\ny^2\n")
    assert resp.get_json()["result"] == "dim 0, length 4"
    resp = client.post("/mult?local=1", data="ring 0 x y; order degrevlex\ny^2 - x^3 - x^2\n")
    assert resp.status_code == 200
    assert resp.get_json() == {"result": "dim 1, e 2", "local": True}


def test_input_errors_are_400(client):
    resp = client.post("/gb", data="ring x y\nx\n")
    assert resp.status_code == 400
    assert "line 1" in resp.get_json()["error"]
    resp = client.post("/mult", data="ring 0 x y; order degrevlex\ny - x^2\n")
    assert resp.status_code == 400
    assert resp.get_data(as_text=True)
    assert client.post("/gb", data="").status_code == 400


def test_verify_batch_validation(client):
    assert client.post("/verify_batch", data="not json").status_code == 400
    resp = client.post("/verify_batch", json={"cases": ["crystalline"]})
    assert resp.status_code == 400
    resp = client.post("/verify_batch", json={"primes": "5"})
    assert resp.status_code == 400


def test_unknown_job(client):
    assert client.get("/jobs/nope").status_code == 404


def test_verify_batch_runs_in_worker(client, monkeypatch):
    calls = []

    def fake_run(primes, cases, **kwargs):
        calls.append((primes, cases, kwargs['mutate_i3']))
        return VerificationReport({'primes': primes}, [])

    monkeypatch.setattr(verify, 'run_full_verification', fake_run)
    verify.start_worker()
    resp = client.post("/verify_batch", json={"cases": ["split"], "primes": [5]})
    assert resp.status_code == 202
    job_id = resp.get_json()["job_id"]

    deadline = time.time() + 5
    status = None
    while time.time() < deadline:
        status = client.get(f"/jobs/{job_id}").get_json()
        if status["status"] == "done":
            break
        time.sleep(0.02)
    assert status["status"] == "done"
    assert status["verdict"] == "verified"
    assert status["report"]["context"] == {"primes": [5]}
    assert calls[0][0] == [5] and calls[0][1][0].value == "split"


def test_process_job_rejects_even_prime():
    verify.process_job("job-even", {'cases': [], 'primes': [2], 'mutate_i3': False, 'timings': False})
    entry = verify.JOBS.get("job-even")
    assert entry["status"] == "error"
    assert "odd prime" in entry["error"]
