from flask import Blueprint, request, jsonify
import logging
import queue
import threading
import traceback
import uuid

from cachelib import SimpleCache

from app import config
from app.cli import groebner_lines, multiplicity_line
from app.errors import AlgebraError
from app.services.defring import DeformationCase, run_full_verification
from app.services.ideal_file import parse_ideal_text

logger = logging.getLogger(__name__)

verify_bp = Blueprint('verify', __name__)

# =========================
# JOB QUEUE FOR ASYNC VERIFICATION
# =========================
# Verification runs take minutes, so /verify_batch answers 202 and a worker drains this
JOB_QUEUE = queue.Queue()
JOBS = SimpleCache(threshold=500, default_timeout=config.JOB_CACHE_TTL)

_worker_lock = threading.Lock()
_worker = None


def _body_text():
    text = request.get_data(as_text=True)
    if not text.strip():
        raise AlgebraError("request body must be an ideal file")
    return text


@verify_bp.route("/gb", methods=["POST"])
def gb():
    try:
        ideal = parse_ideal_text(_body_text())
        text = groebner_lines(ideal)
    except AlgebraError as e:
        return jsonify({"error": str(e)}), 400
    lines = text.splitlines()
    return jsonify({"header": lines[0], "basis": lines[1:]}), 200


@verify_bp.route("/mult", methods=["POST"])
def mult():
    local = request.args.get('local', '0').lower() in ('1', 'true', 'yes')
    try:
        ideal = parse_ideal_text(_body_text())
        line = multiplicity_line(ideal, local)
    except AlgebraError as e:
        return jsonify({"error": str(e)}), 400
    return jsonify({"result": line, "local": local}), 200


def _parse_job(payload):
    cases = payload.get('cases', ['all'])
    if isinstance(cases, str):
        cases = [cases]
    if 'all' in cases:
        cases = [c.value for c in DeformationCase]
    try:
        cases = [DeformationCase(c) for c in cases]
    except ValueError:
        raise AlgebraError(f"unknown case in {cases}")
    primes = payload.get('primes') or config.VERIFY_PRIMES
    if not isinstance(primes, list) or not all(isinstance(p, int) for p in primes):
        raise AlgebraError("primes must be a list of integers")
    return {
        'cases': cases,
        'primes': primes,
        'mutate_i3': bool(payload.get('mutate_i3', False)),
        'timings': bool(payload.get('timings', False)),
    }


@verify_bp.route("/verify_batch", methods=["POST"])
def verify_batch():
    """Queue a full verification run; returns 202 and a job id to poll."""
    try:
        payload = request.get_json(force=True)
    except Exception as e:
        logger.error("verify_batch: invalid JSON %s", e)
        return jsonify({"error": "invalid json"}), 400
    if not isinstance(payload, dict):
        return jsonify({"error": "JSON object required"}), 400
    try:
        job = _parse_job(payload)
    except AlgebraError as e:
        return jsonify({"error": str(e)}), 400

    job_id = uuid.uuid4().hex
    JOBS.set(job_id, {"status": "queued"})
    JOB_QUEUE.put_nowait((job_id, job))
    return jsonify({
        "status": "accepted",
        "job_id": job_id,
        "queue_size": JOB_QUEUE.qsize(),
    }), 202


@verify_bp.route("/jobs/<job_id>", methods=["GET"])
def job_status(job_id):
    entry = JOBS.get(job_id)
    if entry is None:
        return jsonify({"error": "unknown job"}), 404
    return jsonify(entry), 200


def process_job(job_id, job):
    JOBS.set(job_id, {"status": "running"})
    try:
        report = run_full_verification(
            job['primes'], job['cases'],
            jobs=config.VERIFY_JOBS,
            timeout=config.CLAIM_TIMEOUT,
            mutate_i3=job['mutate_i3'],
        )
        JOBS.set(job_id, {
            "status": "done",
            "verdict": report.verdict,
            "report": report.to_dict(job['timings']),
        })
        logger.info("(worker) job %s finished: %s", job_id, report.verdict)
    except AlgebraError as e:
        JOBS.set(job_id, {"status": "error", "error": str(e)})
        logger.warning("(worker) job %s rejected: %s", job_id, e)
    except Exception as e:
        JOBS.set(job_id, {"status": "error", "error": f"{type(e).__name__}: {e}"})
        logger.error("(worker) job %s crashed: %s", job_id, e)
        logger.debug(traceback.format_exc())


def job_worker():
    """Background worker draining JOB_QUEUE; None stops it."""
    while True:
        item = JOB_QUEUE.get()
        try:
            if item is None:
                break
            process_job(*item)
        finally:
            JOB_QUEUE.task_done()


def start_worker():
    global _worker
    with _worker_lock:
        if _worker is None or not _worker.is_alive():
            _worker = threading.Thread(target=job_worker, daemon=True)
            _worker.start()
            logger.info("Verification worker started")
    return _worker
