import json
import logging
import os
import queue
import re
import threading
import time
import traceback
from dataclasses import dataclass
from typing import Callable

from app import config
from app.errors import ClaimTimeout
from app.services.deadline import time_budget
from app.services.report import FAILED, SKIPPED, VERIFIED, ClaimResult, stringify

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Claim:
    claim_id: str
    paper_anchor: str
    check: Callable     # () -> (ok: bool, witnesses: dict)


# =========================
# FAILED CLAIM PERSISTENCE
# =========================

def persist_failed_claim(result, directory=None):
    directory = directory or config.FAILED_CLAIMS_DIR
    if not directory:
        return None
    try:
        os.makedirs(directory, exist_ok=True)
        ts = int(time.time() * 1000)
        safe = re.sub(r'[^A-Za-z0-9_.-]', '_', result.claim_id)
        path = os.path.join(directory, f'failed_{ts}_{safe}.json')
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(result.to_dict(timings=True), f, indent=2, sort_keys=True)
        logger.warning("Persisted failed claim to %s", path)
        return path
    except OSError as e:
        logger.error("Failed to persist claim %s: %s", result.claim_id, e)
        return None


# =========================
# EXECUTION
# =========================

def execute_claim(claim, timeout=0):
    """Run one claim under its time budget; errors become failed results."""
    start = time.perf_counter()
    try:
        with time_budget(timeout):
            ok, witnesses = claim.check()
        status = VERIFIED if ok else FAILED
    except ClaimTimeout:
        status, witnesses = SKIPPED, {'reason': f'timeout after {timeout}s'}
    except Exception as e:
        logger.error("Claim %s raised %s: %s", claim.claim_id, type(e).__name__, e)
        logger.debug(traceback.format_exc())
        status, witnesses = FAILED, {'error': f'{type(e).__name__}: {e}'}
    elapsed = (time.perf_counter() - start) * 1000
    result = ClaimResult(claim.claim_id, claim.paper_anchor, status, stringify(witnesses), elapsed)
    if status == VERIFIED:
        logger.info("%s verified (%.0f ms)", claim.claim_id, elapsed)
    elif status == SKIPPED:
        logger.warning("%s skipped: %s", claim.claim_id, witnesses['reason'])
    else:
        logger.error("%s FAILED (%.0f ms)", claim.claim_id, elapsed)
    return result


def run_claims(claims, jobs=1, timeout=0, failed_dir=None):
    """Execute claims on `jobs` worker threads; results come back in claim order."""
    claims = list(claims)
    results = [None] * len(claims)
    work = queue.Queue()
    for item in enumerate(claims):
        work.put(item)

    def worker():
        while True:
            try:
                index, claim = work.get_nowait()
            except queue.Empty:
                break
            try:
                results[index] = execute_claim(claim, timeout)
                if results[index].status == FAILED:
                    persist_failed_claim(results[index], failed_dir)
            finally:
                work.task_done()

    threads = [threading.Thread(target=worker, daemon=True) for _ in range(max(1, jobs))]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    return results
