"""Cooperative per-claim time budget checked inside the long-running kernels."""

import time
from contextlib import contextmanager
from contextvars import ContextVar

from app.errors import ClaimTimeout

_deadline = ContextVar('claim_deadline', default=None)


@contextmanager
def time_budget(seconds):
    """Within the block, check_deadline() raises ClaimTimeout once `seconds` elapse."""
    if not seconds or seconds <= 0:
        yield
        return
    token = _deadline.set(time.monotonic() + seconds)
    try:
        yield
    finally:
        _deadline.reset(token)


def check_deadline():
    limit = _deadline.get()
    if limit is not None and time.monotonic() > limit:
        raise ClaimTimeout("claim exceeded its time budget")
