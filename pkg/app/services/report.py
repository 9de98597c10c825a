"""Claim results and the verification report they aggregate into."""

import json
import math
from dataclasses import dataclass, field

from app.services.poly import Polynomial

VERIFIED = 'verified'
FAILED = 'failed'
SKIPPED = 'skipped'

SCHEMA_VERSION = 1


def stringify(value):
    """Witness values as JSON-ready strings, integers, booleans and lists."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return "infinite" if math.isinf(value) else value
    if isinstance(value, Polynomial):
        return str(value)
    if isinstance(value, dict):
        return {str(k): stringify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [stringify(v) for v in value]
    return str(value)


@dataclass
class ClaimResult:
    claim_id: str
    paper_anchor: str
    status: str
    witnesses: dict = field(default_factory=dict)
    elapsed_ms: float = None

    @property
    def ok(self):
        return self.status == VERIFIED

    def to_dict(self, timings=False):
        out = {
            'claim_id': self.claim_id,
            'paper_anchor': self.paper_anchor,
            'status': self.status,
            'witnesses': stringify(self.witnesses),
        }
        if timings and self.elapsed_ms is not None:
            out['elapsed_ms'] = round(self.elapsed_ms, 1)
        return out


@dataclass
class VerificationReport:
    context: dict
    claims: list = field(default_factory=list)

    def __post_init__(self):
        self.claims = sorted(self.claims, key=lambda c: c.claim_id)

    @property
    def verdict(self):
        return FAILED if any(c.status == FAILED for c in self.claims) else VERIFIED

    def failed(self):
        return [c for c in self.claims if c.status == FAILED]

    def counts(self):
        out = {VERIFIED: 0, FAILED: 0, SKIPPED: 0}
        for c in self.claims:
            out[c.status] += 1
        return out

    def claim(self, claim_id):
        return next((c for c in self.claims if c.claim_id == claim_id), None)

    def to_dict(self, timings=False):
        return {
            'schema_version': SCHEMA_VERSION,
            'context': stringify(self.context),
            'verdict': self.verdict,
            'counts': self.counts(),
            'claims': [c.to_dict(timings) for c in self.claims],
        }

    def to_json(self, timings=False):
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True) + "\n"

    def write(self, path, timings=False):
        with open(path, 'w', encoding='utf-8') as f:
            f.write(self.to_json(timings))
