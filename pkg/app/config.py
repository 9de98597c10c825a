import os

# =========================
# VERIFICATION DEFAULTS (overridable from .env)
# =========================
DEFAULT_PRIMES = [3, 5, 7, 13]
try:
    VERIFY_PRIMES = [int(p) for p in os.getenv('VERIFY_PRIMES', '3,5,7,13').split(',') if p.strip()]
except ValueError:
    VERIFY_PRIMES = DEFAULT_PRIMES

try:
    VERIFY_JOBS = max(1, int(os.getenv('VERIFY_JOBS', '1')))
except ValueError:
    VERIFY_JOBS = 1

# 0 disables the per-claim timeout
try:
    CLAIM_TIMEOUT = float(os.getenv('CLAIM_TIMEOUT', '0'))
except ValueError:
    CLAIM_TIMEOUT = 0.0

try:
    MORA_MAX_STEPS = int(os.getenv('MORA_MAX_STEPS', '200000'))
except ValueError:
    MORA_MAX_STEPS = 200000

LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO').upper()

# Unset means failed claims are only reported, not persisted
FAILED_CLAIMS_DIR = os.getenv('FAILED_CLAIMS_DIR')

# =========================
# HTTP SERVICE
# =========================
SECRET_KEY = os.getenv('SECRET_KEY', 'dev_key')
try:
    JOB_CACHE_TTL = int(os.getenv('JOB_CACHE_TTL', '3600'))
except ValueError:
    JOB_CACHE_TTL = 3600
