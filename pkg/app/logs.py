import logging
import sys

from app import config

# Console tags as printed by the service: [OK] / [WARN] / [ERROR]
_TAGS = {
    'DEBUG': 'DEBUG',
    'INFO': 'OK',
    'WARNING': 'WARN',
    'ERROR': 'ERROR',
    'CRITICAL': 'ERROR',
}


class TaggedFormatter(logging.Formatter):
    def format(self, record):
        tag = _TAGS.get(record.levelname, record.levelname)
        return f"[{tag}] {record.getMessage()}"


def setup_logging(level=None):
    """Install the tagged stderr handler on the package logger (idempotent)."""
    logger = logging.getLogger('app')
    handler = next((h for h in logger.handlers if getattr(h, '_tagged', False)), None)
    if handler is None:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(TaggedFormatter())
        handler._tagged = True
        logger.addHandler(handler)
    else:
        # stderr may have been swapped since the first call
        handler.setStream(sys.stderr)
    logger.setLevel(level or config.LOG_LEVEL)
    logger.propagate = False
    return logger
