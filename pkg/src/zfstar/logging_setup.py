import os
import json
import logging
from logging.handlers import RotatingFileHandler

class StructuredFormatter(logging.Formatter):
    """
    Formatter that renders structured events as single-line JSON.
    """
    def format(self, record):
        if hasattr(record, 'json_fields') and record.json_fields.get('structured_event'):
            return json.dumps(record.json_fields, separators=(',', ':'), sort_keys=True, default=str)
        else:
            return super().format(record)

class StructuredFilter(logging.Filter):
    """
    Filter that only allows structured log events to pass through.
    """
    def filter(self, record):
        return (hasattr(record, 'json_fields') and
                record.json_fields.get('structured_event', False))

class NonStructuredFilter(logging.Filter):
    """
    Filter that only allows non-structured log events to pass through.
    """
    def filter(self, record):
        return not (hasattr(record, 'json_fields') and
                   record.json_fields.get('structured_event', False))

def _ensure_parent(path: str) -> None:
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)

def setup_logger(name: str, level: str, log_file: str | None = None, max_bytes: int = 10485760,
                 backup_count: int = 3, enable_structured_console: bool = False,
                 structured_log_file: str | None = None):
    """
    Configure the workbench logger.

    Console output goes to stderr so command results on stdout stay clean.
    Calling this again replaces the handlers installed by the previous call.

    Args:
        enable_structured_console (bool): Console shows JSON for structured events instead of plain messages
        structured_log_file (str): Path of a JSON-lines file receiving structured events only
    """
    logger_name = name or os.getenv("LOGGER_NAME", "ZFSTAR")
    logger = logging.getLogger(logger_name)
    logger.setLevel(getattr(logging, level, logging.WARNING))
    logger.propagate = False

    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    regular_formatter = logging.Formatter('%(asctime)s %(levelname)s [%(name)s] %(message)s')
    structured_formatter = StructuredFormatter()

    ch = logging.StreamHandler()
    ch.setLevel(getattr(logging, level, logging.WARNING))

    if enable_structured_console:
        ch.setFormatter(structured_formatter)
        ch.addFilter(StructuredFilter())
    else:
        ch.setFormatter(regular_formatter)
        ch.addFilter(NonStructuredFilter())

    logger.addHandler(ch)

    if log_file:
        try:
            _ensure_parent(log_file)
            fh = RotatingFileHandler(log_file, maxBytes=max_bytes, backupCount=backup_count)
            fh.setLevel(getattr(logging, level, logging.WARNING))
            fh.setFormatter(regular_formatter)
            fh.addFilter(NonStructuredFilter())
            logger.addHandler(fh)
            logger.info(f"Regular file logging enabled: {log_file}")
        except Exception as e:
            logger.warning(f"Could not setup regular file logging at {log_file}: {e}")

    if structured_log_file:
        try:
            _ensure_parent(structured_log_file)
            sfh = RotatingFileHandler(structured_log_file, maxBytes=max_bytes, backupCount=backup_count)
            # Structured events are recorded whatever the console level is.
            sfh.setLevel(logging.DEBUG)
            sfh.setFormatter(structured_formatter)
            sfh.addFilter(StructuredFilter())
            logger.addHandler(sfh)
            logger.setLevel(logging.DEBUG)
            ch.setLevel(getattr(logging, level, logging.WARNING))
            logger.info(f"Structured JSON-lines logging enabled: {structured_log_file}")
        except Exception as e:
            logger.warning(f"Could not setup structured file logging at {structured_log_file}: {e}")

    return logger
