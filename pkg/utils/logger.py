"""Structured logging for cswigner runs

Every record goes to stderr so stdout carries only command results. With
LOG_JSON enabled each record is one JSON object carrying the `extra=` fields
(operation, method, suite, duration_ms, error_code, ...) and the run ID.
"""
import json
import logging
import os
import sys
import uuid
from datetime import datetime, timezone
from logging.handlers import RotatingFileHandler
from typing import Optional

PLAIN_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'
LOG_FILE_MAX_BYTES = 5 * 1024 * 1024
LOG_FILE_BACKUPS = 3

# LogRecord attributes that are not caller context
_RESERVED_ATTRS = frozenset(vars(logging.LogRecord('', 0, '', 0, '', None, None))) | {'message', 'asctime', 'taskName'}


class JSONFormatter(logging.Formatter):
    """One JSON object per record"""

    def format(self, record: logging.LogRecord) -> str:
        log_data = {
            'timestamp': datetime.now(timezone.utc).isoformat().replace('+00:00', 'Z'),
            'level': record.levelname,
            'logger': record.name,
            'message': record.getMessage(),
        }
        if record.exc_info:
            log_data['exception'] = self.formatException(record.exc_info)

        log_data.update({key: value for key, value in record.__dict__.items()
                         if key not in _RESERVED_ATTRS and not key.startswith('_')})
        # numpy scalars and Paths fall back to str
        return json.dumps(log_data, default=str)


def _formatter(json_format: bool) -> logging.Formatter:
    return JSONFormatter() if json_format else logging.Formatter(PLAIN_FORMAT, datefmt=DATE_FORMAT)


def setup_logging(log_level: str = 'WARNING', json_format: bool = True,
                  log_file_path: Optional[str] = None):
    """
    Configure the root logger for one CLI invocation

    Args:
        log_level: Logging level name (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        json_format: JSON records instead of plain text
        log_file_path: Optional rotating log file, same format as stderr
    """
    numeric_level = getattr(logging, log_level.upper(), logging.WARNING)

    root_logger = logging.getLogger()
    root_logger.setLevel(numeric_level)
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file_path:
        try:
            log_dir = os.path.dirname(log_file_path)
            if log_dir:
                os.makedirs(log_dir, exist_ok=True)
            handlers.append(RotatingFileHandler(log_file_path, maxBytes=LOG_FILE_MAX_BYTES,
                                                backupCount=LOG_FILE_BACKUPS, encoding='utf-8'))
        except OSError as e:
            print(f"Failed to enable file logging at {log_file_path}: {e}", file=sys.stderr)

    for handler in handlers:
        handler.setLevel(numeric_level)
        handler.setFormatter(_formatter(json_format))
        root_logger.addHandler(handler)

    logging.debug(f"Logging configured with level={log_level}, json_format={json_format}",
                  extra={'log_file_path': log_file_path})


class RunContext:
    """Stamps a run ID onto every log record created inside the block"""

    def __init__(self, run_id: Optional[str] = None):
        self.run_id = run_id or f"run_{uuid.uuid4().hex[:12]}"
        self._previous_factory = None

    def __enter__(self):
        previous = self._previous_factory = logging.getLogRecordFactory()
        run_id = self.run_id

        def record_factory(*args, **kwargs):
            record = previous(*args, **kwargs)
            record.run_id = run_id
            return record

        logging.setLogRecordFactory(record_factory)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self._previous_factory is not None:
            logging.setLogRecordFactory(self._previous_factory)
            self._previous_factory = None


def log_with_context(logger: logging.Logger, level: str, message: str, **context):
    """
    Log message with additional context fields

    Args:
        logger: Logger instance
        level: Log level name (debug, info, warning, error, critical)
        message: Log message
        **context: Fields placed on the record via `extra`
    """
    getattr(logger, level.lower())(message, extra=context)
