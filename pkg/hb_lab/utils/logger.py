import logging
import os
from types import MethodType
from typing import Optional

init_loggers = {}

logger_format = logging.Formatter('[%(levelname)s:%(name)s] %(message)s')

warning_set = set()


def warning_once(self, msg, *args, **kwargs):
    hash_id = kwargs.get('hash_id') or msg
    if hash_id in warning_set:
        return
    warning_set.add(hash_id)
    self.warning(msg)


def resolve_level(log_level: Optional[int] = None) -> int:
    if log_level is not None:
        return log_level
    return getattr(logging, os.getenv('LOG_LEVEL', 'INFO').upper(), logging.INFO)


def get_logger(log_level: Optional[int] = None):
    """ Get the package logger

    Records go to stderr so that CSV written to stdout stays clean.

    Args:
        log_level: Logging level. Defaults to the ``LOG_LEVEL`` environment
            variable, falling back to INFO.
    """
    logger_name = __name__.split('.')[0]
    logger = logging.getLogger(logger_name)
    if logger_name in init_loggers:
        return logger

    logger.propagate = False
    log_level = resolve_level(log_level)
    stream_handler = logging.StreamHandler()
    stream_handler.setFormatter(logger_format)
    stream_handler.setLevel(log_level)
    logger.addHandler(stream_handler)

    logger.setLevel(log_level)
    init_loggers[logger_name] = True
    logger.warning_once = MethodType(warning_once, logger)
    return logger
