"""
Module level logger facade over :mod:`logging`. Used as::

    from lieimage import logger
    logger.info(f"...")
"""
import logging
import sys
from pathlib import Path
from typing import Any, Optional

_LOGGER = logging.getLogger("lieimage")
_FORMAT = "[%(asctime)s] [%(levelname)s] [%(processName)s] %(message)s"


def configure_logger(
    level: Optional[int | str] = None,
    logs_path: Optional[Path] = None,
) -> None:
    """
    Attach handlers to the package logger. Records go to stderr, stdout is
    reserved for command output.

    :param level: Logging level. When `None`, DEBUG is used if assertions
    are enabled (`__debug__`), INFO otherwise.
    :type level: Optional[int | str]
    :param logs_path: Directory for an additional `lieimage.log` file.
    :type logs_path: Optional[Path]
    """
    if level is None:
        level = logging.DEBUG if __debug__ else logging.INFO
    if isinstance(level, str):
        level = level.upper()

    for handler in list(_LOGGER.handlers):
        _LOGGER.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(_FORMAT)
    stream = logging.StreamHandler(sys.stderr)
    stream.setFormatter(formatter)
    _LOGGER.addHandler(stream)

    if logs_path is not None:
        logs_path.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(
            logs_path / "lieimage.log", encoding="utf-8"
        )
        file_handler.setFormatter(formatter)
        _LOGGER.addHandler(file_handler)

    _LOGGER.setLevel(level)
    _LOGGER.propagate = False


def debug(msg: str, *args: Any, **kwargs: Any) -> None:
    _LOGGER.debug(msg, *args, stacklevel=2, **kwargs)


def info(msg: str, *args: Any, **kwargs: Any) -> None:
    _LOGGER.info(msg, *args, stacklevel=2, **kwargs)


def warning(msg: str, *args: Any, **kwargs: Any) -> None:
    _LOGGER.warning(msg, *args, stacklevel=2, **kwargs)


def error(msg: str, *args: Any, **kwargs: Any) -> None:
    _LOGGER.error(msg, *args, stacklevel=2, **kwargs)


def critical(msg: str, *args: Any, **kwargs: Any) -> None:
    _LOGGER.critical(msg, *args, stacklevel=2, **kwargs)
