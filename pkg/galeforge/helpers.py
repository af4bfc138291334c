"""Various helper functions implemented by galeforge."""
import functools
import json
import logging
from typing import Any, Callable, Iterable, List, Optional, Sequence, TypeVar

from galeforge.exceptions import InvalidInput

logger = logging.getLogger(__name__)


def setup_logger(level: int = logging.ERROR, log_filename: Optional[str] = None) -> None:
    """Create a configured instance of logger.

    :param int level:
        Describe the severity level of the logs to handle.
    :param str log_filename:
        (Optional) Also write records to this file.
    """
    fmt = "[%(asctime)s] %(levelname)s in %(module)s: %(message)s"
    date_fmt = "%H:%M:%S"
    formatter = logging.Formatter(fmt, datefmt=date_fmt)

    logger = logging.getLogger("galeforge")
    logger.setLevel(level)

    stream_handler = logging.StreamHandler()
    stream_handler.setFormatter(formatter)
    logger.addHandler(stream_handler)

    if log_filename is not None:
        file_handler = logging.FileHandler(log_filename)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)


GenericType = TypeVar("GenericType")


def cache(func: Callable[..., GenericType]) -> GenericType:
    """ mypy compatible annotation wrapper for lru_cache"""
    return functools.lru_cache(maxsize=None)(func)  # type: ignore


def parse_int_list(text: str) -> List[int]:
    """Parse a comma separated list of integers such as ``"1,-2,3"``.

    :param str text:
        The command line value.
    :rtype: List[int]
    """
    text = text.strip()
    if not text:
        return []
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise InvalidInput(f"expected comma separated integers, got {text!r}")


def l1_norm(vector: Iterable[int]) -> int:
    return sum(abs(x) for x in vector)


def is_zero(vector: Iterable[int]) -> bool:
    return all(x == 0 for x in vector)


def int_tuple(values: Iterable[Any]) -> tuple:
    """Coerce exact values to a tuple of Python ints, rejecting fractions."""
    result = []
    for value in values:
        if int(value) != value:
            raise InvalidInput(f"{value} is not an integer")
        result.append(int(value))
    return tuple(result)


def canonical_json(data: Any) -> str:
    """Serialize with sorted keys so identical inputs give identical bytes."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def format_vector(vector: Sequence[Any]) -> str:
    return "(" + ", ".join(str(x) for x in vector) + ")"
