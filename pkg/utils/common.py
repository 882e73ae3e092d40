import json
import logging
from typing import Any, Iterable, Mapping, Optional

from utils.errors import UsageError

LOG_FORMAT = "%(asctime)s | %(levelname)s | %(message)s"

logger = logging.getLogger(__name__)


def configure_logging(level: Optional[str] = None) -> None:
    """Apply the shared log format once; later calls only adjust the level.

    Logs always go to stderr so stdout stays a clean record stream.
    """
    level_name = (level or "WARNING").upper()
    if not isinstance(logging.getLevelName(level_name), int):
        raise UsageError(f"unknown log level {level!r}")
    if not logging.getLogger().handlers:
        logging.basicConfig(level=level_name, format=LOG_FORMAT)
    logging.getLogger().setLevel(level_name)


def ceil_log2(n: int) -> int:
    """Exact ceil(log2 n) for n >= 1, no floating point."""
    if n < 1:
        raise ValueError("ceil_log2 needs n >= 1")
    return (n - 1).bit_length()


def next_power_of_two(n: int) -> int:
    return 1 << ceil_log2(n)


# Output encoders: compact separators, field order follows insertion order.
def to_jsonl(record: Mapping[str, Any]) -> str:
    return json.dumps(record, separators=(",", ":"), default=str)


def to_tsv(values: Iterable[Any]) -> str:
    return "\t".join(str(v) for v in values)


def parse_tsv(line: str) -> list:
    return line.rstrip("\n").split("\t")
