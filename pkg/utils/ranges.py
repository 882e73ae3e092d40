"""Grid-flag grammar: comma lists (``3,5,7``) and inclusive ranges (``0..8``).

Both forms can be mixed (``1,4..6,10``). Negative values are allowed
(``-3,3`` or ``-5..-3``).
"""
from typing import List

from utils.errors import UsageError


def _parse_int(token: str, text: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise UsageError(f"not an integer: {token!r} in {text!r}")


def parse_int_grid(text: str) -> List[int]:
    """Return the sorted, de-duplicated integers a grid flag names."""
    if text is None or not str(text).strip():
        raise UsageError("empty grid value")
    values = set()
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            raise UsageError(f"empty entry in {text!r}")
        # a leading '-' belongs to the first bound, so split on the first '..' only
        if ".." in part:
            lo_s, hi_s = part.split("..", 1)
            lo, hi = _parse_int(lo_s.strip(), text), _parse_int(hi_s.strip(), text)
            if hi < lo:
                raise UsageError(f"range {part!r} is empty (upper bound below lower bound)")
            values.update(range(lo, hi + 1))
        else:
            values.add(_parse_int(part, text))
    return sorted(values)


def describe_grid(values: List[int]) -> str:
    """Inverse of parse_int_grid for display: contiguous runs become ``lo..hi``."""
    if not values:
        return ""
    parts = []
    run_start = prev = values[0]
    for v in values[1:]:
        if v == prev + 1:
            prev = v
            continue
        parts.append(str(run_start) if run_start == prev else f"{run_start}..{prev}")
        run_start = prev = v
    parts.append(str(run_start) if run_start == prev else f"{run_start}..{prev}")
    return ",".join(parts)


__all__ = ["parse_int_grid", "describe_grid"]
