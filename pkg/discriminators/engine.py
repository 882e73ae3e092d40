"""Brute-force discriminator oracle.

Only ``residue``/``residues`` of a handle are consulted, so windows whose
exact terms run to thousands of digits cost one modular multiply per term.
"""
from __future__ import annotations

import logging
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from discriminators.families import SequenceHandle
from utils.errors import DomainError, NonInjectiveWindowError

logger = logging.getLogger(__name__)


class DiscriminatorRecord(BaseModel):
    """(n, D(n)); for d > 1, failure_pair = (i, j, d - 1) shows why d - 1 fails."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    d: int = Field(ge=1)
    failure_pair: Optional[Tuple[int, int, int]] = None

    @model_validator(mode="after")
    def _check_record(self) -> "DiscriminatorRecord":
        if self.d < self.n:
            raise ValueError(f"d={self.d} below the pigeonhole bound n={self.n}")
        if self.d == 1 and self.failure_pair is not None:
            raise ValueError("d = 1 has no failing modulus")
        if self.failure_pair is not None:
            i, j, m = self.failure_pair
            if not 0 <= i < j or m >= self.d:
                raise ValueError(f"malformed failure pair {self.failure_pair}")
        return self


def _check_window(start: int, count: int) -> None:
    if start < 0:
        raise DomainError(f"start must be >= 0, got {start}")
    if count < 1:
        raise DomainError(f"window length must be >= 1, got {count}")


def _require_injective(handle: SequenceHandle, start: int, count: int) -> None:
    if not handle.is_injective_on(start, count):
        raise NonInjectiveWindowError(
            f"sequence not injective on window [{start}, {start + count}) of {handle.describe()}"
        )


def is_discriminating(handle: SequenceHandle, start: int, count: int, m: int) -> bool:
    """True iff s(start), ..., s(start + count - 1) are pairwise distinct mod m."""
    _check_window(start, count)
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")
    if count > m:
        return False
    seen = set()
    for r in handle.residues(start, count, m):
        if r in seen:
            return False
        seen.add(r)
    return True


def _first_collisions(
    handle: SequenceHandle, start: int, count: int, m: int
) -> Tuple[Dict[int, int], Optional[Tuple[int, int]]]:
    """Residue -> first index map plus the lexicographically least colliding pair."""
    first: Dict[int, int] = {}
    pair: Optional[Tuple[int, int]] = None
    for offset, r in enumerate(handle.residues(start, count, m)):
        idx = start + offset
        earlier = first.get(r)
        if earlier is None:
            first[r] = idx
        elif pair is None or earlier < pair[0]:
            # first hit for a given earlier index carries the smallest j
            pair = (earlier, idx)
    return first, pair


def collision_pair(
    handle: SequenceHandle, start: int, count: int, m: int
) -> Optional[Tuple[int, int]]:
    """Least (i, j), i < j, absolute indices, with s(i) = s(j) (mod m); None if m discriminates."""
    _check_window(start, count)
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")
    return _first_collisions(handle, start, count, m)[1]


def _least_discriminating(handle: SequenceHandle, start: int, count: int, m_from: int) -> int:
    m = max(m_from, count, 1)
    while not is_discriminating(handle, start, count, m):
        m += 1
    return m


def _record(handle: SequenceHandle, start: int, n: int, d: int) -> DiscriminatorRecord:
    if d == 1:
        return DiscriminatorRecord(n=n, d=d)
    pair = collision_pair(handle, start, n, d - 1)
    return DiscriminatorRecord(n=n, d=d, failure_pair=(pair[0], pair[1], d - 1))


def window_discriminator(handle: SequenceHandle, start: int, n: int) -> DiscriminatorRecord:
    """Discriminator of the window s(start), ..., s(start + n - 1)."""
    _check_window(start, n)
    _require_injective(handle, start, n)
    d = _least_discriminating(handle, start, n, n)
    logger.debug("[engine] window start=%s n=%s -> d=%s", start, n, d)
    return _record(handle, start, n, d)


def discriminator(handle: SequenceHandle, n: int) -> DiscriminatorRecord:
    return window_discriminator(handle, 0, n)


def discriminator_profile(
    handle: SequenceHandle, n_max: int, *, start: int = 0
) -> List[DiscriminatorRecord]:
    """Records for n = 1..n_max over the window beginning at ``start``.

    D is monotone in n, so the current d is kept as long as each new term
    lands in a fresh residue class; only a collision triggers a rescan, which
    starts from the previous d.
    """
    _check_window(start, n_max)
    _require_injective(handle, start, n_max)

    records: List[DiscriminatorRecord] = []
    d = 1
    seen: set = set()
    below: Dict[int, int] = {}  # residues modulo d - 1
    pair: Optional[Tuple[int, int]] = None

    for n in range(1, n_max + 1):
        idx = start + n - 1
        r = handle.residue(idx, d)
        if r in seen:
            d = _least_discriminating(handle, start, n, d + 1)
            seen = set(handle.residues(start, n, d))
            below, pair = _first_collisions(handle, start, n, d - 1)
            logger.debug("[engine] profile n=%s rescanned -> d=%s", n, d)
        else:
            seen.add(r)
            if d > 1:
                rb = handle.residue(idx, d - 1)
                earlier = below.get(rb)
                if earlier is None:
                    below[rb] = idx
                elif pair is None or earlier < pair[0]:
                    pair = (earlier, idx)

        if d == 1:
            records.append(DiscriminatorRecord(n=n, d=1))
        else:
            records.append(DiscriminatorRecord(n=n, d=d, failure_pair=(pair[0], pair[1], d - 1)))
    return records


__all__ = [
    "DiscriminatorRecord",
    "is_discriminating",
    "collision_pair",
    "discriminator",
    "window_discriminator",
    "discriminator_profile",
]
