"""Shift-invariance scan: compare discriminator profiles across shifts c."""
from __future__ import annotations

import logging
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from discriminators.engine import discriminator_profile
from discriminators.exact import closed_form_discriminator, within_linear_bound
from discriminators.families import SequenceHandle
from utils.errors import DomainError, NonInjectiveWindowError

logger = logging.getLogger(__name__)


class ShiftProfile(BaseModel):
    c: int
    d: Optional[List[int]] = None
    error: Optional[str] = None


class Divergence(BaseModel):
    c: int
    n: int
    expected: int
    actual: int


class ScanReport(BaseModel):
    sequence: Dict[str, Any]
    shifts: List[int]
    n_max: int = Field(ge=1)
    invariant: bool
    first_divergence: Optional[Divergence] = None
    profile: Optional[List[int]] = None
    power_of_two_profile: bool = False
    linear_growth: bool = False
    errors: List[ShiftProfile] = Field(default_factory=list)


def scan_shifts(handle: SequenceHandle, shifts: List[int], n_max: int) -> ScanReport:
    """Brute-force profiles for every shift; invariant iff all of them agree.

    A shift whose window is not injective becomes an error entry and makes
    the scan non-invariant (nothing can be claimed for it).
    """
    if not shifts:
        raise DomainError("at least one shift is required")
    if any(c < 0 for c in shifts):
        raise DomainError("shifts must be >= 0")
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    shifts = sorted(set(shifts))

    profiles: List[ShiftProfile] = []
    records_by_shift = {}
    for c in shifts:
        try:
            records = discriminator_profile(handle.shifted(c), n_max)
            records_by_shift[c] = records
            profiles.append(ShiftProfile(c=c, d=[r.d for r in records]))
        except NonInjectiveWindowError as e:
            logger.warning("[scan] shift c=%s skipped: %s", c, e)
            profiles.append(ShiftProfile(c=c, error=str(e)))

    good = [p for p in profiles if p.d is not None]
    errors = [p for p in profiles if p.error is not None]
    reference = good[0] if good else None

    divergence = None
    if reference is not None:
        for p in good[1:]:
            for n, (want, got) in enumerate(zip(reference.d, p.d), start=1):
                if want != got:
                    divergence = Divergence(c=p.c, n=n, expected=want, actual=got)
                    break
            if divergence is not None:
                break

    invariant = reference is not None and divergence is None and not errors
    profile = reference.d if invariant else None
    power_of_two = bool(profile) and all(
        d == closed_form_discriminator(n) for n, d in enumerate(profile, start=1)
    )
    linear = bool(profile) and within_linear_bound(records_by_shift[reference.c])
    logger.info(
        "[scan] %s shifts=%s n_max=%s invariant=%s", handle.describe(), len(shifts), n_max, invariant
    )
    return ScanReport(
        sequence=handle.shifted(0).describe(),
        shifts=shifts,
        n_max=n_max,
        invariant=invariant,
        first_divergence=divergence,
        profile=profile,
        power_of_two_profile=power_of_two,
        linear_growth=linear,
        errors=errors,
    )

