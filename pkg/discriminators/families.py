"""Sequence families with exact terms and a residue oracle.

Every handle answers ``term(i)`` with exact integers and ``residue(i, m)``
with ``term(i) mod m``. The exponential family never builds ``(t^2)^n``: it
works modulo ``2^b * m`` and divides the ``2^b`` back out.
"""
from __future__ import annotations

import logging
from abc import abstractmethod
from typing import Any, Dict, Iterator, Literal

from pydantic import BaseModel, ConfigDict, Field, SerializeAsAny, model_validator

from utils.errors import DomainError

logger = logging.getLogger(__name__)


def _check_modulus(m: int) -> None:
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")


def _check_index(i: int) -> None:
    if i < 0:
        raise DomainError(f"index must be >= 0, got {i}")


def _check_t(t: int) -> None:
    if t % 2 == 0:
        raise DomainError(f"t must be odd, got {t}")
    if t in (-1, 1):
        raise DomainError("t = ±1: no such b exists")


def find_b(t: int) -> int:
    """Smallest b >= 1 with t not congruent to ±1 modulo 2^b."""
    _check_t(t)
    # once 2^b exceeds 2(|t| + 1), t mod 2^b can no longer be 1 or 2^b - 1
    for b in range(1, abs(t).bit_length() + 2):
        modulus = 1 << b
        r = t % modulus
        if r != 1 and r != modulus - 1:
            return b
    raise AssertionError(f"find_b did not terminate for t={t}")


# --- handles ---------------------------------------------------------------
class SequenceHandle(BaseModel):
    """Immutable view of one sequence, shift ``c`` folded into the index."""

    model_config = ConfigDict(frozen=True)

    family: str
    c: int = Field(default=0, ge=0)

    @abstractmethod
    def term(self, i: int) -> int:
        ...

    def residue(self, i: int, m: int) -> int:
        _check_index(i)
        _check_modulus(m)
        return self.term(i) % m

    def residues(self, start: int, count: int, m: int) -> Iterator[int]:
        """Lazily yield residue(start + k, m) for k in range(count)."""
        for k in range(count):
            yield self.residue(start + k, m)

    def is_injective_on(self, start: int, count: int) -> bool:
        terms = [self.term(start + k) for k in range(count)]
        return len(set(terms)) == len(terms)

    def shifted(self, c: int) -> "SequenceHandle":
        if c < 0:
            raise DomainError(f"shift must be >= 0, got {c}")
        return self.model_copy(update={"c": c})

    def describe(self) -> Dict[str, Any]:
        return {"family": self.family, "c": self.c}


class ExpFamilyParams(BaseModel):
    """(a, t, b, c) for a * ((t^2)^(n+c) - 1) / 2^b, with b derived from t."""

    model_config = ConfigDict(frozen=True)

    a: int
    t: int
    b: int
    c: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _check_params(self) -> "ExpFamilyParams":
        if self.a == 0 or self.a % 2 == 0:
            raise ValueError(f"a must be odd and nonzero, got {self.a}")
        if self.t % 2 == 0 or abs(self.t) < 3:
            raise ValueError(f"t must be odd with |t| >= 3, got {self.t}")
        if self.b != find_b(self.t):
            raise ValueError(f"b={self.b} is not the threshold of t={self.t} (expected {find_b(self.t)})")
        return self


class ExpSequence(SequenceHandle, ExpFamilyParams):
    family: Literal["exp"] = "exp"

    def term(self, i: int) -> int:
        _check_index(i)
        return self.a * ((pow(self.t * self.t, i + self.c) - 1) >> self.b)

    def residue(self, i: int, m: int) -> int:
        _check_index(i)
        _check_modulus(m)
        full = m << self.b
        r = pow(self.t * self.t, i + self.c, full)
        # r = 1 (mod 2^b) because t^2 = 1 (mod 2^b), so the shift is exact
        return (self.a * ((r - 1) >> self.b)) % m

    def residues(self, start: int, count: int, m: int) -> Iterator[int]:
        _check_index(start)
        _check_modulus(m)
        full = m << self.b
        step = (self.t * self.t) % full
        r = pow(self.t * self.t, start + self.c, full)
        for _ in range(count):
            yield (self.a * ((r - 1) >> self.b)) % m
            r = (r * step) % full

    def is_injective_on(self, start: int, count: int) -> bool:
        # |(t^2)^n| strictly increases and a != 0
        return True

    def describe(self) -> Dict[str, Any]:
        return {"family": self.family, "t": self.t, "a": self.a, "b": self.b, "c": self.c}


class SquaresSequence(SequenceHandle):
    """(n + 1 + c)^2: the positive squares 1, 4, 9, ... for c = 0."""

    family: Literal["squares"] = "squares"

    def term(self, i: int) -> int:
        _check_index(i)
        return (i + 1 + self.c) ** 2

    def residue(self, i: int, m: int) -> int:
        _check_index(i)
        _check_modulus(m)
        return pow(i + 1 + self.c, 2, m)

    def is_injective_on(self, start: int, count: int) -> bool:
        return True


class LinearSequence(SequenceHandle):
    family: Literal["linear"] = "linear"
    a: int
    b: int = 0

    @model_validator(mode="after")
    def _check_slope(self) -> "LinearSequence":
        if self.a == 0:
            raise ValueError("linear family needs a != 0")
        return self

    def term(self, i: int) -> int:
        _check_index(i)
        return self.a * (i + self.c) + self.b

    def is_injective_on(self, start: int, count: int) -> bool:
        return True

    def describe(self) -> Dict[str, Any]:
        return {"family": self.family, "a": self.a, "b": self.b, "c": self.c}


class QuadraticSequence(SequenceHandle):
    """2^k * c1 * x^2 + b1 * c1 * x with x = n + c, k >= 1 and b1, c1 odd."""

    family: Literal["quadratic"] = "quadratic"
    k: int = Field(default=1, ge=1)
    c1: int = 1
    b1: int = 1

    @model_validator(mode="after")
    def _check_coefficients(self) -> "QuadraticSequence":
        if self.c1 % 2 == 0:
            raise ValueError(f"c1 must be odd, got {self.c1}")
        if self.b1 % 2 == 0:
            raise ValueError(f"b1 must be odd, got {self.b1}")
        return self

    def term(self, i: int) -> int:
        _check_index(i)
        x = i + self.c
        return (self.c1 << self.k) * x * x + self.b1 * self.c1 * x

    def residue(self, i: int, m: int) -> int:
        _check_index(i)
        _check_modulus(m)
        x = (i + self.c) % m
        return ((self.c1 << self.k) * x * x + self.b1 * self.c1 * x) % m

    def is_injective_on(self, start: int, count: int) -> bool:
        # f(x) = f(y) forces 2^k (x + y) = -b1, impossible for odd b1
        return True

    def describe(self) -> Dict[str, Any]:
        return {"family": self.family, "k": self.k, "c1": self.c1, "b1": self.b1, "c": self.c}


class ScaledSequence(SequenceHandle):
    """factor * s(i) for a base handle s; the shift lives on the base."""

    family: Literal["scaled"] = "scaled"
    base: SerializeAsAny[SequenceHandle]
    factor: int

    @model_validator(mode="after")
    def _check_factor(self) -> "ScaledSequence":
        if self.factor == 0:
            raise ValueError("scale factor must be nonzero")
        if self.c != self.base.c:
            raise ValueError("scaled handle shift must match its base")
        return self

    def term(self, i: int) -> int:
        return self.factor * self.base.term(i)

    def residue(self, i: int, m: int) -> int:
        return (self.factor * self.base.residue(i, m)) % m

    def residues(self, start: int, count: int, m: int) -> Iterator[int]:
        for r in self.base.residues(start, count, m):
            yield (self.factor * r) % m

    def is_injective_on(self, start: int, count: int) -> bool:
        return self.base.is_injective_on(start, count)

    def shifted(self, c: int) -> "ScaledSequence":
        return scale_sequence(self.base.shifted(c), self.factor)

    def describe(self) -> Dict[str, Any]:
        out = dict(self.base.describe())
        out["scale"] = self.factor
        return out


# --- factories -------------------------------------------------------------
def make_exp_sequence(a: int, t: int, c: int = 0) -> ExpSequence:
    if a == 0 or a % 2 == 0:
        raise DomainError(f"a must be odd and nonzero, got {a}")
    if c < 0:
        raise DomainError(f"shift must be >= 0, got {c}")
    b = find_b(t)
    return ExpSequence(a=a, t=t, b=b, c=c)


def make_reference_sequence(family: str, c: int = 0, **params: int) -> SequenceHandle:
    """Build a squares / linear / quadratic handle, raising DomainError on bad parameters."""
    if c < 0:
        raise DomainError(f"shift must be >= 0, got {c}")
    if family == "squares":
        _reject_unknown(family, params, set())
        return SquaresSequence(c=c)
    if family == "linear":
        _reject_unknown(family, params, {"a", "b"})
        a = params.get("a", 1)
        if a == 0:
            raise DomainError("linear family needs a != 0")
        return LinearSequence(a=a, b=params.get("b", 0), c=c)
    if family == "quadratic":
        _reject_unknown(family, params, {"k", "c1", "b1"})
        k, c1, b1 = params.get("k", 1), params.get("c1", 1), params.get("b1", 1)
        if k < 1:
            raise DomainError(f"k must be >= 1, got {k}")
        if c1 % 2 == 0 or b1 % 2 == 0:
            raise DomainError(f"c1 and b1 must be odd, got c1={c1}, b1={b1}")
        return QuadraticSequence(k=k, c1=c1, b1=b1, c=c)
    raise DomainError(f"unknown reference family {family!r}")


def scale_sequence(handle: SequenceHandle, factor: int) -> ScaledSequence:
    if factor == 0:
        raise DomainError("scale factor must be nonzero")
    return ScaledSequence(base=handle, factor=factor, c=handle.c)


FAMILIES = ("exp", "squares", "linear", "quadratic")


def _reject_unknown(family: str, params: Dict[str, Any], allowed: set) -> None:
    extra = sorted(set(params) - allowed)
    if extra:
        raise DomainError(f"parameter(s) {', '.join(extra)} do not apply to family {family!r}")


def make_sequence(family: str, *, c: int = 0, scale: int | None = None, **params: int) -> SequenceHandle:
    """Factory keyed by family tag; None-valued params are treated as absent."""
    params = {k: v for k, v in params.items() if v is not None}
    if family == "exp":
        if "b" in params:
            raise DomainError("b is derived from t and cannot be set")
        _reject_unknown(family, params, {"a", "t"})
        if "t" not in params:
            raise DomainError("exp family needs t")
        handle: SequenceHandle = make_exp_sequence(params.get("a", 1), params["t"], c)
    elif family in FAMILIES:
        handle = make_reference_sequence(family, c, **params)
    else:
        raise DomainError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if scale is not None and scale != 1:
        handle = scale_sequence(handle, scale)
    logger.debug("[families] built %s", handle.describe())
    return handle


__all__ = [
    "find_b",
    "SequenceHandle",
    "ExpFamilyParams",
    "ExpSequence",
    "SquaresSequence",
    "LinearSequence",
    "QuadraticSequence",
    "ScaledSequence",
    "make_exp_sequence",
    "make_reference_sequence",
    "scale_sequence",
    "make_sequence",
    "FAMILIES",
]
