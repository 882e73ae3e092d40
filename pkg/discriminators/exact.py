"""Closed-form discriminator and the constructive results behind it.

For the exponential family a((t^2)^(n+c) - 1)/2^b the discriminator is
2^ceil(log2 n) for every shift c. This module checks the congruences that
give the upper bound, builds the explicit colliding pairs that give the lower
bound, and decides when a scaled sequence inherits a discriminator.
Integer arithmetic only.
"""
from __future__ import annotations

import logging
from math import gcd, prod
from typing import Iterable, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from discriminators.engine import DiscriminatorRecord, is_discriminating
from discriminators.families import find_b, make_exp_sequence
from utils.common import next_power_of_two
from utils.errors import DomainError, WitnessInvariantError
from utils.numtheory import crt, factorize, multiplicative_order, valuation

logger = logging.getLogger(__name__)


def closed_form_discriminator(n: int) -> int:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return next_power_of_two(n)


# --- upper-bound congruences ---------------------------------------------------
def verify_lemma1(t: int) -> bool:
    """t^2 = 2^b + 1 (mod 2^(b+1))."""
    b = find_b(t)
    return (t * t) % (1 << (b + 1)) == (1 << b) + 1


def _check_k(k: int, minimum: int) -> None:
    if k < minimum:
        raise DomainError(f"k must be >= {minimum}, got {k}")


def verify_lemma2(t: int, k: int) -> bool:
    """t^(2^k) = 2^(k+b-1) + 1 (mod 2^(k+b))."""
    _check_k(k, 1)
    b = find_b(t)
    return pow(t, 1 << k, 1 << (k + b)) == (1 << (k + b - 1)) + 1


def order_of_t_squared(t: int, k: int) -> int:
    """Order of t^2 in the units modulo 2^(k+b); equals 2^k."""
    _check_k(k, 1)
    b = find_b(t)
    modulus = 1 << (k + b)
    return multiplicative_order((t * t) % modulus, modulus)


def verify_lemma4(t: int, start: int, k: int) -> bool:
    """2^k discriminates the 2^k consecutive terms from ``start`` of ((t^2)^n - 1)/2^b."""
    _check_k(k, 0)
    handle = make_exp_sequence(1, t, 0)
    size = 1 << k
    return is_discriminating(handle, start, size, size)


# --- lower-bound witnesses -------------------------------------------------------
class PartitionedFactorization(BaseModel):
    """m = 2^x * prod p^y * prod q^z, p | t with p^e || t, q odd and coprime to t."""

    model_config = ConfigDict(frozen=True)

    m: int = Field(ge=1)
    t: int
    x: int = Field(ge=0)
    p_part: Tuple[Tuple[int, int, int], ...] = ()
    q_part: Tuple[Tuple[int, int], ...] = ()

    @model_validator(mode="after")
    def _check_partition(self) -> "PartitionedFactorization":
        rebuilt = (1 << self.x) * prod(p ** y for p, y, _ in self.p_part) * prod(q ** z for q, z in self.q_part)
        if rebuilt != self.m:
            raise ValueError(f"partition rebuilds {rebuilt}, not m={self.m}")
        for p, y, e in self.p_part:
            if y < 1 or e < 1 or self.t % p ** e != 0 or self.t % p ** (e + 1) == 0:
                raise ValueError(f"({p}, {y}, {e}) is not an exact prime power of t={self.t}")
        for q, z in self.q_part:
            if z < 1 or q % 2 == 0 or self.t % q == 0:
                raise ValueError(f"({q}, {z}) must be an odd prime coprime to t={self.t}")
        return self


class CollisionWitness(BaseModel):
    """(t^2)^i = (t^2)^j (mod 2^b * m) with 0 <= i < j <= 2^k."""

    model_config = ConfigDict(frozen=True)

    t: int
    b: int
    k: int = Field(ge=0)
    m: int = Field(ge=1)
    i: int = Field(ge=0)
    j: int
    modulus_full: int
    verified: bool = True

    @model_validator(mode="after")
    def _check_witness(self) -> "CollisionWitness":
        if not self.i < self.j <= 1 << self.k:
            raise ValueError(f"need 0 <= i < j <= 2^k, got i={self.i}, j={self.j}, k={self.k}")
        if self.modulus_full != self.m << self.b:
            raise ValueError("modulus_full must equal 2^b * m")
        g = (self.t * self.t) % self.modulus_full
        if pow(g, self.i, self.modulus_full) != pow(g, self.j, self.modulus_full):
            raise ValueError(f"(t^2)^{self.i} and (t^2)^{self.j} differ modulo {self.modulus_full}")
        return self


def partition_factorization(m: int, t: int) -> PartitionedFactorization:
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    find_b(t)
    x = 0
    p_part: List[Tuple[int, int, int]] = []
    q_part: List[Tuple[int, int]] = []
    for p, y in factorize(m).factors:
        if p == 2:
            x = y
        elif t % p == 0:
            e, _ = valuation(abs(t), p)
            p_part.append((p, y, e))
        else:
            q_part.append((p, y))
    return PartitionedFactorization(m=m, t=t, x=x, p_part=tuple(p_part), q_part=tuple(q_part))


def _witness_indices(part: PartitionedFactorization) -> Tuple[int, int]:
    i = max(((y + 2 * e - 1) // (2 * e) for _, y, e in part.p_part), default=0)
    period = (1 << part.x) * prod(q ** (z - 1) * (q - 1) // 2 for q, z in part.q_part)
    return i, i + period


def collision_witness(t: int, k: int, m: int) -> CollisionWitness:
    """Explicit i < j <= 2^k with (t^2)^i = (t^2)^j (mod 2^b * m), for 1 <= m < 2^(k+1).

    m = 2^(k+1) is accepted as input but has no such pair and raises
    DomainError. The pair is checked by modular exponentiation before it is
    returned.
    """
    _check_k(k, 0)
    if not 1 <= m <= 1 << (k + 1):
        raise DomainError(f"m must lie in [1, 2^(k+1)] = [1, {1 << (k + 1)}], got {m}")
    b = find_b(t)
    if m == 1 << (k + 1):
        # t^2 has order 2^(k+1) modulo 2^(k+1+b): j - i would have to be a multiple of it
        raise DomainError(f"no colliding pair with j <= 2^{k} exists for m = 2^(k+1) = {m}")
    part = partition_factorization(m, t)
    i, j = _witness_indices(part)
    full = m << b
    g = (t * t) % full
    if not (0 <= i < j <= 1 << k and pow(g, i, full) == pow(g, j, full)):
        raise WitnessInvariantError(
            f"witness construction failed for t={t}, k={k}, m={m}: i={i}, j={j}"
        )
    logger.debug("[exact] witness t=%s k=%s m=%s -> (%s, %s)", t, k, m, i, j)
    return CollisionWitness(t=t, b=b, k=k, m=m, i=i, j=j, modulus_full=full, verified=True)


def witness_components(
    witness: CollisionWitness, part: PartitionedFactorization
) -> List[Tuple[int, int, int]]:
    """(modulus, (t^2)^i mod it, (t^2)^j mod it) for 2^(x+b), each p^y and each q^z."""
    moduli = [1 << (part.x + witness.b)]
    moduli += [p ** y for p, y, _ in part.p_part]
    moduli += [q ** z for q, z in part.q_part]
    g = witness.t * witness.t
    return [(mod, pow(g, witness.i, mod), pow(g, witness.j, mod)) for mod in moduli]


def recombine_components(components: Iterable[Tuple[int, int, int]]) -> Tuple[int, int]:
    """CRT of the left-hand sides; equals ((t^2)^i mod 2^b*m, 2^b*m)."""
    components = list(components)
    return crt([lhs for _, lhs, _ in components], [mod for mod, _, _ in components])


# --- scaling ---------------------------------------------------------------
def scaled_discriminator_transfer(d: int, a: int) -> bool:
    """Whether D(n) = d carries over unchanged to the sequence a * s."""
    if a == 0:
        raise DomainError("a must be nonzero")
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    return gcd(abs(a), d) == 1


def within_linear_bound(records: Iterable[DiscriminatorRecord], factor: int = 2) -> bool:
    """D(n) < factor * n on every record (every known shift-invariant case meets factor 2)."""
    return all(r.d < factor * r.n for r in records)


__all__ = [
    "closed_form_discriminator",
    "verify_lemma1",
    "verify_lemma2",
    "order_of_t_squared",
    "verify_lemma4",
    "PartitionedFactorization",
    "CollisionWitness",
    "partition_factorization",
    "collision_witness",
    "witness_components",
    "recombine_components",
    "scaled_discriminator_transfer",
    "within_linear_bound",
]
