"""Arbitrary-precision integer primitives.

Provides:
- mod_pow(base, exp, modulus): base^exp mod modulus
- factorize(m): trial-division Factorization
- totient(m), divisors(m), valuation(n, p)
- multiplicative_order(g, modulus): searched over divisors of phi(modulus)
- crt(residues, moduli): recombination for pairwise-coprime moduli
- lemma5_bound_holds(m): log_3 m <= m/3 without floating point

All functions are pure; Python ints carry any precision needed.
"""
from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt, prod
from typing import List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, model_validator
from sympy import isprime
from sympy.ntheory.modular import crt as _sympy_crt

from utils.errors import DomainError


def is_prime(n: int) -> bool:
    return bool(isprime(n))


class Factorization(BaseModel):
    """Multiset of (prime, exponent) pairs, primes strictly increasing."""

    model_config = ConfigDict(frozen=True)

    factors: Tuple[Tuple[int, int], ...] = ()

    @model_validator(mode="after")
    def _check_factors(self) -> "Factorization":
        previous = 1
        for p, e in self.factors:
            if p <= previous:
                raise ValueError(f"primes must be strictly increasing, got {p} after {previous}")
            if e < 1:
                raise ValueError(f"exponent of {p} must be >= 1, got {e}")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            previous = p
        return self


def mod_pow(base: int, exp: int, modulus: int) -> int:
    if modulus < 1:
        raise DomainError(f"modulus must be >= 1, got {modulus}")
    if exp < 0:
        raise DomainError(f"exponent must be >= 0, got {exp}")
    return pow(base, exp, modulus)


def valuation(n: int, p: int) -> Tuple[int, int]:
    """Return (e, n / p^e) with p^e || n, by repeated division."""
    if n == 0:
        raise DomainError("valuation of 0 is unbounded")
    if p < 2:
        raise DomainError(f"valuation base must be >= 2, got {p}")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e, n


@lru_cache(maxsize=4096)
def factorize(m: int) -> Factorization:
    """Trial division up to sqrt(m); m = 1 gives the empty factorization."""
    if m < 1:
        raise DomainError(f"factorize needs m >= 1, got {m}")
    factors = []
    e, m = valuation(m, 2)
    if e:
        factors.append((2, e))
    p = 3
    while p <= isqrt(m):
        if m % p == 0:
            e, m = valuation(m, p)
            factors.append((p, e))
        p += 2
    if m > 1:
        factors.append((m, 1))
    return Factorization(factors=tuple(factors))


def totient(m: int) -> int:
    return prod(p ** (e - 1) * (p - 1) for p, e in factorize(m).factors)


def divisors(m: int) -> List[int]:
    divs = [1]
    for p, e in factorize(m).factors:
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


def multiplicative_order(g: int, modulus: int) -> int:
    """Least d >= 1 with g^d = 1 (mod modulus), tried over divisors of phi(modulus)."""
    if modulus < 2:
        raise DomainError(f"modulus must be >= 2, got {modulus}")
    if gcd(g, modulus) != 1:
        raise DomainError(f"{g} is not a unit modulo {modulus}")
    g %= modulus
    for d in divisors(totient(modulus)):
        if pow(g, d, modulus) == 1:
            return d
    # unreachable: Euler's theorem guarantees phi(modulus) itself works
    raise AssertionError(f"no order found for {g} mod {modulus}")


def crt(residues: Sequence[int], moduli: Sequence[int]) -> Tuple[int, int]:
    """Solve x = r_i (mod m_i) for pairwise-coprime moduli; returns (x, prod m_i)."""
    if len(residues) != len(moduli):
        raise DomainError("residues and moduli differ in length")
    if any(m < 1 for m in moduli):
        raise DomainError("moduli must be >= 1")
    for idx, a in enumerate(moduli):
        for b in moduli[idx + 1:]:
            if gcd(a, b) != 1:
                raise DomainError(f"moduli {a} and {b} are not coprime")
    if not moduli:
        return 0, 1
    x, big_m = _sympy_crt(list(moduli), list(residues))
    return int(x), int(big_m)


def lemma5_bound_holds(m: int) -> bool:
    """log_3 m <= m/3, i.e. m^3 <= 3^m, for a positive integer m."""
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    # 3^m > 2^(3m/2) and m^3 < 2^(3*bitlen(m)): settles large m without building 3^m
    if 3 * m.bit_length() <= (3 * m) // 2:
        return True
    return m ** 3 <= 3 ** m


__all__ = [
    "Factorization",
    "is_prime",
    "mod_pow",
    "valuation",
    "factorize",
    "totient",
    "divisors",
    "multiplicative_order",
    "crt",
    "lemma5_bound_holds",
]
