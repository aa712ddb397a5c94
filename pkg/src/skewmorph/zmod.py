"""Exact arithmetic in the residue ring Z_n for n = p**e, p an odd prime.

The two distinguished units are ``p + 1`` (multiplication by it is the
automorphism called ``a`` throughout the package, of order p**(e-1)) and the
canonical unit of order p - 1 returned by :func:`canonical_b_unit`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .errors import ConsistencyError

__all__ = [
    "MAX_MODULUS",
    "Modulus",
    "Unit",
    "is_prime",
    "prime_factors",
    "totient",
    "pow_mod",
    "multiplicative_order",
    "smallest_primitive_root",
    "canonical_b_unit",
    "gcd_shift",
    "p_valuation",
]

#: Moduli must stay below this bound (products fit in 64 bits).
MAX_MODULUS = 2**32


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


def prime_factors(m: int) -> list[int]:
    """Distinct prime factors of ``m`` in increasing order (trial division)."""
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out.append(m)
    return out


def totient(m: int) -> int:
    """Euler's phi for small positive ``m``."""
    if m < 1:
        raise ValueError("totient needs a positive integer")
    result = m
    for q in prime_factors(m):
        result -= result // q
    return result


@dataclass(frozen=True)
class Modulus:
    """The pair (p, e) describing Z_{p^e}."""

    p: int
    e: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not isinstance(self.e, int):
            raise TypeError("p and e must be integers")
        if self.p < 3 or not is_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.e < 1:
            raise ValueError(f"e must be at least 1, got {self.e}")
        if self.p**self.e >= MAX_MODULUS:
            raise ValueError(f"{self.p}**{self.e} exceeds the supported modulus bound 2**32")

    @property
    def n(self) -> int:
        return self.p**self.e

    @property
    def phi(self) -> int:
        return (self.p - 1) * self.p ** (self.e - 1)

    def __str__(self):
        return f"Z_{self.p}^{self.e}"


@dataclass(frozen=True)
class Unit:
    """A residue coprime to p, tagged with its modulus."""

    value: int
    modulus: Modulus

    def __post_init__(self):
        n = self.modulus.n
        if not 0 < self.value < n or gcd(self.value, n) != 1:
            raise ValueError(f"{self.value} is not a unit modulo {n}")

    def __index__(self):
        return self.value

    __int__ = __index__


def _unit_value(u, m: Modulus) -> int:
    value = int(u) % m.n
    if gcd(value, m.n) != 1:
        raise ValueError(f"{int(u)} is not a unit modulo {m.n}")
    return value


def pow_mod(base: int, exp: int, m: Modulus) -> int:
    """``base**exp mod n``; exponent must be non-negative."""
    if exp < 0:
        raise ValueError("exponent must be non-negative")
    return pow(base, exp, m.n)


def multiplicative_order(u, m: Modulus) -> int:
    """Order of the unit ``u`` in (Z_n)^*.

    Starts from the group order (p-1)p^(e-1) and strips prime factors while
    the power stays 1.
    """
    value = _unit_value(u, m)
    n = m.n
    order = m.phi
    for q in prime_factors(order):
        while order % q == 0 and pow(value, order // q, n) == 1:
            order //= q
    return order


@lru_cache(maxsize=None)
def smallest_primitive_root(m: Modulus) -> int:
    phi = m.phi
    qs = prime_factors(phi)
    for g in range(2, m.n):
        if gcd(g, m.n) != 1:
            continue
        if all(pow(g, phi // q, m.n) != 1 for q in qs):
            return g
    raise ArithmeticError(f"no primitive root modulo {m.n}")  # unreachable for odd p


def canonical_b_unit(m: Modulus) -> Unit:
    """The unit g**(p**(e-1)) for the smallest primitive root g; it has order p - 1."""
    g = smallest_primitive_root(m)
    return Unit(pow(g, m.p ** (m.e - 1), m.n), m)


def p_valuation(x: int, p: int) -> int:
    """Largest c with p**c dividing x (x must be non-zero)."""
    if x == 0:
        raise ValueError("valuation of zero is unbounded")
    c = 0
    while x % p == 0:
        x //= p
        c += 1
    return c


def gcd_shift(k: int, m: Modulus) -> int:
    """gcd((p+1)**k - 1, p**e), computed directly.

    The result always equals ``p * gcd(k, p**(e-1))`` (with gcd(0, x) = x);
    this is checked before returning.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    p, n = m.p, m.n
    direct = gcd((pow(p + 1, k, n) - 1) % n, n)
    if direct != p * gcd(k, p ** (m.e - 1)):
        raise ConsistencyError(f"gcd identity failed at k={k}, {m}")
    return direct
