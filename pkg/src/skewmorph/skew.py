"""Skew-morphisms of Z_n and the two constructive families for n = p**e.

A bijection f of Z_n fixing 0 is a skew-morphism when for every x there is
an integer k = pi(x) with

    f(x + y) = f(x) + f^k(y)   for all y.

``b_map(j)`` is the permutation fixing 0 that conjugates the translation t
to t * a^j, where a is multiplication by p + 1.  The families are

    s_ij(i, j)         = b_j^-1 a^i b_j
    s_ijkl(i, j, k, l) = b_j^-1 a^i h b_j,   h = (b^k b_l)_p'

with b multiplication by :func:`~skewmorph.zmod.canonical_b_unit` and
``g_p'`` the p'-part of g, the power of g whose order is the largest divisor
of |g| prime to p.  Whenever b^k b_l already has order d = |b^k| this is just
b^k b_l.  For some tuples b^k b_l has order d * p^r instead (its d-th power is
a nontrivial power of a), and the plain product a^i b^k b_l can then fail to
be a skew-morphism; :func:`literal_product` keeps that product for inspection.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterator

from ._backend import kernels
from .errors import ConsistencyError, NotClassifiableError
from .groups import bounded_order
from .perm import Permutation, compose, conjugate, inverse, mult_map, order, power, translation
from .zmod import Modulus, canonical_b_unit, p_valuation, totient

__all__ = [
    "PowerFunction",
    "SkewMorphism",
    "AdmissibleTuple",
    "compute_power_function",
    "verify_definition",
    "verify_criterion",
    "b_map",
    "s_ij",
    "s_ijkl",
    "literal_product",
    "p_prime_part",
    "is_admissible",
    "admissible_c",
    "iterate_admissible",
    "expected_order",
    "classify",
    "crt_product",
]


@dataclass(frozen=True)
class PowerFunction:
    degree: int
    modulus_of_values: int
    values: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.values[x % self.degree]


@dataclass(frozen=True)
class SkewMorphism:
    """A verified skew-morphism together with its power function and order."""

    perm: Permutation
    pi: PowerFunction
    ord: int
    modulus: Modulus | None = None

    @classmethod
    def from_perm(cls, perm: Permutation, modulus: Modulus | None = None) -> "SkewMorphism":
        """Wrap ``perm``; raises ValueError when it is not a skew-morphism."""
        if modulus is not None and perm.degree != modulus.n:
            raise ValueError("degree does not match the modulus")
        pi = compute_power_function(perm)
        if pi is None:
            raise ValueError("permutation is not a skew-morphism")
        return cls(perm=perm, pi=pi, ord=pi.modulus_of_values, modulus=modulus)

    def __call__(self, x: int) -> int:
        return self.perm(x)

    @property
    def images(self) -> tuple[int, ...]:
        return self.perm.images


def compute_power_function(f: Permutation) -> PowerFunction | None:
    """The power function of f with values in [0, order(f)), or None.

    Raises ValueError when f does not fix 0.
    """
    if f.images[0] != 0:
        raise ValueError("a skew-morphism must fix 0")
    solved = kernels.power_function(f.images)
    if solved is None:
        return None
    d, values = solved
    return PowerFunction(degree=f.degree, modulus_of_values=d, values=tuple(values))


def verify_definition(f: Permutation) -> bool:
    """Check the defining identity directly."""
    if f.images[0] != 0:
        return False
    return compute_power_function(f) is not None


def verify_criterion(f: Permutation) -> bool:
    """Check f(0) = 0 and |<t, f>| = n * |f| by building the group.

    Growth past n * |f| elements already settles the answer, so the closure
    stops there.
    """
    if f.images[0] != 0:
        return False
    n = f.degree
    target = n * order(f)
    size = bounded_order([translation(n), f], target)
    return size == target


def _a_power(i: int, m: Modulus) -> int:
    return pow(m.p + 1, i, m.n)


@lru_cache(maxsize=4096)
def b_map(j: int, m: Modulus) -> Permutation:
    """b_j(x) = 1 + (p+1)^j + ... + (p+1)^((x-1)j), b_j(0) = 0."""
    if not 0 <= j < m.p ** (m.e - 1):
        raise ValueError(f"j must lie in [0, p^(e-1)), got {j}")
    n = m.n
    step = _a_power(j, m)
    images = [0] * n
    val, term = 0, 1
    for x in range(n):
        images[x] = val
        val = (val + term) % n
        term = term * step % n
    if val != 0 or len(set(images)) != n:
        raise ConsistencyError(f"b_{j} is not a bijection of Z_{n}")
    b = Permutation._trusted(tuple(images))
    t = translation(m)
    if conjugate(t, by=b) != compose(t, mult_map(step, m)):
        raise ConsistencyError(f"b_{j} does not conjugate t to t*a^{j}")
    return b


def _checked(perm: Permutation, m: Modulus, expected: int, label: str) -> SkewMorphism:
    pi = compute_power_function(perm)
    if pi is None:
        raise ConsistencyError(f"{label} failed the skew-morphism identity")
    if pi.modulus_of_values != expected:
        raise ConsistencyError(f"{label} has order {pi.modulus_of_values}, expected {expected}")
    return SkewMorphism(perm=perm, pi=pi, ord=expected, modulus=m)


@lru_cache(maxsize=8192)
def s_ij(i: int, j: int, m: Modulus) -> SkewMorphism:
    """b_j^-1 a^i b_j, a skew-morphism of order p^(e-1)/gcd(i, p^(e-1))."""
    if m.e < 2:
        raise ValueError("s_ij needs e >= 2")
    top = m.p ** (m.e - 1)
    if not (0 <= i < top and 0 <= j < top):
        raise ValueError(f"(i, j) = ({i}, {j}) outside [0, {top})")
    b = b_map(j, m)
    perm = compose(inverse(b), compose(mult_map(_a_power(i, m), m), b))
    return _checked(perm, m, top // gcd(i, top), f"s_({i},{j})")


@dataclass(frozen=True, order=True)
class AdmissibleTuple:
    i: int
    j: int
    k: int
    l: int
    modulus: Modulus | None = None

    def __post_init__(self):
        if self.modulus is not None and not is_admissible(self.i, self.j, self.k, self.l, self.modulus):
            raise ValueError(f"{self.as_tuple()} is not admissible for {self.modulus}")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.i, self.j, self.k, self.l)


def admissible_c(i: int, m: Modulus) -> int:
    """The c with p^c = gcd(i, p^(e-2)), using gcd(0, x) = x."""
    return p_valuation(gcd(i, m.p ** (m.e - 2)), m.p)


def is_admissible(i: int, j: int, k: int, l: int, m: Modulus) -> bool:
    """Conditions (C0)-(C2) on a parameter 4-tuple, read literally."""
    if m.e < 2:
        return False
    p, e = m.p, m.e
    top = p ** (e - 1)
    if not (0 <= i < top and 0 <= l < top and 0 <= k <= p - 2):
        return False
    c = admissible_c(i, m)
    if not 0 <= j < p ** (e - 2 - c):
        return False
    if (i == 0 or k == 0) and l != 0:
        return False
    if i != 0 and k != 0:
        if j % p**c or l % p ** max(c, e - 2 - c):
            return False
    return True


def iterate_admissible(m: Modulus) -> Iterator[AdmissibleTuple]:
    """Every admissible tuple once, in lexicographic order."""
    if m.e < 2:
        raise ValueError("admissible tuples need e >= 2")
    p, e = m.p, m.e
    top = p ** (e - 1)
    for i in range(top):
        c = admissible_c(i, m)
        l_step = p ** max(c, e - 2 - c)
        for j in range(p ** (e - 2 - c)):
            for k in range(p - 1):
                if i == 0 or k == 0:
                    yield AdmissibleTuple(i, j, k, 0)
                elif j % p**c == 0:
                    for l in range(0, top, l_step):
                        yield AdmissibleTuple(i, j, k, l)


def expected_order(i: int, k: int, m: Modulus) -> int:
    """p^(e-1)(p-1) / (gcd(i, p^(e-1)) gcd(k, p-1))."""
    top = m.p ** (m.e - 1)
    return top * (m.p - 1) // (gcd(i, top) * gcd(k, m.p - 1))


def p_prime_part(g: Permutation, p: int) -> Permutation:
    """The power g^m with m = 1 mod d and m = 0 mod p^r, where |g| = d p^r, p !| d."""
    d, r = order(g), 1
    while d % p == 0:
        d //= p
        r *= p
    if d == 1:
        return power(g, 0)
    return power(g, r * pow(r, -1, d))


def _middle(k: int, l: int, m: Modulus) -> Permutation:
    b = mult_map(canonical_b_unit(m), m)
    return compose(power(b, k), b_map(l, m))


def literal_product(tup, m: Modulus) -> Permutation:
    """b_j^-1 a^i b^k b_l b_j exactly as written, with no checks on the result."""
    i, j, k, l = tup.as_tuple() if isinstance(tup, AdmissibleTuple) else tup
    bj = b_map(j, m)
    inner = compose(mult_map(_a_power(i, m), m), _middle(k, l, m))
    return compose(inverse(bj), compose(inner, bj))


@lru_cache(maxsize=16384)
def _s_ijkl_cached(i: int, j: int, k: int, l: int, m: Modulus) -> SkewMorphism:
    h = p_prime_part(_middle(k, l, m), m.p)
    d = (m.p - 1) // gcd(k, m.p - 1)
    if order(h) != d:
        raise ConsistencyError(f"p'-part of b^{k} b_{l} has order {order(h)}, expected {d}")
    bj = b_map(j, m)
    inner = compose(mult_map(_a_power(i, m), m), h)
    perm = compose(inverse(bj), compose(inner, bj))
    return _checked(perm, m, expected_order(i, k, m), f"s_({i},{j},{k},{l})")


def s_ijkl(tup, m: Modulus | None = None) -> SkewMorphism:
    """b_j^-1 a^i (b^k b_l)_p' b_j for an admissible tuple.

    ``tup`` is an :class:`AdmissibleTuple` or a plain 4-sequence (then
    ``m`` is required).
    """
    if isinstance(tup, AdmissibleTuple):
        m = tup.modulus if m is None else m
        i, j, k, l = tup.as_tuple()
    else:
        i, j, k, l = tup
    if m is None:
        raise ValueError("a modulus is required")
    if not is_admissible(i, j, k, l, m):
        raise ValueError(f"({i}, {j}, {k}, {l}) is not admissible for {m}")
    return _s_ijkl_cached(i, j, k, l, m)


def classify(s: SkewMorphism | Permutation, m: Modulus) -> AdmissibleTuple:
    """The unique admissible tuple T with s_ijkl(T) equal to ``s``.

    Tuples are tried in lexicographic order, skipping those whose order
    formula disagrees with the order of ``s``.
    """
    perm = s.perm if isinstance(s, SkewMorphism) else s
    if m.e < 2:
        raise ValueError("classification needs e >= 2")
    if perm.degree != m.n or not verify_definition(perm):
        raise ValueError("input is not a skew-morphism of this modulus")
    target = order(perm)
    for tup in iterate_admissible(m):
        if expected_order(tup.i, tup.k, m) != target:
            continue
        if _s_ijkl_cached(tup.i, tup.j, tup.k, tup.l, m).perm == perm:
            return AdmissibleTuple(tup.i, tup.j, tup.k, tup.l, m)
    raise NotClassifiableError(f"no admissible tuple produces {perm!r}")


def crt_product(s1, s2) -> Permutation:
    """The skew-morphism of Z_(n1 n2) acting as s1 mod n1 and s2 mod n2.

    Needs gcd(n1, n2) = gcd(n1, phi(n2)) = gcd(phi(n1), n2) = 1.
    """
    f1 = s1.perm if isinstance(s1, SkewMorphism) else s1
    f2 = s2.perm if isinstance(s2, SkewMorphism) else s2
    n1, n2 = f1.degree, f2.degree
    if gcd(n1, n2) != 1 or gcd(n1, totient(n2)) != 1 or gcd(totient(n1), n2) != 1:
        raise ValueError(f"coprimality hypotheses fail for n1={n1}, n2={n2}")
    n = n1 * n2
    e1 = n2 * pow(n2, -1, n1) % n if n1 > 1 else 0
    e2 = n1 * pow(n1, -1, n2) % n if n2 > 1 else 0
    images = tuple((f1.images[x % n1] * e1 + f2.images[x % n2] * e2) % n for x in range(n))
    product = Permutation(images)
    if not verify_definition(product):
        raise ConsistencyError("CRT product failed the skew-morphism identity")
    return product
