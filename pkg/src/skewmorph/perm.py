"""Permutations of {0, ..., n-1} stored as image tuples.

Products follow the right-to-left convention: ``compose(f, g)(x) == f(g(x))``.
"""
from __future__ import annotations

from math import lcm
from typing import Iterable, Sequence

from .zmod import Modulus, _unit_value

__all__ = [
    "Permutation",
    "identity",
    "translation",
    "mult_map",
    "compose",
    "inverse",
    "power",
    "order",
    "conjugate",
    "cycles",
    "orbit_partition",
]


class Permutation:
    """An immutable bijection of {0, ..., n-1}.

    >>> f = Permutation([1, 2, 0])
    >>> f(2), f.degree
    (0, 3)
    """

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(v) for v in images)
        n = len(images)
        if n == 0:
            raise ValueError("a permutation needs degree at least 1")
        seen = bytearray(n)
        for v in images:
            if not 0 <= v < n or seen[v]:
                raise ValueError("image sequence is not a bijection of {0..n-1}")
            seen[v] = 1
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _trusted(cls, images: tuple) -> "Permutation":
        # caller guarantees a bijection given as a tuple of ints
        self = object.__new__(cls)
        self.images = images
        self._hash = hash(images)
        return self

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x % len(self.images)]

    def __len__(self):
        return len(self.images)

    def __iter__(self):
        return iter(self.images)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Permutation({list(self.images)})"

    def is_identity(self) -> bool:
        return all(v == x for x, v in enumerate(self.images))


def identity(n: int) -> Permutation:
    return Permutation._trusted(tuple(range(n)))


def translation(m: Modulus | int) -> Permutation:
    """The full cycle x -> x + 1 on Z_n."""
    n = m if isinstance(m, int) else m.n
    return Permutation._trusted(tuple((x + 1) % n for x in range(n)))


def mult_map(u, m: Modulus) -> Permutation:
    """The automorphism x -> u*x of Z_n; ``u`` must be a unit."""
    value = _unit_value(u, m)
    n = m.n
    return Permutation._trusted(tuple(value * x % n for x in range(n)))


def _check_degrees(*perms: Permutation):
    n = perms[0].degree
    if any(q.degree != n for q in perms):
        raise ValueError("permutations have different degrees")


def compose(f: Permutation, g: Permutation) -> Permutation:
    """The product f g, i.e. x -> f(g(x))."""
    _check_degrees(f, g)
    return Permutation._trusted(tuple(map(f.images.__getitem__, g.images)))


def inverse(f: Permutation) -> Permutation:
    out = [0] * f.degree
    for x, v in enumerate(f.images):
        out[v] = x
    return Permutation._trusted(tuple(out))


def cycles(f: Permutation) -> list[list[int]]:
    """Disjoint cycles including fixed points, each starting at its least point."""
    n = f.degree
    seen = bytearray(n)
    out = []
    for s in range(n):
        if seen[s]:
            continue
        cyc = []
        x = s
        while not seen[x]:
            seen[x] = 1
            cyc.append(x)
            x = f.images[x]
        out.append(cyc)
    return out


def order(f: Permutation) -> int:
    return lcm(*(len(c) for c in cycles(f)))


def power(f: Permutation, k: int) -> Permutation:
    """f**k for any integer k, evaluated cycle by cycle."""
    out = [0] * f.degree
    for cyc in cycles(f):
        L = len(cyc)
        shift = k % L
        for idx, x in enumerate(cyc):
            out[x] = cyc[(idx + shift) % L]
    return Permutation._trusted(tuple(out))


def conjugate(f: Permutation, by: Permutation) -> Permutation:
    """``by * f * by^-1``."""
    _check_degrees(f, by)
    return compose(by, compose(f, inverse(by)))


def orbit_partition(perms: Sequence[Permutation]) -> frozenset[frozenset[int]]:
    """Orbits of the group generated by ``perms`` on {0..n-1}."""
    n = perms[0].degree
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for f in perms:
        for x, v in enumerate(f.images):
            ra, rb = find(x), find(v)
            if ra != rb:
                parent[ra] = rb
    groups: dict[int, set[int]] = {}
    for x in range(n):
        groups.setdefault(find(x), set()).add(x)
    return frozenset(frozenset(g) for g in groups.values())

