"""Finite permutation groups given by generators, stored as full element lists.

Everything here is exact and brute force; groups of a few thousand elements
on a few hundred points are the intended scale.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from math import lcm
from typing import Sequence

from ._backend import kernels
from .errors import ClosureCapError
from .perm import Permutation, compose, identity, inverse, order, power

__all__ = [
    "DEFAULT_CLOSURE_CAP",
    "GroupClosure",
    "closure",
    "commutator",
    "commutator_subgroup",
    "center",
    "exponent",
    "is_normal",
    "quotient_exponent",
    "cyclic_subgroups",
    "is_split_metacyclic",
]

DEFAULT_CLOSURE_CAP = 10**6


def closure_cap() -> int:
    """The element cap in force: ``SKEWMORPH_CLOSURE_CAP`` or 10**6."""
    raw = os.environ.get("SKEWMORPH_CLOSURE_CAP")
    return int(raw) if raw else DEFAULT_CLOSURE_CAP


@dataclass(frozen=True)
class GroupClosure:
    """A permutation group together with the generators it was built from.

    ``elements`` is sorted by image tuple so iteration order is reproducible.
    """

    degree: int
    elements: tuple[Permutation, ...]
    generators: tuple[Permutation, ...]
    _members: frozenset = field(repr=False, compare=False, default=frozenset())

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, f: Permutation) -> bool:
        return f.images in self._members

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def _closure_images(gens: Sequence[Permutation], cap: int):
    return kernels.closure([g.images for g in gens], cap)


def closure(generators: Sequence[Permutation], cap: int | None = None) -> GroupClosure:
    """The group generated by ``generators``.

    Raises :class:`ClosureCapError` once the group would exceed ``cap``
    elements (default from :func:`closure_cap`).
    """
    gens = tuple(generators)
    if not gens:
        raise ValueError("closure needs at least one generator")
    n = gens[0].degree
    if any(g.degree != n for g in gens):
        raise ValueError("generators have different degrees")
    cap = closure_cap() if cap is None else cap
    found = _closure_images(gens, cap)
    if found is None:
        raise ClosureCapError(f"closure exceeded {cap} elements")
    found.sort()
    return GroupClosure(
        degree=n,
        elements=tuple(Permutation._trusted(t) for t in found),
        generators=gens,
        _members=frozenset(found),
    )


def bounded_order(generators: Sequence[Permutation], bound: int) -> int | None:
    """Order of the generated group, or None if it exceeds ``bound``."""
    found = _closure_images(tuple(generators), bound)
    return None if found is None else len(found)


def commutator(x: Permutation, y: Permutation) -> Permutation:
    """[x, y] = x y x^-1 y^-1."""
    return compose(compose(x, y), compose(inverse(x), inverse(y)))


def _normal_closure(G: GroupClosure, seeds: list[Permutation], cap=None) -> GroupClosure:
    n = G.degree
    gens = [s for s in seeds if not s.is_identity()]
    if not gens:
        return closure([identity(n)], cap)
    while True:
        H = closure(gens, cap)
        extra = []
        for g in G.generators:
            ginv = inverse(g)
            for h in gens:
                c = compose(g, compose(h, ginv))
                if c not in H and c not in extra:
                    extra.append(c)
        if not extra:
            return H
        gens.extend(extra)


def commutator_subgroup(G: GroupClosure, cap=None) -> GroupClosure:
    """G' as the normal closure of the commutators of generator pairs."""
    seeds = [commutator(x, y) for i, x in enumerate(G.generators) for y in G.generators[i + 1:]]
    return _normal_closure(G, seeds, cap)


def center(G: GroupClosure) -> GroupClosure:
    central = [
        z for z in G.elements
        if all(compose(z, g) == compose(g, z) for g in G.generators)
    ]
    return closure(central)


def exponent(G: GroupClosure) -> int:
    return lcm(*(order(g) for g in G.elements))


def is_normal(N: GroupClosure, G: GroupClosure) -> bool:
    """True when every conjugate of an element of N by a generator of G stays in N."""
    for g in G.generators:
        ginv = inverse(g)
        for h in N.elements:
            if compose(g, compose(h, ginv)) not in N:
                return False
    return True


def _divisors(m: int) -> list[int]:
    return sorted(d for d in range(1, m + 1) if m % d == 0)


def quotient_exponent(G: GroupClosure, N: GroupClosure) -> int:
    """Exponent of G/N: lcm over g of the least k > 0 with g^k in N."""
    if not is_normal(N, G):
        raise ValueError("N is not normal in G")
    result = 1
    for g in G.elements:
        for k in _divisors(order(g)):
            if power(g, k) in N:
                result = lcm(result, k)
                break
    return result


def cyclic_subgroups(G: GroupClosure) -> list[tuple[Permutation, frozenset]]:
    """One (generator, element-image set) pair per cyclic subgroup of G.

    Elements are visited from largest order down, and every generator of a
    subgroup already seen is skipped.
    """
    covered = set()
    out = []
    by_order = sorted(G.elements, key=lambda g: (-order(g), g.images))
    for g in by_order:
        if g.images in covered:
            continue
        d = order(g)
        members = []
        x = identity(G.degree)
        for _ in range(d):
            members.append(x.images)
            x = compose(g, x)
        for k in range(1, d):
            if _coprime(k, d):
                covered.add(members[k])
        out.append((g, frozenset(members)))
    return out


def _coprime(a, b):
    while b:
        a, b = b, a % b
    return a == 1


def is_split_metacyclic(G: GroupClosure) -> bool:
    """Does G = <x><y> with <x> normal and <x> meeting <y> trivially?"""
    size = G.order
    subs = cyclic_subgroups(G)
    by_size: dict[int, list[frozenset]] = {}
    for _, members in subs:
        by_size.setdefault(len(members), []).append(members)
    ident = tuple(range(G.degree))
    for x, X in subs:
        if size % len(X):
            continue
        partners = by_size.get(size // len(X))
        if not partners:
            continue
        ginvs = [(g, inverse(g)) for g in G.generators]
        if any(compose(g, compose(x, gi)).images not in X for g, gi in ginvs):
            continue
        for Y in partners:
            if X & Y == {ident}:
                return True
    return False
