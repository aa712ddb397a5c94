"""Enumeration of Skew(Z_{p^e}) from admissible tuples, closed-form counts,
the skew product groups G(i, j) and cross-checks against the oracles.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import ConsistencyError
from .groups import GroupClosure, closure
from .oracle import DEFAULT_PRUNED_BOUND, EXHAUSTIVE_BOUND, oracle_exhaustive, oracle_pruned
from .perm import Permutation, translation
from .skew import AdmissibleTuple, iterate_admissible, s_ij, s_ijkl, verify_definition
from .zmod import Modulus

__all__ = [
    "SkewRecord",
    "Mismatch",
    "EnumerationReport",
    "ClosedFormCount",
    "E1_NOTE",
    "count_closed_form",
    "enumerate_constructive",
    "skew_product_group",
    "cross_check",
]

E1_NOTE = "e = 1: every skew-morphism of Z_p is an automorphism, so the count is p - 1"


@dataclass(frozen=True)
class SkewRecord:
    """One constructive skew-morphism, ready for serialization."""

    tuple: AdmissibleTuple
    images: tuple[int, ...]
    pi_values: tuple[int, ...]
    order: int

    def to_json(self) -> dict:
        return {
            "tuple": list(self.tuple.as_tuple()),
            "images": list(self.images),
            "pi": list(self.pi_values),
            "order": self.order,
        }


@dataclass(frozen=True)
class Mismatch:
    """A disagreement between two sources, with the offending objects."""

    kind: str
    detail: str
    witnesses: tuple = ()


@dataclass
class EnumerationReport:
    modulus: Modulus
    n1_count: int
    n2_count: int
    total: int
    closed_form_total: int
    oracle_total: int | None = None
    mismatches: list[Mismatch] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


class ClosedFormCount(NamedTuple):
    n1: int
    n2: int
    total: int


def _exact_div(num: int, den: int) -> int:
    if num % den:
        raise ConsistencyError(f"{num} is not divisible by {den}")
    return num // den


def count_closed_form(m: Modulus) -> ClosedFormCount:
    """(N1, N2, total): tuples with k = 0, with k != 0, and all of them.

    For e = 1 the classification does not apply; the answer there is the
    p - 1 automorphisms of Z_p (see :data:`E1_NOTE`).
    """
    p, e = m.p, m.e
    if e == 1:
        return ClosedFormCount(1, p - 2, p - 1)
    n1 = _exact_div(p * (p ** (2 * e - 3) + 1), p + 1)
    n2 = (p - 2) * _exact_div(p ** (2 * e - 1) + 1, p + 1)
    total = _exact_div((p - 1) * (p ** (2 * e - 1) - p ** (2 * e - 2) + 2), p + 1)
    if n1 + n2 != total:
        raise ConsistencyError(f"N1 + N2 = {n1 + n2} but the total formula gives {total}")
    return ClosedFormCount(n1, n2, total)


def enumerate_constructive(m: Modulus) -> list[SkewRecord]:
    """Every s_ijkl(T) in lexicographic tuple order.

    Raises :class:`ConsistencyError` if two tuples give the same permutation
    or a result fails verification.
    """
    if m.e < 2:
        raise ValueError("the constructive families need e >= 2")
    records = []
    owner: dict[tuple, AdmissibleTuple] = {}
    for tup in iterate_admissible(m):
        s = s_ijkl(tup, m)
        prev = owner.setdefault(s.images, tup)
        if prev is not tup:
            raise ConsistencyError(f"tuples {prev.as_tuple()} and {tup.as_tuple()} give the same map")
        if not verify_definition(s.perm):
            raise ConsistencyError(f"s_{tup.as_tuple()} failed verification")
        records.append(SkewRecord(tup, s.images, s.pi.values, s.ord))
    return records


def skew_product_group(i: int, j: int, m: Modulus, cap: int | None = None) -> GroupClosure:
    """G(i, j) = <t, s_{p^(e-1-i), j}>, a group of order p^(e+i)."""
    p, e = m.p, m.e
    if not 1 <= i <= e - 1:
        raise ValueError(f"i must lie in [1, e-1], got {i}")
    if not 0 <= j < p ** (i - 1):
        raise ValueError(f"j must lie in [0, p^(i-1)), got {j}")
    G = closure([translation(m), s_ij(p ** (e - 1 - i), j, m).perm], cap)
    if G.order != p ** (e + i):
        raise ConsistencyError(f"|G({i},{j})| = {G.order}, expected {p ** (e + i)}")
    return G


def _run_oracle(n: int, **kwargs) -> frozenset[Permutation]:
    if n <= EXHAUSTIVE_BOUND:
        return oracle_exhaustive(n)
    return oracle_pruned(n, **kwargs)


def cross_check(m: Modulus, use_oracle: bool = False, **oracle_kwargs) -> EnumerationReport:
    """Compare tuple counts, the closed form and (optionally) an oracle.

    Disagreements are collected as :class:`Mismatch` entries rather than
    raised.  ``oracle_kwargs`` go to :func:`~skewmorph.oracle.oracle_pruned`.
    """
    if m.e < 2:
        raise ValueError("cross_check needs e >= 2")
    bound = oracle_kwargs.get("bound", DEFAULT_PRUNED_BOUND)
    if use_oracle and m.n > max(bound, EXHAUSTIVE_BOUND):
        raise ValueError(f"no oracle available for n = {m.n}")
    records = enumerate_constructive(m)
    n1 = sum(1 for r in records if r.tuple.k == 0)
    cf = count_closed_form(m)
    report = EnumerationReport(
        modulus=m,
        n1_count=n1,
        n2_count=len(records) - n1,
        total=len(records),
        closed_form_total=cf.total,
    )
    if report.total != cf.total:
        report.mismatches.append(Mismatch("count", f"{report.total} tuples, closed form {cf.total}"))
    if (report.n1_count, report.n2_count) != (cf.n1, cf.n2):
        report.mismatches.append(
            Mismatch("split", f"(N1, N2) = ({report.n1_count}, {report.n2_count}), closed form ({cf.n1}, {cf.n2})")
        )
    if use_oracle:
        found = {f.images for f in _run_oracle(m.n, **oracle_kwargs)}
        report.oracle_total = len(found)
        built = {r.images: r.tuple for r in records}
        extra = sorted(set(built) - found)
        missing = sorted(found - set(built))
        if extra:
            report.mismatches.append(
                Mismatch("not-found-by-oracle", f"{len(extra)} constructive maps", tuple((built[x], x) for x in extra))
            )
        if missing:
            report.mismatches.append(Mismatch("not-constructed", f"{len(missing)} oracle maps", tuple(missing)))
    return report
