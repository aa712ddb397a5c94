"""Brute-force searches for skew-morphisms of Z_n that use nothing but the
defining identity.

``oracle_exhaustive`` tries every bijection fixing 0.  ``oracle_pruned``
runs a depth-first search over partial maps, split into one branch per value
of f(1).  Pruning rules (all consequences of the definition alone):

* f(x + y) - f(x) = f^k(y) with k = pi(x), so it lies on the f-cycle of y;
* that map is a power of f and therefore commutes with f;
* u f u^-1 is a skew-morphism for every unit u, so only maps whose f(1) is
  least among their unit conjugates are searched, and the survivors are
  expanded by conjugation at the end.

Every leaf is checked against the full identity.

Checkpoint format (text, one record per line)::

    skewmorph-oracle-checkpoint 1
    n <n>
    branch <f(1)> <nodes> <count>
    sol <image> <image> ...        (count lines, one per representative)

A branch appears only after it has been searched to completion, so a resumed
run skips it and re-searches everything else.
"""
from __future__ import annotations

import os
import tempfile
import time
from itertools import permutations
from math import gcd
from typing import Iterable

from ._backend import kernels
from .errors import OracleTimeoutError
from .perm import Permutation

__all__ = [
    "EXHAUSTIVE_BOUND",
    "DEFAULT_PRUNED_BOUND",
    "DEFAULT_TIME_CAP",
    "oracle_exhaustive",
    "oracle_pruned",
    "expand_by_units",
    "time_cap",
    "jobs",
]

EXHAUSTIVE_BOUND = 10
DEFAULT_PRUNED_BOUND = 27
DEFAULT_TIME_CAP = 600.0
CHECKPOINT_MAGIC = "skewmorph-oracle-checkpoint 1"


def time_cap() -> float:
    """Seconds allowed for a pruned search: ``SKEWMORPH_TIME_CAP`` or 600."""
    raw = os.environ.get("SKEWMORPH_TIME_CAP")
    return float(raw) if raw else DEFAULT_TIME_CAP


def jobs() -> int:
    """Worker processes for a pruned search: ``SKEWMORPH_JOBS`` or 1."""
    raw = os.environ.get("SKEWMORPH_JOBS")
    return max(1, int(raw)) if raw else 1


def oracle_exhaustive(n: int) -> frozenset[Permutation]:
    """All skew-morphisms of Z_n by testing each of the (n-1)! candidates."""
    if not 1 <= n <= EXHAUSTIVE_BOUND:
        raise ValueError(f"exhaustive oracle supports 1 <= n <= {EXHAUSTIVE_BOUND}, got {n}")
    found = set()
    solve = kernels.power_function
    for rest in permutations(range(1, n)):
        images = (0,) + rest
        if solve(images) is not None:
            found.add(Permutation._trusted(images))
    return frozenset(found)


def expand_by_units(n: int, reps: Iterable[tuple]) -> frozenset[Permutation]:
    """Close a set of maps under conjugation x -> u f(u^-1 x) by units u."""
    units = [w for w in range(1, n) if gcd(w, n) == 1]
    out = set()
    for r in reps:
        for w in units:
            wi = pow(w, -1, n)
            out.add(Permutation._trusted(tuple(w * r[wi * x % n] % n for x in range(n))))
    return frozenset(out)


# -- checkpoint file -------------------------------------------------------

def _read_checkpoint(path: str, n: int) -> dict[int, tuple[int, list[tuple]]]:
    done: dict[int, tuple[int, list[tuple]]] = {}
    if not path or not os.path.exists(path):
        return done
    with open(path) as fh:
        lines = [ln.split() for ln in fh.read().splitlines() if ln.strip()]
    if not lines or " ".join(lines[0]) != CHECKPOINT_MAGIC:
        raise ValueError(f"{path} is not an oracle checkpoint")
    if lines[1] != ["n", str(n)]:
        raise ValueError(f"checkpoint {path} belongs to a different n")
    idx = 2
    while idx < len(lines):
        tag, first, nodes, count = lines[idx]
        if tag != "branch":
            raise ValueError(f"malformed checkpoint line {idx + 1}")
        sols = [tuple(int(v) for v in lines[idx + 1 + s][1:]) for s in range(int(count))]
        done[int(first)] = (int(nodes), sols)
        idx += 1 + int(count)
    return done


def _write_checkpoint(path: str, n: int, done: dict[int, tuple[int, list[tuple]]]) -> None:
    lines = [CHECKPOINT_MAGIC, f"n {n}"]
    for first in sorted(done):
        nodes, sols = done[first]
        lines.append(f"branch {first} {nodes} {len(sols)}")
        lines.extend("sol " + " ".join(map(str, s)) for s in sorted(sols))
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".ckpt-")
    with os.fdopen(fd, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)


# -- pruned search ---------------------------------------------------------

def _run_branch(args):
    n, first, deadline = args
    sols, nodes, complete = kernels.search_branch(n, first, deadline)
    return first, [tuple(s) for s in sols], nodes, complete


def oracle_pruned(
    n: int,
    bound: int = DEFAULT_PRUNED_BOUND,
    time_limit: float | None = None,
    workers: int | None = None,
    checkpoint: str | None = None,
    stats: dict | None = None,
) -> frozenset[Permutation]:
    """All skew-morphisms of Z_n by pruned depth-first search.

    Raises :class:`OracleTimeoutError` when ``time_limit`` seconds (default
    from :func:`time_cap`) pass before the search is complete; finished
    branches are then already in ``checkpoint`` if one was given.  ``stats``,
    when supplied, receives node counts per branch.
    """
    if n < 1 or n > bound:
        raise ValueError(f"pruned oracle supports 1 <= n <= {bound}, got {n}")
    if n < 3:
        return frozenset({Permutation._trusted(tuple(range(n)))})
    limit = time_cap() if time_limit is None else time_limit
    nworkers = jobs() if workers is None else max(1, workers)
    deadline = time.monotonic() + limit

    done = _read_checkpoint(checkpoint, n) if checkpoint else {}
    todo = [v for v in range(1, n) if v not in done]
    pending = [(n, v, deadline) for v in todo]
    timed_out = False

    def record(first, sols, nodes, complete):
        nonlocal timed_out
        if not complete:
            timed_out = True
            return
        done[first] = (nodes, sols)
        if checkpoint:
            _write_checkpoint(checkpoint, n, done)

    if nworkers > 1 and len(pending) > 1:
        from multiprocessing import get_context

        with get_context("spawn").Pool(nworkers) as pool:
            for result in pool.imap_unordered(_run_branch, pending):
                record(*result)
    else:
        for item in pending:
            if time.monotonic() > deadline:
                timed_out = True
                break
            record(*_run_branch(item))

    if stats is not None:
        stats["nodes"] = {v: done[v][0] for v in sorted(done)}
        stats["total_nodes"] = sum(v[0] for v in done.values())
    if timed_out or len(done) < n - 1:
        remaining = tuple(v for v in range(1, n) if v not in done)
        raise OracleTimeoutError(
            f"pruned oracle for n={n} stopped after {limit:g}s with "
            f"{len(remaining)} of {n - 1} branches unfinished",
            completed=tuple(sorted(done)),
            remaining=remaining,
            nodes=sum(v[0] for v in done.values()),
        )
    reps = [s for v in sorted(done) for s in done[v][1]]
    return expand_by_units(n, reps)
