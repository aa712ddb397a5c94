"""Pure-Python versions of the hot kernels.

Every function here has a twin with the same name and contract in the
compiled ``_kernels`` extension.  Permutations travel as plain sequences of
ints (``images[x]`` is the image of ``x``).
"""
import time
from math import gcd, lcm

BACKEND = "python"


def _cycles(images):
    n = len(images)
    cyc = [-1] * n
    pos = [0] * n
    lengths = []
    for s in range(n):
        if cyc[s] >= 0:
            continue
        c = len(lengths)
        x = s
        k = 0
        while cyc[x] < 0:
            cyc[x] = c
            pos[x] = k
            k += 1
            x = images[x]
        lengths.append(k)
    return cyc, pos, lengths


def _crt(a1, m1, a2, m2):
    g = gcd(m1, m2)
    if (a2 - a1) % g:
        return None
    m2g = m2 // g
    t = ((a2 - a1) // g * pow(m1 // g, -1, m2g)) % m2g if m2g > 1 else 0
    return a1 + m1 * t, m1 * m2g


def power_function(images):
    """Solve ``f(x+y) = f(x) + f^k(y)`` for every x.

    Returns ``(d, values)`` where d is the order of f and ``values[x]`` the
    unique k in [0, d); returns None when some x admits no k.  Requires
    ``images[0] == 0``.

    For fixed x the map y -> f(x+y) - f(x) must keep every cycle of f and
    rotate it by a fixed amount; the rotations are merged by CRT.
    """
    n = len(images)
    cyc, pos, lengths = _cycles(images)
    d = lcm(*lengths)
    ncyc = len(lengths)
    values = []
    for x in range(n):
        fx = images[x]
        rot = [-1] * ncyc
        for y in range(n):
            t = images[(x + y) % n] - fx
            if t < 0:
                t += n
            c = cyc[y]
            if cyc[t] != c:
                return None
            r = (pos[t] - pos[y]) % lengths[c]
            if rot[c] < 0:
                rot[c] = r
            elif rot[c] != r:
                return None
        by_length = {}
        for c in range(ncyc):
            L = lengths[c]
            prev = by_length.setdefault(L, rot[c])
            if prev != rot[c]:
                return None
        k, mod = 0, 1
        for L, r in by_length.items():
            merged = _crt(k, mod, r, L)
            if merged is None:
                return None
            k, mod = merged
        values.append(k % d)
    return d, values


def closure(generators, cap):
    """Breadth-first closure of ``generators`` under composition.

    Returns the element list in discovery order (identity first) or None as
    soon as more than ``cap`` elements have been found.
    """
    gens = [tuple(g) for g in generators]
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident}
    elements = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                c = tuple(map(g.__getitem__, h))
                if c not in seen:
                    seen.add(c)
                    elements.append(c)
                    nxt.append(c)
                    if len(elements) > cap:
                        return None
        frontier = nxt
    return elements


class _Timeout(Exception):
    pass


def search_branch(n, first, deadline=None, check_every=4096):
    """Depth-first search for skew-morphisms of Z_n with f(1) = ``first``.

    Only class representatives are returned: a candidate is discarded when
    some automorphism u gives a conjugate u f u^-1 with a smaller value at 1.
    The caller expands representatives by conjugation.

    Returns ``(solutions, nodes, complete)``; ``complete`` is False when the
    deadline (a ``time.monotonic`` value) passed, and the solutions are then
    partial.
    """
    if n < 3 or not 0 < first < n:
        raise ValueError("search_branch needs n >= 3 and 0 < first < n")
    f = [-1] * n
    finv = [-1] * n
    f[0] = finv[0] = 0
    units = [w for w in range(2, n) if gcd(w, n) == 1]
    inv = {w: pow(w, -1, n) for w in units}
    trail = []
    solutions = []
    state = {"nodes": 0}
    comp = [0] * n
    closed = []

    def assign(x, v):
        if f[x] == v:
            return True
        if f[x] != -1 or finv[v] != -1:
            return False
        f[x] = v
        finv[v] = x
        trail.append(x)
        return True

    def undo(mark):
        while len(trail) > mark:
            x = trail.pop()
            finv[f[x]] = -1
            f[x] = -1

    def commute_rule():
        # y -> f(x+y) - f(x) is a power of f, hence commutes with f:
        # f(x + f(y)) = f(x) + f(f(x+y) - f(x)).
        changed = True
        while changed:
            changed = False
            known = [x for x in range(n) if f[x] != -1]
            for x in known:
                fx = f[x]
                for y in known:
                    a = f[(x + y) % n]
                    z = (x + f[y]) % n
                    c = f[z]
                    if a != -1:
                        w = (a - fx) % n
                        fw = f[w]
                        if fw != -1:
                            if c == -1:
                                if not assign(z, (fx + fw) % n):
                                    return False
                                changed = True
                            elif (fx + fw - c) % n:
                                return False
                        elif c != -1:
                            if not assign(w, (c - fx) % n):
                                return False
                            changed = True
                    elif c != -1:
                        w = finv[(c - fx) % n]
                        if w != -1:
                            if not assign((x + y) % n, (fx + w) % n):
                                return False
                            changed = True
        return True

    def label_components():
        # closed cycles and maximal open paths of the partial permutation
        closed.clear()
        for s in range(n):
            comp[s] = -1
        for s in range(n):
            if comp[s] != -1:
                continue
            cid = len(closed)
            z = f[s]
            while z != -1 and z != s:
                z = f[z]
            if z == s:
                z = s
                while True:
                    comp[z] = cid
                    z = f[z]
                    if z == s:
                        break
                closed.append(True)
            else:
                h = s
                while finv[h] != -1:
                    h = finv[h]
                z = h
                while z != -1:
                    comp[z] = cid
                    z = f[z]
                closed.append(False)

    def cycle_rule():
        # f(x+y) - f(x) lies on the f-cycle of y.  Join components that must
        # share a cycle; a closed cycle may not be joined with anything.
        label_components()
        m = len(closed)
        parent = list(range(m))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for x in range(n):
            fx = f[x]
            if fx == -1:
                continue
            for y in range(n):
                a = f[(x + y) % n]
                if a == -1:
                    continue
                r1 = find(comp[y])
                r2 = find(comp[(a - fx) % n])
                if r1 != r2:
                    if closed[r1] or closed[r2]:
                        return False
                    parent[r1] = r2
        return True

    def symmetry_rule():
        f1 = f[1]
        for w in units:
            fw = f[w]
            if fw != -1 and (inv[w] * fw) % n < f1:
                return False
        return True

    def candidates(x):
        out = []
        known = [x2 for x2 in range(n) if f[x2] != -1]
        for v in range(n):
            if finv[v] != -1:
                continue
            ok = True
            for x2 in known:
                c = comp[(x - x2) % n]
                if closed[c] and comp[(v - f[x2]) % n] != c:
                    ok = False
                    break
            if ok:
                out.append(v)
        return out

    def rec():
        state["nodes"] += 1
        if deadline is not None and state["nodes"] % check_every == 0:
            if time.monotonic() > deadline:
                raise _Timeout
        mark = len(trail)
        if not (commute_rule() and symmetry_rule() and cycle_rule()):
            undo(mark)
            return
        x = -1
        for z in range(1, n):
            if f[z] == -1:
                x = z
                break
        if x == -1:
            if power_function(f) is not None:
                solutions.append(tuple(f))
            undo(mark)
            return
        for v in candidates(x):
            m2 = len(trail)
            assign(x, v)
            rec()
            undo(m2)
        undo(mark)

    assign(1, first)
    try:
        rec()
    except _Timeout:
        return solutions, state["nodes"], False
    return solutions, state["nodes"], True
