"""Invariant checks shared by the property tests and the acceptance run.

Each function returns a list of violations (empty when everything holds).
"""
from math import gcd

from skewmorph.classify import enumerate_constructive, skew_product_group
from skewmorph.groups import commutator_subgroup, is_split_metacyclic, quotient_exponent
from skewmorph.perm import Permutation, compose, mult_map, orbit_partition, order, power, translation
from skewmorph.skew import compute_power_function, s_ij, verify_definition
from skewmorph.zmod import Modulus, multiplicative_order

# All skew-morphisms of Z_9, found by testing the definition on every
# bijection fixing 0 (independent of the package).
SKEW_Z9 = {
    (0, 1, 2, 3, 4, 5, 6, 7, 8),
    (0, 2, 4, 6, 8, 1, 3, 5, 7),
    (0, 2, 7, 6, 8, 4, 3, 5, 1),
    (0, 4, 8, 3, 7, 2, 6, 1, 5),
    (0, 5, 1, 6, 2, 7, 3, 8, 4),
    (0, 5, 7, 6, 2, 4, 3, 8, 1),
    (0, 7, 5, 3, 1, 8, 6, 4, 2),
    (0, 8, 1, 6, 5, 7, 3, 2, 4),
    (0, 8, 4, 6, 5, 1, 3, 2, 7),
    (0, 8, 7, 6, 5, 4, 3, 2, 1),
}


def _p_exponent(d, p):
    i = 0
    while d % p == 0:
        d //= p
        i += 1
    return i if d == 1 else None


def per_map_invariants(m: Modulus):
    """Order, power-function and orbit properties of every constructive map."""
    p, e, n = m.p, m.e, m.n
    bad = []
    t = translation(m)
    phi = n - n // p
    # orbit partitions of the automorphisms, grouped by order
    aut_orbits = {}
    for u in range(1, n):
        if u % p:
            aut_orbits.setdefault(multiplicative_order(u, m), set()).add(orbit_partition([mult_map(u, m)]))
    for rec in enumerate_constructive(m):
        s = Permutation(rec.images)
        pi = compute_power_function(s)
        d = pi.modulus_of_values
        tag = rec.tuple.as_tuple()
        if (n * phi) % d:
            bad.append((tag, "order does not divide n*phi(n)"))
        for x in range(n):
            if compose(s, power(t, x)) != compose(power(t, s(x)), power(s, pi(x))):
                bad.append((tag, f"s t^x = t^s(x) s^pi(x) fails at x={x}"))
                break
        i = _p_exponent(d, p)
        if i is not None and i >= 1:
            if any(v % p != 1 for v in pi.values):
                bad.append((tag, "pi not 1 mod p"))
            if not verify_definition(power(s, p)):
                bad.append((tag, "s^p is not a skew-morphism"))
            if orbit_partition([s]) not in aut_orbits.get(d, set()):
                bad.append((tag, "orbits match no automorphism of the same order"))
        if i is not None and gcd(s(1) - 1, n) != p ** (e - i):
            bad.append((tag, "gcd(s(1)-1, p^e) != p^(e-i)"))
        if rec.tuple.k == 0:
            mod = p * gcd(rec.tuple.i, p ** (e - 1))
            if any((s(x) - x) % mod for x in range(n)):
                bad.append((tag, f"s_ij(x) != x mod {mod}"))
        if (i is not None) != (rec.tuple.k == 0):
            bad.append((tag, "p-power order does not match k = 0"))
        if gcd(d, n) == 1 and s != mult_map(s(1), m):
            bad.append((tag, "order prime to n but not an automorphism"))
    return bad


def s_ij_equality(m: Modulus):
    """s_ij(i,j) = s_ij(i',j') exactly when i = i' and j = j' mod p^(e-2)/gcd(i, p^(e-2))."""
    p, e = m.p, m.e
    top = p ** (e - 1)
    maps = {(i, j): s_ij(i, j, m).images for i in range(top) for j in range(top)}
    bad = []
    for (i, j), f in maps.items():
        mod = p ** (e - 2) // gcd(i, p ** (e - 2))
        for (i2, j2), g in maps.items():
            predicted = i == i2 and (j - j2) % mod == 0
            if (f == g) != predicted:
                bad.append(((i, j), (i2, j2)))
    return bad


def product_group_invariants(m: Modulus):
    """Split criterion and, for split groups, |G'| and exp(G/G')."""
    p, e = m.p, m.e
    bad = []
    rows = []
    for i in range(1, e):
        for j in range(p ** (i - 1)):
            G = skew_product_group(i, j, m)
            D = commutator_subgroup(G)
            split = is_split_metacyclic(G)
            ex = quotient_exponent(G, D)
            rows.append((i, j, split, D.order, ex))
            if split != (j % p ** (e - 1 - i) == 0):
                bad.append((i, j, "split criterion"))
            if split and (D.order != p**i or ex != p ** max(i, e - i)):
                bad.append((i, j, "commutator order or abelianization exponent"))
    return bad, rows


def order_law(m: Modulus):
    """|x^i y^j| = max(|x^i|, |y^j|) in <x, y> = <t, a^(p^(e-1-k))>, 1 <= k <= e-1."""
    p, e, n = m.p, m.e, m.n
    t = translation(m)
    bad = []
    for k in range(1, e):
        y = mult_map(pow(p + 1, p ** (e - 1 - k), n), m)
        if order(y) != p**k:
            bad.append((k, "order of y"))
        # realised presentation: y x y^-1 = x^r with r = 1 mod p^(e-k) exactly
        r = pow(p + 1, p ** (e - 1 - k), n)
        if compose(compose(y, t), power(y, -1)) != power(t, r) or gcd(r - 1, n) != p ** (e - k):
            bad.append((k, "presentation"))
        for i in range(n):
            xi = power(t, i)
            for j in range(p**k):
                yj = power(y, j)
                if order(compose(xi, yj)) != max(order(xi), order(yj)):
                    bad.append((k, i, j))
    return bad
