from math import gcd

import pytest
from hypothesis import given, strategies as st
from sympy import n_order, primitive_root

from skewmorph.errors import ConsistencyError
from skewmorph.zmod import (
    Modulus,
    Unit,
    canonical_b_unit,
    gcd_shift,
    is_prime,
    multiplicative_order,
    p_valuation,
    pow_mod,
    prime_factors,
    smallest_primitive_root,
    totient,
)


def test_modulus_basics():
    m = Modulus(3, 3)
    assert (m.p, m.e, m.n) == (3, 3, 27)
    assert m.phi == 18


@pytest.mark.parametrize("p,e", [(2, 3), (9, 2), (1, 1), (4, 1), (3, 0), (3, -1)])
def test_modulus_rejects_bad_parameters(p, e):
    with pytest.raises(ValueError):
        Modulus(p, e)


def test_modulus_width_limit():
    Modulus(3, 20)  # 3**20 < 2**32
    with pytest.raises(ValueError):
        Modulus(3, 21)


def test_unit_rejects_non_units():
    m = Modulus(3, 2)
    assert int(Unit(4, m)) == 4
    for bad in (0, 3, 6, 9, -1):
        with pytest.raises(ValueError):
            Unit(bad, m)


def test_pow_mod_examples():
    m = Modulus(3, 3)
    assert pow_mod(4, 1, m) == 4
    assert pow_mod(4, 0, m) == 1
    assert pow_mod(4, 3, m) == 10


def test_multiplicative_order_examples():
    assert multiplicative_order(1, Modulus(3, 2)) == 1
    assert multiplicative_order(4, Modulus(3, 2)) == 3
    assert multiplicative_order(4, Modulus(3, 3)) == 9


def test_multiplicative_order_rejects_non_unit():
    with pytest.raises(ValueError):
        multiplicative_order(3, Modulus(3, 2))


@pytest.mark.parametrize("p,e", [(3, 1), (3, 2), (3, 3), (3, 4), (3, 5), (5, 1), (5, 2), (5, 3), (7, 2), (11, 2), (13, 2)])
def test_multiplicative_order_matches_sympy(p, e):
    m = Modulus(p, e)
    for u in range(1, m.n):
        if gcd(u, p) == 1:
            d = multiplicative_order(u, m)
            assert d == n_order(u, m.n)
            assert (p - 1) * p ** (e - 1) % d == 0


@pytest.mark.parametrize("p,e", [(3, 1), (3, 2), (3, 4), (5, 2), (7, 3), (11, 1), (23, 2)])
def test_primitive_root_matches_sympy(p, e):
    assert smallest_primitive_root(Modulus(p, e)) == primitive_root(p**e)


def test_canonical_b_unit_examples():
    assert int(canonical_b_unit(Modulus(3, 2))) == 8
    assert int(canonical_b_unit(Modulus(3, 1))) == 2
    u = canonical_b_unit(Modulus(5, 2))
    assert int(u) == 7
    assert [pow(7, k, 25) for k in range(1, 5)] == [7, 24, 18, 1]


@pytest.mark.parametrize("p,e", [(3, 2), (3, 3), (5, 2), (5, 3), (7, 2), (13, 1)])
def test_canonical_b_unit_order_and_determinism(p, e):
    m = Modulus(p, e)
    u = canonical_b_unit(m)
    assert multiplicative_order(u, m) == p - 1
    assert canonical_b_unit(Modulus(p, e)) == u


def test_gcd_shift_examples():
    assert gcd_shift(0, Modulus(3, 3)) == 27
    assert gcd_shift(3, Modulus(3, 3)) == 9
    assert gcd_shift(1, Modulus(5, 2)) == 5


@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("e", [1, 2, 3, 4])
def test_gcd_shift_exhaustive(p, e):
    m = Modulus(p, e)
    for k in range(m.n):
        direct = gcd(pow(p + 1, k, m.n) - 1, m.n)
        assert gcd_shift(k, m) == direct == p * gcd(k, p ** (e - 1))


def test_gcd_shift_raises_on_broken_identity(monkeypatch):
    import skewmorph.zmod as zmod

    monkeypatch.setattr(zmod, "gcd", lambda a, b: 1)
    with pytest.raises(ConsistencyError):
        zmod.gcd_shift(3, Modulus(3, 3))


def test_small_number_theory_helpers():
    assert [q for q in range(30) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert prime_factors(360) == [2, 3, 5]
    assert totient(27) == 18 and totient(45) == 24
    assert p_valuation(54, 3) == 3
    with pytest.raises(ValueError):
        p_valuation(0, 3)


@given(st.integers(min_value=1, max_value=10**6))
def test_totient_against_sympy(m):
    from sympy import totient as sym_totient

    assert totient(m) == sym_totient(m)
