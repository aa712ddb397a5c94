"""Randomised checks over larger moduli than the exhaustive suites cover."""
from math import gcd

from hypothesis import given, settings, strategies as st

from skewmorph.perm import Permutation, compose, inverse, mult_map, order, power
from skewmorph.skew import (
    classify,
    compute_power_function,
    expected_order,
    iterate_admissible,
    s_ijkl,
    verify_criterion,
    verify_definition,
)
from skewmorph.zmod import Modulus

MODULI = [Modulus(3, 3), Modulus(3, 4), Modulus(5, 2), Modulus(5, 3), Modulus(7, 2)]
TUPLES = {m: list(iterate_admissible(m)) for m in MODULI}


def admissible():
    return st.sampled_from(MODULI).flatmap(lambda m: st.tuples(st.just(m), st.sampled_from(TUPLES[m])))


@settings(max_examples=150, deadline=None)
@given(admissible())
def test_constructed_maps_pass_both_verifiers(case):
    m, t = case
    s = s_ijkl(t, m)
    assert verify_definition(s.perm) and verify_criterion(s.perm)
    assert order(s.perm) == expected_order(t.i, t.k, m)


@settings(max_examples=60, deadline=None)
@given(admissible())
def test_classify_round_trip(case):
    m, t = case
    assert classify(s_ijkl(t, m), m).as_tuple() == t.as_tuple()


@settings(max_examples=100, deadline=None)
@given(admissible(), st.integers(min_value=1, max_value=10**6))
def test_unit_conjugates_stay_skew(case, raw):
    m, t = case
    u = raw % m.n
    if gcd(u, m.n) != 1:
        u = 1
    w = mult_map(u, m)
    s = s_ijkl(t, m).perm
    conj = compose(w, compose(s, inverse(w)))
    assert verify_definition(conj)
    classify(conj, m)


@settings(max_examples=100, deadline=None)
@given(admissible(), st.integers(min_value=0, max_value=50))
def test_power_function_identity_randomised(case, x):
    m, t = case
    s = s_ijkl(t, m).perm
    pi = compute_power_function(s)
    fk = power(s, pi(x))
    assert all(s((x + y) % m.n) == (s(x % m.n) + fk(y)) % m.n for y in range(m.n))


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=2, max_value=30).flatmap(lambda n: st.permutations(list(range(1, n)))))
def test_verifiers_agree_on_random_bijections(rest):
    f = Permutation([0, *rest])
    assert verify_definition(f) == verify_criterion(f)
