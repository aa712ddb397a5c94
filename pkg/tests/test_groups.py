import pytest

from skewmorph.errors import ClosureCapError
from skewmorph.groups import (
    bounded_order,
    center,
    closure,
    closure_cap,
    commutator,
    commutator_subgroup,
    cyclic_subgroups,
    exponent,
    is_normal,
    is_split_metacyclic,
    quotient_exponent,
)
from skewmorph.perm import Permutation, compose, inverse, mult_map, translation
from skewmorph.zmod import Modulus


def s3():
    return closure([Permutation([1, 0, 2]), Permutation([1, 2, 0])])


def d4():
    return closure([Permutation([1, 2, 3, 0]), Permutation([0, 3, 2, 1])])


def q8():
    # left-regular representation on the 8 elements (sign, unit) of Q8
    table = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, u) for s in (1, -1) for u in "1ijk"]
    index = {x: n for n, x in enumerate(elems)}

    def left(g):
        out = []
        for h in elems:
            sign, unit = table[(g[1], h[1])]
            out.append(index[(g[0] * h[0] * sign, unit)])
        return Permutation(out)

    return closure([left((1, "i")), left((1, "j"))])


def test_small_group_orders():
    assert s3().order == 6
    assert d4().order == 8
    assert q8().order == 8
    assert exponent(d4()) == 4 and exponent(q8()) == 4


def test_closure_is_sorted_and_contains_generators():
    G = d4()
    assert list(G.elements) == sorted(G.elements)
    assert all(g in G for g in G.generators)
    assert G.elements[0].is_identity()


def test_closure_cap(monkeypatch):
    with pytest.raises(ClosureCapError):
        closure([Permutation([1, 0, 2]), Permutation([1, 2, 0])], cap=5)
    monkeypatch.setenv("SKEWMORPH_CLOSURE_CAP", "4")
    assert closure_cap() == 4
    with pytest.raises(ClosureCapError):
        s3()
    assert bounded_order([Permutation([1, 2, 0])], 2) is None
    assert bounded_order([Permutation([1, 2, 0])], 3) == 3


def test_commutator_subgroups_and_centers():
    assert commutator_subgroup(s3()).order == 3
    assert commutator_subgroup(d4()).order == 2
    assert commutator_subgroup(q8()).order == 2
    assert center(d4()).order == 2 and center(q8()).order == 2 and center(s3()).order == 1


def test_commutator_convention():
    x, y = Permutation([1, 0, 2]), Permutation([1, 2, 0])
    c = commutator(x, y)
    assert c == compose(compose(x, y), compose(inverse(x), inverse(y)))


def test_quotient_exponent():
    G = s3()
    assert quotient_exponent(G, commutator_subgroup(G)) == 2
    H = d4()
    assert quotient_exponent(H, commutator_subgroup(H)) == 2
    not_normal = closure([Permutation([1, 0, 2])])
    assert not is_normal(not_normal, G)
    with pytest.raises(ValueError):
        quotient_exponent(G, not_normal)


def test_cyclic_subgroups_of_q8():
    sizes = sorted(len(members) for _, members in cyclic_subgroups(q8()))
    assert sizes == [1, 2, 4, 4, 4]


def test_split_metacyclic_detection():
    assert is_split_metacyclic(s3())
    assert is_split_metacyclic(d4())
    assert not is_split_metacyclic(q8())
    m = Modulus(3, 2)
    G = closure([translation(m), mult_map(4, m)])
    assert G.order == 27 and is_split_metacyclic(G)

