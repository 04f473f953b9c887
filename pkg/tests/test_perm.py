import random

import pytest
from sympy.combinatorics import Permutation as SymPerm
from sympy.combinatorics import PermutationGroup as SymGroup

from surface_cert.constructions import count_elements_by_order, he3_mod_p, load_mathieu
from surface_cert.perm import (
    Excluded,
    HeisenbergWitness,
    Permutation,
    PermGroup,
    alternating_group,
    cyclic_group,
    dihedral_group,
    find_heisenberg_subgroup,
    is_simple,
    naive_closure,
    normal_closure,
    quaternion_group,
    symmetric_group,
)


def random_perm(rng, n):
    pts = list(range(n))
    rng.shuffle(pts)
    return Permutation(pts)


def test_composition_is_left_to_right():
    p = Permutation([1, 2, 0])
    q = Permutation([1, 0, 2])
    assert (p * q)(0) == q(p(0))
    assert (p * p.inverse()).is_identity()
    assert p ** 3 == Permutation.identity(3)
    assert p ** -1 == p.inverse()


def test_cycles_roundtrip():
    p = Permutation.parse("(1,3,2)(4,5)", 6)
    assert p.cycle_string() == "(1,3,2)(4,5)"
    assert Permutation.parse(p.cycle_string(), 6) == p
    assert Permutation.identity(4).cycle_string() == "()"
    assert p.order() == 6
    assert p.sign() == -1


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_symmetric_and_alternating_orders(n):
    from math import factorial
    assert symmetric_group(n).order() == factorial(n)
    assert alternating_group(n).order() == max(1, factorial(n) // 2)


def test_standard_small_groups():
    assert cyclic_group(7).order() == 7
    assert dihedral_group(5).order() == 10
    Q = quaternion_group()
    assert Q.order() == 8
    assert count_elements_by_order(Q) == {1: 1, 2: 1, 4: 6}


def test_random_subgroups_of_s7_match_naive_closure():
    rng = random.Random(11)
    for _ in range(50):
        gens = [random_perm(rng, 7) for _ in range(rng.randint(1, 3))]
        # bias towards proper subgroups with sparse permutations
        if rng.random() < 0.5:
            gens = [g ** rng.choice((2, 3, 4, 6)) for g in gens]
        G = PermGroup(gens, 7)
        closure = naive_closure(gens, 7)
        assert G.order() == len(closure)
        assert {g.images for g in G.elements()} == closure


def test_orders_match_sympy():
    rng = random.Random(3)
    for n in (5, 8, 9, 10):
        gens = [random_perm(rng, n) for _ in range(2)]
        ours = PermGroup(gens, n).order()
        theirs = SymGroup([SymPerm(list(g.images)) for g in gens]).order()
        assert ours == theirs


def test_membership():
    G = alternating_group(5)
    assert Permutation([1, 2, 0, 3, 4]) in G
    assert Permutation([1, 0, 2, 3, 4]) not in G
    with pytest.raises(ValueError):
        G.contains(Permutation([1, 0, 2]))


def test_random_elements_stay_in_group():
    G = dihedral_group(6)
    rng = random.Random(0)
    for _ in range(50):
        assert G.contains(G.random_element(rng))


def test_normal_closure():
    S4 = symmetric_group(4)
    ab = Permutation([1, 0, 3, 2])
    assert normal_closure(S4, ab).order() == 4
    assert normal_closure(S4, Permutation([1, 0, 2, 3])).order() == 24
    assert normal_closure(S4, Permutation([1, 2, 0, 3])).order() == 12


def test_simplicity():
    assert is_simple(alternating_group(5))
    assert not is_simple(alternating_group(4))
    assert not is_simple(cyclic_group(6))
    assert is_simple(cyclic_group(5))
    assert not is_simple(symmetric_group(5))


def test_perfect_and_derived():
    assert alternating_group(5).is_perfect()
    assert symmetric_group(4).derived_subgroup().order() == 12
    assert not dihedral_group(4).is_perfect()


def test_heisenberg_witness_invariants():
    H = he3_mod_p(3)
    w = HeisenbergWitness(H.a, H.b, 3)
    assert w.is_valid()
    bad = HeisenbergWitness(H.a, H.a, 3)
    assert "[a,b] does not have order p" in bad.failures()


def test_heisenberg_search_in_s4():
    w = find_heisenberg_subgroup(symmetric_group(4), 2)
    assert isinstance(w, HeisenbergWitness) and w.is_valid()
    assert isinstance(find_heisenberg_subgroup(symmetric_group(4), 3), Excluded)


@pytest.mark.parametrize("name,order", [
    ("M11", 7920), ("M12", 95040), ("M22", 443520), ("M23", 10200960),
])
def test_mathieu_orders(name, order):
    L = load_mathieu(name)
    assert L.group.order() == order == L.declared_order


@pytest.mark.parametrize("name", ["M11", "M22"])
def test_mathieu_orders_match_sympy(name):
    G = load_mathieu(name).group
    S = SymGroup([SymPerm(list(g.images)) for g in G.generators])
    assert S.order() == G.order()
