import pytest

from surface_cert.constructions import he3_mod_p_presentation, knot_by_name, twist_spin_quotient
from surface_cert.coset import CosetOverflow, group_order, todd_coxeter
from surface_cert.perm import PermGroup, Permutation
from surface_cert.words import Presentation, Word, parse_presentation

a, b = Word.gen(0), Word.gen(1)


@pytest.mark.parametrize("n", [1, 2, 5, 12])
def test_cyclic(n):
    assert group_order(Presentation(1, (a ** n,))) == n


def test_dihedral_and_symmetric():
    D5 = Presentation(2, (a ** 5, b ** 2, (a * b) ** 2))
    assert group_order(D5) == 10
    S4 = Presentation(2, (a ** 4, b ** 2, (a * b) ** 3))
    assert group_order(S4) == 24


def test_a5():
    A5 = Presentation(2, (a ** 2, b ** 3, (a * b) ** 5))
    assert group_order(A5) == 60


def test_zero_generators():
    assert group_order(Presentation(0)) == 1


@pytest.mark.parametrize("p", [2, 3, 5])
def test_heisenberg_mod_p(p):
    assert group_order(he3_mod_p_presentation(p)) == p ** 3


def test_subgroup_index():
    S4 = Presentation(2, (a ** 4, b ** 2, (a * b) ** 3))
    assert todd_coxeter(S4, subgroup=[a]).index == 6


def test_overflow_on_infinite_group():
    Z2 = Presentation(2, (a * b * a.inverse() * b.inverse(),))
    with pytest.raises(CosetOverflow) as exc:
        todd_coxeter(Z2, max_cosets=500)
    assert exc.value.max_cosets == 500


def test_table_is_a_permutation_representation():
    # the coset action should give a faithful regular representation here
    P = parse_presentation("gens 2 x y\nx^2 y^-3\ny^-1 x y^-1 x\n")
    T = todd_coxeter(P)
    gens = [Permutation(img) for img in T.permutation_images()]
    assert PermGroup(gens).order() == T.index == 6
    for r in P.relators:
        assert T.act(0, r) == 0


@pytest.mark.parametrize("knot,d,order", [
    ("trefoil", 2, 6), ("trefoil", 3, 24), ("cinquefoil", 2, 10), ("cinquefoil", 3, 360),
])
def test_twist_spin_orders(knot, d, order):
    assert group_order(twist_spin_quotient(knot_by_name(knot), d)) == order
