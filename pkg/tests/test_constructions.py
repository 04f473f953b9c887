import random

import pytest

from surface_cert.constructions import (
    HE3_A,
    HE3_B,
    HE3_Z,
    CircleBundleSpec,
    DataError,
    He3Element,
    KnotSpec,
    circle_bundle_pi1,
    count_elements_by_order,
    cyclic_quotient,
    he3_mod_p,
    he3_mod_p_presentation,
    heisenberg_image,
    heisenberg_surjection,
    knot_by_name,
    load_group_file,
    load_knot_file,
    load_mathieu,
    primitive_root,
    psl2,
    twist_spin_abelianization,
)
from surface_cert.perm import find_heisenberg_subgroup, is_simple, normal_closure
from surface_cert.words import Presentation, PresentationError, Word, check_hom, evaluate


def test_he3_element_law():
    c = HE3_A * HE3_B * HE3_A.inverse() * HE3_B.inverse()
    assert c == HE3_Z
    g = He3Element(2, -1, 5)
    assert g * g.inverse() == He3Element.identity()
    assert g ** 3 == g * g * g


def test_heisenberg_surjection_respects_relators():
    for genus in (1, 2, 3):
        for n in (1, -1):
            Y = circle_bundle_pi1(CircleBundleSpec(genus, n))
            images = heisenberg_surjection(genus, n)
            assert check_hom(Y, images, identity=He3Element.identity())[0]
    with pytest.raises(ValueError):
        heisenberg_surjection(1, 2)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_he3_mod_p(p):
    H = he3_mod_p(p)
    assert H.group.order() == p ** 3
    assert not H.group.is_abelian()
    assert H.z == H.a.commutator(H.b)
    assert check_hom(he3_mod_p_presentation(p), [H.a, H.b, H.z], H.group)[0]


def test_he3_2_is_dihedral():
    counts = count_elements_by_order(he3_mod_p(2).group)
    assert counts == {1: 1, 2: 5, 4: 2}


def test_normal_form_map_agrees_with_reduction():
    rng = random.Random(5)
    H = he3_mod_p(3)
    for _ in range(30):
        g = He3Element(rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(-9, 9))
        assert heisenberg_image(g, H.a, H.b) == H.reduce(g)


def test_evaluate_is_homomorphism_into_he3():
    rng = random.Random(9)
    Y = circle_bundle_pi1(CircleBundleSpec(2, 1))
    images = heisenberg_surjection(2, 1)
    for _ in range(100):
        u = Word(tuple((rng.randrange(5), rng.choice((-1, 1))) for _ in range(10)))
        v = Word(tuple((rng.randrange(5), rng.choice((-1, 1))) for _ in range(10)))
        one = He3Element.identity()
        assert evaluate(u * v, images, one) == evaluate(u, images, one) * evaluate(v, images, one)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_psl2(p):
    L = psl2(p)
    assert L.group.order() == L.expected_order
    assert L.u.order() == p
    assert normal_closure(L.group, L.u).order() == L.expected_order
    w = L.weyl_unit()
    assert pow(w, (p - 1) // 2, p) == 1
    assert pow(primitive_root(p), (p - 1) // 2, p) == p - 1


def test_psl2_7_simple():
    assert is_simple(psl2(7).group)


def test_psl2_rejects_small():
    with pytest.raises(ValueError):
        psl2(3)


def test_cyclic_quotient():
    spec = CircleBundleSpec(2, 6)
    q = cyclic_quotient(spec, 6)
    C, images = q.realize()
    assert check_hom(circle_bundle_pi1(spec), images, C)[0]
    with pytest.raises(ValueError):
        cyclic_quotient(spec, 4)


def test_mathieu_data_checks(tmp_path):
    bad = tmp_path / "M11.txt"
    bad.write_text("name M11\ndegree 11\norder 7921\n(1,2,3,4,5,6,7,8,9,10,11)\n(3,7,11,8)(4,10,5,6)\n")
    with pytest.raises(DataError):
        load_group_file(bad)
    with pytest.raises(DataError):
        load_mathieu("M11", tmp_path / "nowhere")


def test_m22_has_he3_2():
    w = find_heisenberg_subgroup(load_mathieu("M22").group, 2)
    assert w.is_valid()


def test_knots():
    trefoil = knot_by_name("trefoil")
    assert str(twist_spin_abelianization(trefoil, 2).structure) == "Z/2"
    assert str(twist_spin_abelianization(trefoil, 3).structure) == "Z/3"
    with pytest.raises(PresentationError):
        KnotSpec("bad", Presentation(1, (), {"mu": Word.gen(0, 2)}))
    with pytest.raises(ValueError):
        knot_by_name("figure-nine")


def test_knot_file(tmp_path):
    f = tmp_path / "trefoil.txt"
    f.write_text("gens 2 x y\nx^2 y^-3\nmark mu = y^-1 x\n")
    K = load_knot_file(f)
    assert K.name == "trefoil"
    assert twist_spin_abelianization(K, 3).generates_torsion("mu")
