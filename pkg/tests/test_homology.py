import pytest

from surface_cert.constructions import he3_mod_p, is_prime
from surface_cert.homology import (
    EvidenceError,
    ExternalTable,
    HomologyResult,
    Psl2Formula,
    SizeCapExceeded,
    WeylAction,
    bar_homology,
    h3_has_no_p_torsion,
    he3_annihilation_bound,
    homology_cyclic,
    p_power_image_vanishes,
    psl2_p_torsion_degrees,
    psl2_p_torsion_degrees_formula,
    psl2_weyl_action,
    torsion_image_vanishes,
    weyl_fixed_points,
)
from surface_cert.linalg import AbelianGroupStructure
from surface_cert.perm import cyclic_group, dihedral_group, quaternion_group, symmetric_group
from surface_cert.words import Presentation, Word, abelianization

Zn = lambda *f: AbelianGroupStructure(0, tuple(f))  # noqa: E731


def test_cyclic_formula():
    assert homology_cyclic(7, 3) == Zn(7)
    assert homology_cyclic(6, 1) == Zn(6)
    assert homology_cyclic(9, 2).is_trivial
    assert homology_cyclic(4, 0) == AbelianGroupStructure(1)


@pytest.mark.parametrize("n", range(2, 9))
def test_bar_matches_periodic_for_small_cyclic(n):
    for k in (1, 2, 3):
        if n > 6 and k == 3:
            continue  # covered by the slower test below
        assert bar_homology(cyclic_group(n), k).structure == homology_cyclic(n, k)


@pytest.mark.slow
@pytest.mark.parametrize("n", [7, 8])
def test_bar_matches_periodic_degree_three(n):
    assert bar_homology(cyclic_group(n), 3).structure == homology_cyclic(n, 3)


def test_degree_zero_is_z():
    assert bar_homology(symmetric_group(3), 0).structure == AbelianGroupStructure(1)


def test_h1_is_abelianization():
    a, b = Word.gen(0), Word.gen(1)
    D4 = Presentation(2, (a ** 4, b ** 2, (a * b) ** 2))
    assert bar_homology(dihedral_group(4), 1).structure == abelianization(D4).structure
    assert bar_homology(he3_mod_p(2).group, 1).structure == Zn(2, 2)
    assert bar_homology(quaternion_group(), 1).structure == Zn(2, 2)


def test_known_small_groups():
    # Schur multipliers: S3 trivial, D4 = Z/2, Q8 trivial
    assert bar_homology(symmetric_group(3), 2).structure.is_trivial
    assert bar_homology(dihedral_group(4), 2).structure == Zn(2)
    assert bar_homology(quaternion_group(), 2).structure.is_trivial
    assert bar_homology(symmetric_group(3), 3).structure == Zn(6)


def test_he3_2_annihilated_by_eight():
    r = bar_homology(he3_mod_p(2).group, 3, group_id="he3_2")
    assert r.certified and r.method == "bar"
    assert all(8 % d == 0 for d in r.structure.invariant_factors)


def test_size_cap():
    with pytest.raises(SizeCapExceeded):
        bar_homology(symmetric_group(4), 2)
    with pytest.raises(ValueError):
        bar_homology(cyclic_group(2), 4)


def test_annihilation_bound():
    assert [he3_annihilation_bound(p) for p in (2, 3, 5)] == [8, 27, 125]
    with pytest.raises(ValueError):
        he3_annihilation_bound(4)


def test_weyl_fixed_points():
    assert weyl_fixed_points(WeylAction(7, 1), 5) == Zn(7)
    assert weyl_fixed_points(WeylAction(7, 2), 2).is_trivial
    assert weyl_fixed_points(WeylAction(7, 2), 3) == Zn(7)
    # inverse unit gives the same answer
    assert weyl_fixed_points(WeylAction(7, 4), 3) == Zn(7)
    with pytest.raises(ValueError):
        WeylAction(7, 14)


def test_psl2_degree_examples():
    assert psl2_p_torsion_degrees(7, 12) == {6, 12}
    assert psl2_p_torsion_degrees(5, 4) == {4}
    assert psl2_p_torsion_degrees(11, 8) == set()
    assert psl2_p_torsion_degrees(11, 10) == {10}


@pytest.mark.parametrize("p", [p for p in range(5, 50) if is_prime(p)])
def test_psl2_formula_equals_fixed_points(p):
    action = psl2_weyl_action(p)
    assert action.subgroup_order() == (p - 1) // 2
    fixed = {2 * l for l in range(1, 21) if not weyl_fixed_points(action, l).is_trivial}
    assert fixed == psl2_p_torsion_degrees_formula(p, 40)


def test_no_p_torsion_from_formula():
    assert h3_has_no_p_torsion("PSL2(7)", 7, Psl2Formula(7)).value
    assert not h3_has_no_p_torsion("PSL2(5)", 5, Psl2Formula(5)).value
    with pytest.raises(EvidenceError):
        h3_has_no_p_torsion("PSL2(7)", 5, Psl2Formula(7))
    with pytest.raises(EvidenceError):
        h3_has_no_p_torsion("X", 2, None)


def test_no_p_torsion_from_table():
    table = ExternalTable.load()
    assert h3_has_no_p_torsion("M22", 2, table.homology("M22", 3)).value
    j3 = table.homology("J3", 3)
    assert h3_has_no_p_torsion("J3", 2, j3).value
    assert not h3_has_no_p_torsion("J3", 3, j3).value
    assert not h3_has_no_p_torsion("J3", 5, j3).value
    with pytest.raises(EvidenceError):
        h3_has_no_p_torsion("Monster", 5, table.homology("Monster", 3))


def test_table_results_are_uncertified():
    table = ExternalTable.load()
    r = table.homology("M22", 2)
    assert r.structure == Zn(12)
    assert r.method == "external-table" and not r.certified and r.citation
    with pytest.raises(ValueError):
        HomologyResult("X", 3, Zn(2), "external-table", True, "someone")
    assert "Z/24 + Z/4" in table.homology("Monster", 3).note


def test_vanishing_arithmetic():
    # synthetic abelian-group data, no group theory involved
    assert torsion_image_vanishes(8, Zn(3, 15))
    assert not torsion_image_vanishes(8, Zn(6))
    assert torsion_image_vanishes(27, AbelianGroupStructure(2))
    assert p_power_image_vanishes(125, 5, target_has_p_torsion=False)
    assert not p_power_image_vanishes(125, 5, target_has_p_torsion=True)
    with pytest.raises(ValueError):
        p_power_image_vanishes(12, 2, False)
