import pytest

from surface_cert import _backend, _kernels_py
from surface_cert.constructions import he3_mod_p_presentation, knot_by_name, twist_spin_quotient
from surface_cert.perm import cyclic_group, dihedral_group
from surface_cert.words import Presentation, Word

compiled = pytest.importorskip("surface_cert._kernels")


def _args(P: Presentation):
    return 2 * P.num_generators, [r.columns() for r in P.relators], []


PRESENTATIONS = [
    Presentation(1, (Word.gen(0, 9),)),
    he3_mod_p_presentation(3),
    twist_spin_quotient(knot_by_name("trefoil"), 3),
    twist_spin_quotient(knot_by_name("cinquefoil"), 3),
]


@pytest.mark.parametrize("P", PRESENTATIONS)
def test_enumeration_identical(P):
    assert compiled.hlt_enumerate(*_args(P), 10**5) == _kernels_py.hlt_enumerate(*_args(P), 10**5)


def test_overflow_identical():
    P = Presentation(2, (Word(((0, 1), (1, 1), (0, -1), (1, -1))),))
    assert compiled.hlt_enumerate(*_args(P), 300) is None
    assert _kernels_py.hlt_enumerate(*_args(P), 300) is None


@pytest.mark.parametrize("G", [cyclic_group(6), dihedral_group(3)])
@pytest.mark.parametrize("j", [1, 2, 3])
def test_bar_boundary_identical(G, j):
    _, mult = G.multiplication_table()
    assert compiled.bar_boundary(mult, j) == _kernels_py.bar_boundary(mult, j)


def test_backend_selected():
    assert _backend.BACKEND in ("compiled", "python")
