import random

import pytest

from surface_cert.constructions import CircleBundleSpec, circle_bundle_pi1, psl2
from surface_cert.perm import Permutation, symmetric_group
from surface_cert.words import (
    FpHom,
    HomomorphismError,
    Presentation,
    PresentationError,
    Word,
    abelianization,
    check_hom,
    commutator,
    evaluate,
    format_presentation,
    parse_presentation,
    parse_word,
)

x, y = Word.gen(0), Word.gen(1)


def random_word(rng, ngens, length=12):
    return Word(tuple((rng.randrange(ngens), rng.choice((-2, -1, 1, 2))) for _ in range(length)))


def test_free_reduction():
    assert not (x * x.inverse())
    assert (x * y * y.inverse() * x) == x ** 2
    assert len(x ** 3 * y ** -2) == 5
    assert (x ** -3).inverse() == x ** 3
    assert commutator(x, y).letters == ((0, 1), (1, 1), (0, -1), (1, -1))


def test_parse_and_format_roundtrip():
    text = "gens 3 a1 b1 z\na1 b1 a1^-1 b1^-1 z^-5\na1 z a1^-1 z^-1\nb1 z b1^-1 z^-1\nmark mu = z\n"
    P = parse_presentation(text)
    assert format_presentation(P) == text
    assert P.marked["mu"] == Word.gen(2)


def test_parse_infers_names():
    P = parse_presentation("# trefoil\ngens 2\nx^2 y^-3\nmark mu = y^-1 x\n")
    assert P.generator_names == ("x", "y")
    assert P.marked["mu"] == parse_word("y^-1 x", ("x", "y"))


def test_parse_errors():
    with pytest.raises(PresentationError):
        parse_presentation("x y\n")
    with pytest.raises(PresentationError):
        parse_presentation("gens 1 a\nb\n")
    with pytest.raises(PresentationError):
        parse_presentation("gens 1\na b\n")
    with pytest.raises(PresentationError):
        parse_word("a^x", ("a",))


def test_empty_word_formats_as_one():
    P = Presentation(1, (Word(),), {}, ("a",))
    assert "1" in format_presentation(P).splitlines()


def test_check_hom_detects_bad_images():
    P = Presentation(1, (x ** 3,))
    S3 = symmetric_group(3)
    c = Permutation([1, 2, 0])
    t = Permutation([1, 0, 2])
    assert check_hom(P, [c], S3) == (True, [])
    assert check_hom(P, [t], S3) == (False, [0])
    with pytest.raises(HomomorphismError):
        FpHom(P, [t], S3)


def test_abelianization_circle_bundle():
    P = circle_bundle_pi1(CircleBundleSpec(1, 5))
    ab = abelianization(P)
    assert str(ab.structure) == "Z^2 + Z/5"
    assert ab.generates_torsion("mu")


def test_abelianization_genus_two():
    ab = abelianization(circle_bundle_pi1(CircleBundleSpec(2, -3)))
    assert str(ab.structure) == "Z^4 + Z/3"
    assert ab.generates_torsion("mu")


def test_evaluate_is_a_homomorphism():
    # the homomorphism property on random word pairs: phi(uv) = phi(u) phi(v)
    rng = random.Random(7)
    L = psl2(7)
    images = [L.u, L.t, L.s]
    for _ in range(100):
        u, v = random_word(rng, 3), random_word(rng, 3)
        assert evaluate(u * v, images) == evaluate(u, images) * evaluate(v, images)
        assert evaluate(u.inverse(), images) == evaluate(u, images).inverse()
