"""The groups, presentations and homomorphisms the certificates are built from.

Conventions fixed here:

* The circle bundle of Euler number ``n`` over a genus ``g`` surface has
  ``pi_1 = < a1, b1, ..., ag, bg, z | [a1,b1]...[ag,bg] z^-n, [aj,z], [bj,z] >``
  with the meridian marked as ``mu = z`` (or ``z^-1`` on request).  ``n`` and
  ``-n`` are handled symmetrically; reversing orientation swaps them.
* Heisenberg elements ``(x, y, t)`` multiply as
  ``(x1+x2, y1+y2, t1+t2+x1*y2)``, so ``a = (1,0,0)``, ``b = (0,1,0)`` satisfy
  ``[a, b] = (0, 0, 1)``.
* Torus knot groups are ``< x, y | x^p y^-q >`` with meridian
  ``mu = y^s x^r`` where ``r = q^-1 mod p`` and ``s = (1 - r q) / p``; for the
  trefoil this is ``y^-1 x``.
"""

from __future__ import annotations

import functools
import hashlib
import os
from dataclasses import dataclass
from math import gcd
from pathlib import Path

from surface_cert.perm import PermGroup, Permutation, cyclic_group, load_generator_file
from surface_cert.words import (
    Abelianization,
    Presentation,
    PresentationError,
    Word,
    abelianization,
    commutator,
    parse_presentation,
)

PACKAGE_DATA = Path(__file__).with_name("data")
MATHIEU_NAMES = ("M11", "M12", "M22", "M23")


class DataError(RuntimeError):
    """A shipped or user-supplied data file is missing or inconsistent."""


def data_dir(override: str | Path | None = None) -> Path:
    if override is not None:
        return Path(override)
    env = os.environ.get("SURFACE_CERT_DATA")
    return Path(env) if env else PACKAGE_DATA


def file_sha256(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p ** 0.5) + 1))


# --- circle bundles -------------------------------------------------------------

@dataclass(frozen=True)
class CircleBundleSpec:
    genus: int
    euler_number: int

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        if self.euler_number == 0:
            raise ValueError("Euler number must be non-zero")


def circle_bundle_pi1(spec: CircleBundleSpec, mu_sign: int = 1) -> Presentation:
    """Fundamental group of the boundary circle bundle, with ``mu`` marked."""
    if mu_sign not in (1, -1):
        raise ValueError("mu_sign must be +1 or -1")
    g, n = spec.genus, spec.euler_number
    names = [s for i in range(1, g + 1) for s in (f"a{i}", f"b{i}")] + ["z"]
    z = Word.gen(2 * g)
    surface = Word()
    for i in range(g):
        surface = surface * commutator(Word.gen(2 * i), Word.gen(2 * i + 1))
    relators = [surface * z ** (-n)]
    for i in range(g):
        relators.append(commutator(Word.gen(2 * i), z))
        relators.append(commutator(Word.gen(2 * i + 1), z))
    return Presentation(2 * g + 1, tuple(relators), {"mu": z ** mu_sign}, tuple(names))


# --- Heisenberg groups ------------------------------------------------------------

@dataclass(frozen=True)
class He3Element:
    """Upper uni-triangular matrix with superdiagonal ``(x, y)`` and corner ``t``.

    ``modulus=None`` is the integer group; otherwise coordinates live mod p.
    """

    x: int
    y: int
    t: int
    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None:
            m = self.modulus
            object.__setattr__(self, "x", self.x % m)
            object.__setattr__(self, "y", self.y % m)
            object.__setattr__(self, "t", self.t % m)

    @classmethod
    def identity(cls, modulus: int | None = None) -> "He3Element":
        return cls(0, 0, 0, modulus)

    def __mul__(self, o: "He3Element") -> "He3Element":
        if self.modulus != o.modulus:
            raise ValueError("cannot multiply elements with different moduli")
        return He3Element(self.x + o.x, self.y + o.y, self.t + o.t + self.x * o.y, self.modulus)

    def inverse(self) -> "He3Element":
        return He3Element(-self.x, -self.y, self.x * self.y - self.t, self.modulus)

    def __pow__(self, k: int) -> "He3Element":
        base = self if k >= 0 else self.inverse()
        result = He3Element.identity(self.modulus)
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def reduce(self, p: int) -> "He3Element":
        return He3Element(self.x, self.y, self.t, p)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.t)


HE3_A = He3Element(1, 0, 0)
HE3_B = He3Element(0, 1, 0)
HE3_Z = He3Element(0, 0, 1)


def he3_integer_presentation() -> Presentation:
    a, b, z = Word.gen(0), Word.gen(1), Word.gen(2)
    rels = (commutator(a, b) * z.inverse(), commutator(a, z), commutator(b, z))
    return Presentation(3, rels, {"z": z}, ("a", "b", "z"))


def he3_mod_p_presentation(p: int) -> Presentation:
    """``He3(Z)`` with ``a^p = b^p = z^p = 1`` added."""
    P = he3_integer_presentation()
    return P.with_relators([Word.gen(0, p), Word.gen(1, p), Word.gen(2, p)])


def heisenberg_surjection(genus: int, euler_number: int = 1) -> list[He3Element]:
    """Images of ``a1, b1, ..., ag, bg, z`` in ``He3(Z)``.

    ``a1 -> a``, ``b1 -> b``, the other surface generators go to 1 and
    ``z -> (0, 0, n)`` so that ``[a, b] z^-n`` maps to the identity.
    """
    if genus < 1:
        raise ValueError("the Heisenberg surjection needs genus >= 1")
    if euler_number not in (1, -1):
        raise ValueError("the Heisenberg surjection needs Euler number +-1")
    one = He3Element.identity()
    images = [HE3_A, HE3_B] + [one] * (2 * (genus - 1))
    images.append(He3Element(0, 0, euler_number))
    return images


class He3ModP:
    """``He3(p)`` acting on itself by right multiplication (degree ``p^3``)."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.elements = [He3Element(x, y, t, p) for x in range(p) for y in range(p) for t in range(p)]
        self._index = {e.as_tuple(): k for k, e in enumerate(self.elements)}
        self.a = self.reduce(HE3_A)
        self.b = self.reduce(HE3_B)
        self.z = self.reduce(HE3_Z)
        self.group = PermGroup([self.a, self.b, self.z], p ** 3)
        if self.group.order() != p ** 3:
            raise AssertionError("regular representation of He3(p) has the wrong order")

    def reduce(self, g: He3Element) -> Permutation:
        """Reduction mod p followed by the regular representation."""
        g = g.reduce(self.p)
        return Permutation(self._index[(h * g).as_tuple()] for h in self.elements)

    def to_group(self, perm: Permutation) -> He3Element:
        """Recover the group element from its regular permutation (image of the identity)."""
        return self.elements[perm(0)]


def he3_mod_p(p: int) -> He3ModP:
    return He3ModP(p)


def heisenberg_image(g: He3Element, a: Permutation, b: Permutation) -> Permutation:
    """Image of ``g`` under ``He3 -> <a, b>``, ``a -> a``, ``b -> b``.

    Uses the normal form ``(x, y, t) = a^x b^y z^(t - x y)`` with ``z = [a, b]``.
    """
    z = a.commutator(b)
    return a ** g.x * b ** g.y * z ** (g.t - g.x * g.y)


def count_elements_by_order(G: PermGroup) -> dict[int, int]:
    counts: dict[int, int] = {}
    for g in G.elements():
        k = g.order()
        counts[k] = counts.get(k, 0) + 1
    return counts


# --- PSL(2, p) --------------------------------------------------------------------

def primitive_root(p: int) -> int:
    factors = {q for q in range(2, p) if (p - 1) % q == 0 and is_prime(q)}
    for r in range(2, p):
        if all(pow(r, (p - 1) // q, p) != 1 for q in factors):
            return r
    raise ValueError(f"no primitive root mod {p}")


class PSL2:
    """``PSL(2, p)`` acting on the projective line ``{0, ..., p-1, inf}``; ``inf`` is point ``p``.

    Generators: the unipotent ``u: x -> x+1``, the torus element
    ``t: x -> w x`` with ``w`` a primitive root squared, and ``s: x -> -1/x``.
    """

    def __init__(self, p: int):
        if not is_prime(p) or p < 5:
            raise ValueError("PSL(2, p) is built for primes p >= 5")
        self.p = p
        inf = p
        self.w = pow(primitive_root(p), 2, p)
        self.u = Permutation([(x + 1) % p for x in range(p)] + [inf])
        self.t = Permutation([(self.w * x) % p for x in range(p)] + [inf])
        self.s = Permutation([inf] + [(-pow(x, -1, p)) % p for x in range(1, p)] + [0])
        self.group = PermGroup([self.u, self.t, self.s], p + 1)

    @property
    def expected_order(self) -> int:
        p = self.p
        return p * (p * p - 1) // 2

    def weyl_unit(self) -> int:
        """The ``k`` with ``t^-1 u t = u^k``: how the torus acts on ``<u>``."""
        c = self.t.inverse() * self.u * self.t
        for k in range(1, self.p):
            if self.u ** k == c:
                return k
        raise AssertionError("torus element does not normalize <u>")


def psl2(p: int) -> PSL2:
    return PSL2(p)


# --- Mathieu groups -------------------------------------------------------------

@dataclass(frozen=True)
class LoadedGroup:
    name: str
    group: PermGroup
    declared_order: int
    path: str
    sha256: str


@functools.lru_cache(maxsize=None)
def _load_verified(path: str) -> LoadedGroup:
    p = Path(path)
    if not p.is_file():
        raise DataError(f"generator file not found: {p}")
    header, G = load_generator_file(p)
    if "order" not in header:
        raise DataError(f"{p}: missing declared 'order'")
    declared = int(header["order"])
    if int(header["degree"]) != G.degree:
        raise DataError(f"{p}: degree mismatch")
    got = G.order()
    if got != declared:
        raise DataError(f"{p}: declared order {declared} but generators give {got}")
    return LoadedGroup(header.get("name", p.stem), G, declared, str(p), file_sha256(p))


def load_group_file(path: str | Path) -> LoadedGroup:
    return _load_verified(str(Path(path).resolve()))


def load_mathieu(name: str, data: str | Path | None = None) -> LoadedGroup:
    if name not in MATHIEU_NAMES:
        raise ValueError(f"unknown Mathieu group {name!r}; expected one of {MATHIEU_NAMES}")
    return load_group_file(data_dir(data) / f"{name}.txt")


# --- cyclic quotients -----------------------------------------------------------

@dataclass(frozen=True)
class CyclicQuotient:
    """``pi_1(Y) -> Z/n`` recorded as one exponent per generator (``mu`` has exponent +-1)."""

    n: int
    exponents: tuple[int, ...]

    def images_in(self, element: Permutation) -> list[Permutation]:
        """Compose with ``Z/n -> G``, ``1 -> element`` (element order must divide n)."""
        return [element ** e for e in self.exponents]

    def realize(self) -> tuple[PermGroup, list[Permutation]]:
        C = cyclic_group(self.n)
        gen = C.generators[0] if C.generators else C.identity
        return C, self.images_in(gen)


def cyclic_quotient(spec: CircleBundleSpec, n: int) -> CyclicQuotient:
    if abs(spec.euler_number) != n or n < 1:
        raise ValueError(f"target Z/{n} does not match Euler number {spec.euler_number}")
    return CyclicQuotient(n, tuple([0] * (2 * spec.genus) + [1]))


# --- knots ------------------------------------------------------------------------

@dataclass(frozen=True)
class KnotSpec:
    name: str
    presentation: Presentation

    def __post_init__(self):
        if "mu" not in self.presentation.marked:
            raise PresentationError(f"knot {self.name!r} has no marked meridian 'mu'")
        ab = abelianization(self.presentation)
        if not ab.generates_free("mu"):
            raise PresentationError(
                f"knot {self.name!r}: abelianization must be Z with mu a generator, got {ab.structure}"
            )

    @property
    def meridian(self) -> Word:
        return self.presentation.marked["mu"]


def torus_knot_group(p: int, q: int) -> KnotSpec:
    if p < 1 or q < 1 or gcd(p, q) != 1:
        raise ValueError(f"torus knot needs coprime positive (p, q), got ({p}, {q})")
    r = pow(q, -1, p) if p > 1 else 0
    s = (1 - r * q) // p
    x, y = Word.gen(0), Word.gen(1)
    P = Presentation(2, (x ** p * y ** (-q),), {"mu": y ** s * x ** r}, ("x", "y"))
    return KnotSpec(f"T({p},{q})", P)


def unknot() -> KnotSpec:
    return KnotSpec("unknot", Presentation(1, (), {"mu": Word.gen(0)}, ("x",)))


KNOTS = {
    "unknot": unknot,
    "trefoil": lambda: torus_knot_group(2, 3),
    "cinquefoil": lambda: torus_knot_group(2, 5),
}


def knot_by_name(name: str) -> KnotSpec:
    if name not in KNOTS:
        raise ValueError(f"unknown knot {name!r}; built in: {sorted(KNOTS)}")
    return KNOTS[name]()


def load_knot_file(path: str | Path) -> KnotSpec:
    P = parse_presentation(Path(path).read_text())
    return KnotSpec(Path(path).stem, P)


def twist_spin_quotient(K: KnotSpec, d: int) -> Presentation:
    """The knot group with ``mu^d`` killed."""
    if d < 2:
        raise ValueError("d must be at least 2")
    return K.presentation.with_relators([K.meridian ** d])


def twist_spin_abelianization(K: KnotSpec, d: int) -> Abelianization:
    return abelianization(twist_spin_quotient(K, d))
