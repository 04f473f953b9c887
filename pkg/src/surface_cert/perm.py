"""Permutations and permutation groups.

Permutations act on the right: ``(p * q)(i) == q(p(i))``, so a word is
evaluated left to right.  Points are 0-based internally; generator files use
1-based disjoint-cycle notation.

:class:`PermGroup` builds a base and strong generating set lazily with a
deterministic Schreier-Sims (base points are always the first point moved).
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from math import gcd
from pathlib import Path
from typing import Iterable, Iterator, Sequence

DEFAULT_SEED = 0xC0FFEE
SIMPLICITY_BOUND = 10**7


class Permutation:
    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        self.images = tuple(images)
        self._hash = None

    @classmethod
    def checked(cls, images: Iterable[int]) -> "Permutation":
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        return cls(images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], degree: int) -> "Permutation":
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if not 0 <= a < degree:
                    raise ValueError(f"point {a} outside degree {degree}")
                if a in seen:
                    raise ValueError(f"point {a} repeated in cycles")
                seen.add(a)
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(img)

    @classmethod
    def parse(cls, text: str, degree: int) -> "Permutation":
        """Parse 1-based disjoint-cycle notation such as ``(1,4,7)(2,5)``."""
        text = text.strip()
        if text in ("", "()"):
            return cls.identity(degree)
        if not re.fullmatch(r"(\(\s*\d+(\s*,\s*\d+)*\s*\))+", text.replace(" ", "")):
            raise ValueError(f"bad cycle notation {text!r}")
        cycles = [[int(x) - 1 for x in body.split(",")] for body in re.findall(r"\(([^)]*)\)", text)]
        return cls.from_cycles(cycles, degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(other.images) != len(self.images):
            raise ValueError("degree mismatch")
        return Permutation(map(other.images.__getitem__, self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def __invert__(self) -> "Permutation":
        return self.inverse()

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(len(self.images))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()})"

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        """1-based disjoint-cycle notation (``()`` for the identity)."""
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(a + 1) for a in c) + ")" for c in cyc)

    def order(self) -> int:
        return element_order(self)

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def commutator(self, other: "Permutation") -> "Permutation":
        """``[self, other] = self other self^-1 other^-1``."""
        return self * other * self.inverse() * other.inverse()


def element_order(g: Permutation) -> int:
    n = 1
    for c in g.cycles():
        n = n * len(c) // gcd(n, len(c))
    return n


# --- tuple-level helpers used inside Schreier-Sims ---------------------------

def _mul(p: tuple, q: tuple) -> tuple:
    return tuple(map(q.__getitem__, p))


def _inv(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def _first_moved(p: tuple) -> int:
    for i, j in enumerate(p):
        if i != j:
            return i
    return -1


class _Level:
    """One stabilizer level: base point, its strong generators and a transversal."""

    __slots__ = ("point", "gens", "reps")

    def __init__(self, point: int, gens: list, identity: tuple):
        self.point = point
        self.gens = gens
        self.reps: dict[int, tuple] = {}
        self.rebuild(identity)

    def rebuild(self, identity: tuple):
        reps = {self.point: identity}
        frontier = [self.point]
        while frontier:
            nxt = []
            for b in frontier:
                u = reps[b]
                for s in self.gens:
                    c = s[b]
                    if c not in reps:
                        reps[c] = _mul(u, s)
                        nxt.append(c)
            frontier = nxt
        self.reps = reps


class PermGroup:
    """A permutation group given by generators; BSGS computed on first use."""

    def __init__(self, generators: Sequence[Permutation], degree: int | None = None):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group without generators")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise ValueError("all generators must have the same degree")
        self.degree = degree
        self.generators = tuple(g for g in gens if not g.is_identity())
        self._levels: list[_Level] | None = None

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    # -- Schreier-Sims --------------------------------------------------------

    @property
    def levels(self) -> list[_Level]:
        if self._levels is None:
            self._levels = self._schreier_sims()
        return self._levels

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    def _schreier_sims(self) -> list[_Level]:
        ident = tuple(range(self.degree))
        gens = [g.images for g in self.generators]
        base: list[int] = []
        for g in gens:
            if all(g[b] == b for b in base):
                base.append(_first_moved(g))
        levels = []
        for i, b in enumerate(base):
            sg = [g for g in gens if all(g[c] == c for c in base[:i])]
            levels.append(_Level(b, sg, ident))

        def strip(h, start):
            for l in range(start, len(levels)):
                lv = levels[l]
                beta = h[lv.point]
                u = lv.reps.get(beta)
                if u is None:
                    return h, l
                h = _mul(h, _inv(u))
            return h, len(levels)

        i = len(levels) - 1
        while i >= 0:
            lv = levels[i]
            restart = False
            for beta, u in list(lv.reps.items()):
                for s in lv.gens:
                    ubs = lv.reps[s[beta]]
                    h = _mul(_mul(u, s), _inv(ubs))
                    if h == ident:
                        continue
                    y, j = strip(h, i + 1)
                    if j < len(levels) or y != ident:
                        if j == len(levels):
                            levels.append(_Level(_first_moved(y), [], ident))
                        for l in range(i + 1, j + 1):
                            levels[l].gens.append(y)
                            levels[l].rebuild(ident)
                        i = j
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                i -= 1
        return levels

    def order(self) -> int:
        n = 1
        for lv in self.levels:
            n *= len(lv.reps)
        return n

    def strip(self, g: Permutation) -> tuple[tuple, int]:
        h = g.images
        for l, lv in enumerate(self.levels):
            u = lv.reps.get(h[lv.point])
            if u is None:
                return h, l
            h = _mul(h, _inv(u))
        return h, len(self.levels)

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            raise ValueError(f"degree {g.degree} does not match group degree {self.degree}")
        h, l = self.strip(g)
        return l == len(self.levels) and h == tuple(range(self.degree))

    __contains__ = contains

    def random_element(self, rng: random.Random) -> Permutation:
        """Uniformly random element (product of random transversal elements)."""
        h = tuple(range(self.degree))
        for lv in reversed(self.levels):
            reps = lv.reps
            # sorted keys so the draw depends only on the seed
            h = _mul(h, reps[rng.choice(sorted(reps))])
        return Permutation(h)

    def elements(self) -> Iterator[Permutation]:
        """All elements, identity first, in a fixed order."""
        if not self.levels:
            yield self.identity
            return
        choices = [[lv.reps[k] for k in sorted(lv.reps)] for lv in reversed(self.levels)]
        for combo in itertools.product(*choices):
            h = combo[0]
            for u in combo[1:]:
                h = _mul(h, u)
            yield Permutation(h)

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(a * b == b * a for a, b in itertools.combinations(gs, 2))

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def equals(self, other: "PermGroup") -> bool:
        return self.order() == other.order() and self.is_subgroup_of(other)

    def multiplication_table(self) -> tuple[list[Permutation], list[list[int]]]:
        """Elements (identity at index 0) and the table ``mult[i][j] = index(e_i * e_j)``."""
        elems = list(self.elements())
        index = {e.images: k for k, e in enumerate(elems)}
        mult = [[index[_mul(a.images, b.images)] for b in elems] for a in elems]
        return elems, mult

    def derived_subgroup(self, seed: int = DEFAULT_SEED) -> "PermGroup":
        comms = [a.commutator(b) for a, b in itertools.combinations(self.generators, 2)]
        return normal_closure_of_set(self, comms, seed=seed)

    def is_perfect(self, seed: int = DEFAULT_SEED) -> bool:
        return self.derived_subgroup(seed).order() == self.order()


def naive_closure(generators: Sequence[Permutation], degree: int) -> set[tuple]:
    """All elements of the generated group by breadth-first multiplication."""
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    gens = [g.images for g in generators]
    while frontier:
        nxt = []
        for h in frontier:
            for s in gens:
                k = _mul(h, s)
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    return seen


# --- normal closure and simplicity -------------------------------------------

def normal_closure(G: PermGroup, g: Permutation, seed: int = DEFAULT_SEED) -> PermGroup:
    """Smallest normal subgroup of ``G`` containing ``g``."""
    if not G.contains(g):
        raise ValueError("element is not in the group")
    return normal_closure_of_set(G, [g], seed=seed)


def normal_closure_of_set(G: PermGroup, elems: Sequence[Permutation], seed: int = DEFAULT_SEED,
                          saturation: int = 4) -> PermGroup:
    gens = [h for h in elems if not h.is_identity()]
    if not gens:
        return PermGroup([], G.degree)
    rng = random.Random(seed)
    # a few random conjugates first: usually gets most of the closure in one build
    for h in list(gens):
        for _ in range(saturation):
            x = G.random_element(rng)
            gens.append(x.inverse() * h * x)
    N = PermGroup(gens, G.degree)
    while True:
        missing = None
        for h in N.generators:
            for s in G.generators:
                c = s.inverse() * h * s
                if not N.contains(c):
                    missing = c
                    break
            if missing is not None:
                break
        if missing is None:
            return N
        N = PermGroup(list(N.generators) + [missing], G.degree)


def conjugacy_class(G: PermGroup, g: Permutation) -> set[tuple]:
    seen = {g.images}
    frontier = [g.images]
    gens = [(s.images, _inv(s.images)) for s in G.generators]
    while frontier:
        nxt = []
        for h in frontier:
            for s, si in gens:
                c = _mul(_mul(si, h), s)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return seen


class OrderBoundExceeded(ValueError):
    pass


def is_simple(G: PermGroup, bound: int = SIMPLICITY_BOUND, seed: int = DEFAULT_SEED,
              sample_budget: int = 2000) -> bool:
    """Normal closure of a representative of every non-identity class equals ``G``.

    Class representatives come from seeded random sampling until the class
    sizes found add up to ``|G|``; if sampling stalls, the remaining elements
    are swept in a fixed order.
    """
    order = G.order()
    if order > bound:
        raise OrderBoundExceeded(f"|G| = {order} exceeds the simplicity bound {bound}")
    if order == 1:
        return False
    rng = random.Random(seed)
    ident = tuple(range(G.degree))
    covered = {ident}

    def visit(g: Permutation) -> bool:
        covered.update(conjugacy_class(G, g))
        return normal_closure(G, g, seed).order() == order

    for _ in range(sample_budget):
        if len(covered) == order:
            return True
        g = G.random_element(rng)
        if g.images not in covered and not visit(g):
            return False
    for g in G.elements():
        if len(covered) == order:
            break
        if g.images not in covered and not visit(g):
            return False
    return True


# --- Heisenberg subgroups ------------------------------------------------------

@dataclass(frozen=True)
class HeisenbergWitness:
    a: Permutation
    b: Permutation
    p: int

    @property
    def z(self) -> Permutation:
        return self.a.commutator(self.b)

    def failures(self) -> list[str]:
        """Invariant clauses that do not hold (empty for a valid witness)."""
        a, b, p, z = self.a, self.b, self.p, self.z
        ident = Permutation.identity(a.degree)
        bad = []
        if a ** p != ident:
            bad.append("a^p != 1")
        if b ** p != ident:
            bad.append("b^p != 1")
        if element_order(z) != p:
            bad.append("[a,b] does not have order p")
        if a.commutator(z) != ident:
            bad.append("[a,z] != 1")
        if b.commutator(z) != ident:
            bad.append("[b,z] != 1")
        if not bad and PermGroup([a, b]).order() != p ** 3:
            bad.append("<a,b> does not have order p^3")
        return bad

    def is_valid(self) -> bool:
        return not self.failures()


@dataclass(frozen=True)
class NotFound:
    """Search budget exhausted.  Inconclusive: says nothing about existence."""

    p: int
    trials: int
    seed: int
    reason: str = "budget exhausted without a witness (inconclusive)"


@dataclass(frozen=True)
class Excluded:
    """Proved absent by Lagrange's theorem."""

    p: int
    reason: str


DEFAULT_SEARCH_BUDGET = 10**5


def lagrange_excludes(order: int, p: int) -> bool:
    return order % p ** 3 != 0


def find_heisenberg_subgroup(G: PermGroup, p: int, seed: int = DEFAULT_SEED,
                             budget: int = DEFAULT_SEARCH_BUDGET):
    """Look for ``a, b`` of order ``p`` generating a copy of ``He3(p)``.

    Returns a :class:`HeisenbergWitness`, :class:`Excluded` (``p^3`` does not
    divide ``|G|``) or :class:`NotFound` after ``budget`` random pair trials.
    Pairs of given generators are tried before any random ones.
    """
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    order = G.order()
    if lagrange_excludes(order, p):
        return Excluded(p, f"{p}^3 = {p ** 3} does not divide |G| = {order}")

    for a, b in itertools.permutations(G.generators, 2):
        w = HeisenbergWitness(a, b, p)
        if _quick_check(w) and w.is_valid():
            return w

    rng = random.Random(seed)

    def order_p_element():
        for _ in range(64):
            g = G.random_element(rng)
            m = element_order(g)
            if m % p == 0:
                return g ** (m // p)
        return None

    for _ in range(budget):
        a = order_p_element()
        b = order_p_element()
        if a is None or b is None:
            continue
        w = HeisenbergWitness(a, b, p)
        if _quick_check(w) and w.is_valid():
            return w
    return NotFound(p, budget, seed)


def _quick_check(w: HeisenbergWitness) -> bool:
    z = w.z
    if z.is_identity():
        return False
    return w.a * z == z * w.a and w.b * z == z * w.b and element_order(z) == w.p


# --- small standard groups and generator files --------------------------------

def symmetric_group(n: int) -> PermGroup:
    if n < 2:
        return PermGroup([], max(n, 1))
    gens = [Permutation.from_cycles([tuple(range(n))], n)]
    gens.append(Permutation.from_cycles([(0, 1)], n))
    return PermGroup(gens, n)


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return PermGroup([], max(n, 1))
    gens = [Permutation.from_cycles([(0, 1, i)], n) for i in range(2, n)]
    return PermGroup(gens, n)


def cyclic_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup([], 1)
    return PermGroup([Permutation.from_cycles([tuple(range(n))], n)], n)


def dihedral_group(n: int) -> PermGroup:
    """Symmetries of an n-gon, order 2n."""
    r = Permutation.from_cycles([tuple(range(n))], n)
    s = Permutation([(-i) % n for i in range(n)])
    return PermGroup([r, s], n)


def quaternion_group() -> PermGroup:
    """Q8 in its regular representation (degree 8)."""
    # elements +-1, +-i, +-j, +-k indexed 0..7 as (sign, unit) pairs
    units = ["1", "i", "j", "k"]
    table = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, u) for s in (1, -1) for u in units]
    index = {e: k for k, e in enumerate(elems)}

    def right_mult(g):
        out = []
        for s, u in elems:
            t, v = table[(u, g[1])]
            out.append(index[(s * g[0] * t, v)])
        return Permutation(out)

    return PermGroup([right_mult((1, "i")), right_mult((1, "j"))], 8)


def load_generator_file(path: str | Path) -> tuple[dict, PermGroup]:
    """Read a generator file; returns ``(header, group)``.

    Header lines are ``key value`` pairs (``name``, ``degree``, ``order``,
    ...); every line starting with ``(`` is one generator.
    """
    header: dict = {}
    perm_lines = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("("):
            perm_lines.append(line)
        else:
            key, _, value = line.partition(" ")
            header[key] = value.strip()
    if "degree" not in header:
        raise ValueError(f"{path}: missing 'degree' header")
    degree = int(header["degree"])
    gens = [Permutation.parse(line, degree) for line in perm_lines]
    return header, PermGroup(gens, degree)
