"""Words, finite presentations and homomorphisms out of them.

A :class:`Word` is a tuple of ``(generator, exponent)`` syllables kept in
freely reduced form.  Commutators follow ``[a, b] = a b a^-1 b^-1``
everywhere in this package.

Presentation text format::

    # comments start with '#'
    gens 3 a1 b1 z
    a1 b1 a1^-1 b1^-1 z^-1
    a1 z a1^-1 z^-1
    mark mu = z

``gens N`` may omit the names; generators are then named in order of first
appearance in the relators and marks, and any left over become ``x<i>``.
"""

from __future__ import annotations

import re
from math import gcd
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence

from surface_cert.linalg import AbelianGroupStructure, SparseIntMatrix, smith_normal_form


class PresentationError(ValueError):
    pass


class HomomorphismError(ValueError):
    """Raised when generator images do not satisfy every relator."""


def free_reduce(letters: Iterable[tuple[int, int]]) -> "Word":
    """Freely reduce a sequence of ``(generator, exponent)`` pairs."""
    return Word(_reduce(letters))


def _reduce(letters) -> tuple[tuple[int, int], ...]:
    stack: list[list[int]] = []
    for g, e in letters:
        g, e = int(g), int(e)
        if g < 0:
            raise PresentationError(f"negative generator index {g}")
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([g, e])
    return tuple((g, e) for g, e in stack)


@dataclass(frozen=True)
class Word:
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def gen(cls, g: int, e: int = 1) -> "Word":
        return cls(((g, e),))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def generators(self) -> set[int]:
        return {g for g, _ in self.letters}

    def exponent_sums(self, ngens: int) -> list[int]:
        row = [0] * ngens
        for g, e in self.letters:
            row[g] += e
        return row

    def columns(self) -> list[int]:
        """Expand into coset-table columns (2g for g, 2g+1 for g^-1)."""
        out = []
        for g, e in self.letters:
            out.extend([2 * g + (e < 0)] * abs(e))
        return out


def commutator(x: Word, y: Word) -> Word:
    return x * y * x.inverse() * y.inverse()


@dataclass(frozen=True)
class Presentation:
    num_generators: int
    relators: tuple[Word, ...] = ()
    marked: Mapping[str, Word] = field(default_factory=dict)
    generator_names: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "relators", tuple(Word(r.letters) for r in self.relators))
        object.__setattr__(self, "marked", dict(self.marked))
        if not self.generator_names:
            object.__setattr__(
                self, "generator_names", tuple(f"x{i}" for i in range(self.num_generators))
            )
        else:
            object.__setattr__(self, "generator_names", tuple(self.generator_names))
        if len(self.generator_names) != self.num_generators:
            raise PresentationError("one name per generator required")
        if len(set(self.generator_names)) != self.num_generators:
            raise PresentationError("generator names must be distinct")
        for w in list(self.relators) + list(self.marked.values()):
            for g in w.generators():
                if g >= self.num_generators:
                    raise PresentationError(f"generator index {g} out of range")

    def __hash__(self):
        return hash((self.num_generators, self.relators, self.generator_names,
                     tuple(sorted(self.marked.items()))))

    def with_relators(self, extra: Sequence[Word]) -> "Presentation":
        return Presentation(self.num_generators, self.relators + tuple(extra),
                            self.marked, self.generator_names)

    def word(self, text: str) -> Word:
        return parse_word(text, self.generator_names)

    def format_word(self, w: Word) -> str:
        return format_word(w, self.generator_names)


_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


def parse_word(text: str, names: Sequence[str]) -> Word:
    index = {n: i for i, n in enumerate(names)}
    letters = []
    for tok in text.split():
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise PresentationError(f"bad token {tok!r}")
        name, exp = m.group(1), int(m.group(2) or 1)
        if name not in index:
            raise PresentationError(f"unknown generator {name!r}")
        letters.append((index[name], exp))
    return Word(tuple(letters))


def format_word(w: Word, names: Sequence[str]) -> str:
    if not w:
        return "1"
    return " ".join(names[g] if e == 1 else f"{names[g]}^{e}" for g, e in w.letters)


def parse_presentation(text: str) -> Presentation:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines or not lines[0].startswith("gens"):
        raise PresentationError("first line must be 'gens N [names...]'")
    head = lines[0].split()
    try:
        n = int(head[1])
    except (IndexError, ValueError):
        raise PresentationError("malformed 'gens' line") from None
    names = head[2:]
    body = lines[1:]
    if names and len(names) != n:
        raise PresentationError(f"'gens {n}' lists {len(names)} names")
    if not names:
        seen: list[str] = []
        for line in body:
            toks = line.split("=", 1)[1].split() if line.startswith("mark ") else line.split()
            for tok in toks:
                m = _TOKEN.match(tok)
                if m and m.group(1) not in seen:
                    seen.append(m.group(1))
        if len(seen) > n:
            raise PresentationError(f"{len(seen)} generator names used but 'gens {n}'")
        names = seen + [f"x{i}" for i in range(len(seen), n)]
    relators, marked = [], {}
    for line in body:
        if line.startswith("mark "):
            lhs, _, rhs = line[5:].partition("=")
            if not _:
                raise PresentationError(f"malformed mark line {line!r}")
            marked[lhs.strip()] = parse_word(rhs, names)
        else:
            relators.append(parse_word(line, names))
    return Presentation(n, tuple(relators), marked, tuple(names))


def format_presentation(P: Presentation) -> str:
    out = [" ".join(["gens", str(P.num_generators), *P.generator_names])]
    out.extend(P.format_word(r) for r in P.relators)
    out.extend(f"mark {k} = {P.format_word(w)}" for k, w in P.marked.items())
    return "\n".join(out) + "\n"


def evaluate(w: Word, images: Sequence, identity=None):
    """Multiply out ``w`` left to right in whatever group ``images`` live in.

    Elements must support ``*`` and integer ``**`` (negative included).
    """
    if identity is None:
        if not images:
            raise ValueError("identity is required when there are no images")
        identity = images[0] ** 0
    result = identity
    for g, e in w.letters:
        if g >= len(images):
            raise IndexError(f"generator {g} has no image ({len(images)} given)")
        result = result * images[g] ** e
    return result


def check_hom(P: Presentation, images: Sequence, G=None, identity=None) -> tuple[bool, list[int]]:
    """Evaluate every relator; returns ``(ok, indices of failing relators)``."""
    if len(images) != P.num_generators:
        raise ValueError(f"{P.num_generators} images needed, got {len(images)}")
    if identity is None and G is not None:
        identity = G.identity
    failing = [i for i, r in enumerate(P.relators) if not _is_identity(evaluate(r, images, identity), identity)]
    return not failing, failing


def _is_identity(x, identity) -> bool:
    if identity is not None:
        return x == identity
    return x == x ** 0


@dataclass(frozen=True)
class FpHom:
    """A homomorphism from a presented group, verified on construction."""

    source: Presentation
    images: tuple
    target: object = None

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        ok, failing = check_hom(self.source, self.images, self.target)
        if not ok:
            bad = ", ".join(self.source.format_word(self.source.relators[i]) for i in failing)
            raise HomomorphismError(f"relators not satisfied: {bad}")

    def __call__(self, w: Word):
        identity = self.target.identity if self.target is not None else None
        return evaluate(w, self.images, identity)

    def marked_image(self, name: str):
        return self(self.source.marked[name])


class Abelianization(NamedTuple):
    structure: AbelianGroupStructure
    # coordinates: one entry per invariant factor (reduced mod it), then free coordinates
    marked: dict[str, tuple[int, ...]]

    def generates_torsion(self, name: str) -> bool:
        """True if the marked element generates the (cyclic) torsion part and has no free part."""
        coords = self.marked[name]
        tors = self.structure.invariant_factors
        if len(tors) > 1:
            return False
        if any(coords[len(tors):]):
            return False
        if not tors:
            return False
        return gcd(coords[0], tors[0]) == 1

    def generates_free(self, name: str) -> bool:
        """True for a group Z (plus nothing else) with the marked element mapping to +-1."""
        s = self.structure
        return s.free_rank == 1 and not s.invariant_factors and abs(self.marked[name][0]) == 1


def abelianization(P: Presentation) -> Abelianization:
    """Abelian invariants via the Smith form of the exponent-sum matrix."""
    n = P.num_generators
    rows = [r.exponent_sums(n) for r in P.relators]
    R = SparseIntMatrix.from_dense(rows, n)
    snf = smith_normal_form(R, transforms=True)
    V = snf.right
    diag = snf.diagonal
    factors = [d for d in diag if d > 1]
    units = len(diag) - len(factors)
    structure = AbelianGroupStructure(n - len(diag), tuple(factors))
    marked = {}
    for name, w in P.marked.items():
        x = w.exponent_sums(n)
        y = [sum(x[i] * V[i][j] for i in range(n)) for j in range(n)]
        coords = tuple(y[units + k] % d for k, d in enumerate(factors)) + tuple(y[len(diag):])
        marked[name] = coords
    return Abelianization(structure, marked)
