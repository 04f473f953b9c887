"""Todd-Coxeter coset enumeration (HLT strategy with lookahead)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from surface_cert import _backend
from surface_cert.words import Presentation, Word

DEFAULT_MAX_COSETS = 10**6


class CosetOverflow(Exception):
    """The enumeration needed more than ``max_cosets`` live cosets.

    This only means finiteness was not established at this budget.
    """

    def __init__(self, max_cosets: int):
        super().__init__(f"coset enumeration exceeded {max_cosets} cosets")
        self.max_cosets = max_cosets


@dataclass(frozen=True)
class CosetTable:
    """A complete coset table.  ``table[c][2*g]`` is ``c * g``, ``table[c][2*g+1]`` is ``c * g^-1``."""

    table: tuple[tuple[int, ...], ...]
    num_generators: int

    @property
    def index(self) -> int:
        return len(self.table)

    def act(self, coset: int, w: Word) -> int:
        for col in w.columns():
            coset = self.table[coset][col]
        return coset

    def permutation_images(self) -> list[list[int]]:
        """Action of each generator on the cosets, as image lists."""
        return [[row[2 * g] for row in self.table] for g in range(self.num_generators)]


def todd_coxeter(
    P: Presentation,
    max_cosets: int = DEFAULT_MAX_COSETS,
    subgroup: Sequence[Word] = (),
) -> CosetTable:
    """Enumerate the cosets of ``subgroup`` (default trivial) in the group presented by ``P``.

    With the trivial subgroup the index is the group order.  Raises
    :class:`CosetOverflow` if the budget is exhausted.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be at least 1")
    ncols = 2 * P.num_generators
    if ncols == 0:
        return CosetTable(((),), 0)
    rels = [r.columns() for r in P.relators if r]
    subs = [w.columns() for w in subgroup if w]
    rows = _backend.hlt_enumerate(ncols, rels, subs, max_cosets)
    if rows is None:
        raise CosetOverflow(max_cosets)
    return CosetTable(tuple(tuple(r) for r in rows), P.num_generators)


def group_order(P: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> int:
    return todd_coxeter(P, max_cosets).index
