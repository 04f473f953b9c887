"""Integral homology of finite groups in low degrees.

Three ways in:

* cyclic groups, from the 2-periodic resolution;
* small groups, from the normalized bar complex and exact Smith forms;
* the p-part of ``PSL(2, p)``, from the torus action on the cohomology of
  its cyclic Sylow subgroup.

For finite groups ``H^{k+1}(G; Z)`` and ``H_k(G; Z)`` have isomorphic
torsion (universal coefficients), which is how cohomological degree 4
answers questions about ``H_3``.
"""

from __future__ import annotations

import json
from math import gcd
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

from surface_cert import _backend
from surface_cert.constructions import PSL2, data_dir, file_sha256, is_prime
from surface_cert.linalg import AbelianGroupStructure, SparseIntMatrix, homology_of_pair
from surface_cert.perm import PermGroup

Method = Literal["periodic", "bar", "swan-weyl", "external-table"]

DEFAULT_SIZE_CAP = 16
STRETCH_SIZE_CAP = 27
TABLE_FILE = "sporadic_homology.json"


class SizeCapExceeded(ValueError):
    pass


class EvidenceError(ValueError):
    """Evidence is missing, unknown, or does not apply to the question asked."""


@dataclass(frozen=True)
class HomologyResult:
    group_id: str
    degree: int
    structure: AbelianGroupStructure | None
    method: Method
    certified: bool
    citation: str | None = None
    note: str | None = None

    def __post_init__(self):
        if self.method == "external-table":
            if self.certified:
                raise ValueError("external-table results cannot be certified")
            if not self.citation:
                raise ValueError("external-table results need a citation")
        if self.structure is None and self.method != "external-table":
            raise ValueError("computed results must carry a structure")

    def to_json(self) -> dict:
        return {
            "group": self.group_id,
            "degree": self.degree,
            "structure": None if self.structure is None else self.structure.to_json(),
            "text": "unknown" if self.structure is None else str(self.structure),
            "method": self.method,
            "certified": self.certified,
            "citation": self.citation,
            "note": self.note,
        }


# --- cyclic groups ---------------------------------------------------------------

def homology_cyclic(n: int, k: int) -> AbelianGroupStructure:
    """``H_k(Z/n; Z)``: Z in degree 0, Z/n in odd degrees, 0 in positive even degrees."""
    if n < 1:
        raise ValueError("n must be positive")
    if k < 0:
        raise ValueError("degree must be non-negative")
    if k == 0:
        return AbelianGroupStructure(1)
    if k % 2 == 1 and n > 1:
        return AbelianGroupStructure(0, (n,))
    return AbelianGroupStructure()


# --- bar complex -------------------------------------------------------------------

def bar_boundary_matrix(mult: list[list[int]], j: int) -> SparseIntMatrix:
    """``d_j : C_j -> C_{j-1}`` of the normalized bar complex (identity = element 0)."""
    m = len(mult) - 1
    if j == 0:
        return SparseIntMatrix(0, 1)
    rows, cols, vals = _backend.bar_boundary(mult, j)
    return SparseIntMatrix.from_coo(m ** (j - 1), m ** j, rows, cols, vals)


def bar_homology(G: PermGroup, k: int, size_cap: int = DEFAULT_SIZE_CAP,
                 group_id: str = "G") -> HomologyResult:
    """``H_k(G; Z)`` for ``k <= 3`` from the normalized bar complex."""
    if not 0 <= k <= 3:
        raise ValueError("bar homology is only provided in degrees 0..3")
    order = G.order()
    if order > size_cap:
        raise SizeCapExceeded(f"|G| = {order} exceeds the bar-complex size cap {size_cap}")
    _, mult = G.multiplication_table()
    d_k = bar_boundary_matrix(mult, k)
    d_next = bar_boundary_matrix(mult, k + 1)
    return HomologyResult(group_id, k, homology_of_pair(d_k, d_next), "bar", True)


# --- Heisenberg bound ---------------------------------------------------------------

def he3_annihilation_bound(p: int) -> int:
    """``p^3`` kills ``H_3(He3(p); Z)``; the pipelines only ever use this bound."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p ** 3


# --- PSL(2, p) via the Weyl action ------------------------------------------------

@dataclass(frozen=True)
class WeylAction:
    """Multiplication by ``unit`` on ``H^2(Z/p; Z) = Z/p``."""

    p: int
    unit: int

    def __post_init__(self):
        if self.unit % self.p == 0:
            raise ValueError("unit must be non-zero mod p")

    def subgroup_order(self) -> int:
        """Order of ``unit`` in ``(Z/p)^x``."""
        k, x = 1, self.unit % self.p
        while x != 1:
            x = x * self.unit % self.p
            k += 1
        return k


def weyl_fixed_points(action: WeylAction, ell: int) -> AbelianGroupStructure:
    """Fixed points of the action on ``H^{2 ell}(Z/p; Z) = Z/p`` (multiplication by ``unit^ell``).

    Replacing ``unit`` by its inverse gives the same answer.
    """
    if ell < 1:
        raise ValueError("ell must be at least 1")
    if pow(action.unit, ell, action.p) == 1:
        return AbelianGroupStructure(0, (action.p,))
    return AbelianGroupStructure()


def psl2_weyl_action(p: int) -> WeylAction:
    """The torus of ``PSL(2, p)`` acting on its unipotent Sylow subgroup, read off the group."""
    return WeylAction(p, PSL2(p).weyl_unit())


def psl2_p_torsion_degrees_formula(p: int, k_max: int) -> set[int]:
    half = (p - 1) // 2
    return {2 * ell for ell in range(1, k_max // 2 + 1) if ell % half == 0}


def psl2_p_torsion_degrees(p: int, k_max: int) -> set[int]:
    """Cohomological degrees ``<= k_max`` where ``H^k(PSL(2, p); Z)`` has p-torsion.

    Computed by the closed formula and again from the Weyl fixed points of
    the action read off the group; the two must agree.
    """
    if not is_prime(p) or p < 5:
        raise ValueError("p must be a prime >= 5")
    formula = psl2_p_torsion_degrees_formula(p, k_max)
    action = psl2_weyl_action(p)
    if action.subgroup_order() != (p - 1) // 2:
        raise AssertionError("torus action is not through the quadratic residues")
    fixed = {2 * ell for ell in range(1, k_max // 2 + 1)
             if not weyl_fixed_points(action, ell).is_trivial}
    if fixed != formula:
        raise AssertionError(f"formula {sorted(formula)} disagrees with fixed points {sorted(fixed)}")
    return formula


# --- evidence for "H_3(P) has no p-torsion" ---------------------------------------

@dataclass(frozen=True)
class Psl2Formula:
    """Evidence: P is PSL(2, q); only answers the question for p = q."""

    q: int


@dataclass(frozen=True)
class NoPTorsionVerdict:
    value: bool
    provenance: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.value


def h3_has_no_p_torsion(group_id: str, p: int, evidence) -> NoPTorsionVerdict:
    if evidence is None:
        raise EvidenceError(f"no evidence supplied for H_3({group_id})")
    if isinstance(evidence, Psl2Formula):
        if evidence.q != p:
            raise EvidenceError(
                f"the PSL(2, {evidence.q}) argument only covers p = {evidence.q}, not p = {p}"
            )
        degrees = sorted(psl2_p_torsion_degrees(p, 4))
        # H^4 p-torsion <-> H_3 p-torsion for finite groups
        return NoPTorsionVerdict(4 not in degrees, {
            "source": "psl2-formula",
            "certified": True,
            "p_torsion_cohomology_degrees_le_4": degrees,
            "homological_degree": 3,
            "cohomological_degree": 4,
        })
    if isinstance(evidence, HomologyResult):
        if evidence.degree != 3:
            raise EvidenceError(f"evidence is for H_{evidence.degree}, need H_3")
        if evidence.structure is None:
            raise EvidenceError(f"H_3({evidence.group_id}) is not known exactly: {evidence.note}")
        return NoPTorsionVerdict(not evidence.structure.has_p_torsion(p), {
            "source": evidence.method,
            "certified": evidence.certified,
            "h3": str(evidence.structure),
            "citation": evidence.citation,
        })
    raise EvidenceError(f"unsupported evidence type {type(evidence).__name__}")


def torsion_image_vanishes(annihilator: int, target: AbelianGroupStructure) -> bool:
    """Does every homomorphism from a group killed by ``annihilator`` into ``target`` vanish?

    Torsion lands in torsion, so this holds iff ``annihilator`` is coprime to
    every invariant factor of ``target``.
    """
    return all(gcd(annihilator, d) == 1 for d in target.invariant_factors)


def p_power_image_vanishes(annihilator: int, p: int, target_has_p_torsion: bool) -> bool:
    """Same question when only "has p-torsion or not" is known about the target."""
    a = annihilator
    while a % p == 0:
        a //= p
    if a != 1:
        raise ValueError(f"{annihilator} is not a power of {p}")
    return not target_has_p_torsion


# --- the external table -------------------------------------------------------------

@dataclass(frozen=True)
class TableEntry:
    name: str
    in_table: bool
    h2: AbelianGroupStructure | None
    h3: AbelianGroupStructure | None
    h3_note: str | None
    he3_primes: tuple[int, ...] | None
    citation: str

    def homology(self, k: int) -> HomologyResult:
        if k not in (2, 3):
            raise EvidenceError("the table only records H_2 and H_3")
        structure = self.h2 if k == 2 else self.h3
        note = None if structure is not None else (self.h3_note if k == 3 else None) or "not recorded"
        return HomologyResult(self.name, k, structure, "external-table", False, self.citation, note)


def _parse_structure(value):
    if isinstance(value, list):
        return AbelianGroupStructure.from_orders(value), None
    if isinstance(value, dict):
        return None, value.get("constraint", "constraint only")
    return None, str(value)


class ExternalTable:
    def __init__(self, entries: dict[str, TableEntry], path: str, sha256: str, version: int):
        self.entries = entries
        self.path = path
        self.sha256 = sha256
        self.version = version

    @classmethod
    def load(cls, path: str | Path | None = None) -> "ExternalTable":
        path = Path(path) if path is not None else data_dir() / TABLE_FILE
        raw = json.loads(Path(path).read_text())
        entries = {}
        for rec in raw["groups"]:
            h2, _ = _parse_structure(rec["H2"])
            h3, note = _parse_structure(rec["H3"])
            primes = rec["he3_primes"]
            entries[rec["name"]] = TableEntry(
                rec["name"], bool(rec["in_table"]), h2, h3, note,
                tuple(primes) if isinstance(primes, list) else None, rec["citation"],
            )
        return cls(entries, str(path), file_sha256(path), int(raw.get("version", 1)))

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def entry(self, name: str) -> TableEntry:
        try:
            return self.entries[name]
        except KeyError:
            raise EvidenceError(f"{name} is not in the external table") from None

    def homology(self, name: str, k: int) -> HomologyResult:
        return self.entry(name).homology(k)
