"""Exact sparse integer matrices, Smith normal form and chain-complex homology.

All arithmetic uses Python integers, so there is no overflow during
elimination.  The sparse path pivots on unit entries first (Markowitz cost
``(row_nnz - 1) * (col_nnz - 1)``), then falls back to smallest-magnitude
pivots for whatever torsion block is left.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd
from typing import Iterable, NamedTuple, Sequence


class ComplexError(ValueError):
    """Raised when two maps do not compose to zero."""


@dataclass(frozen=True)
class AbelianGroupStructure:
    """A finitely generated abelian group ``Z^r + Z/d1 + ... + Z/dk``."""

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", tuple(int(d) for d in self.invariant_factors))
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        for d in self.invariant_factors:
            if d < 2:
                raise ValueError(f"invariant factor {d} must be >= 2")
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a:
                raise ValueError(f"invariant factors break divisibility: {a} does not divide {b}")

    @classmethod
    def from_orders(cls, orders: Iterable[int], free_rank: int = 0) -> "AbelianGroupStructure":
        """Build from an arbitrary list of cyclic orders (1s are dropped)."""
        chain = divisibility_chain([abs(int(d)) for d in orders if abs(int(d)) != 1])
        if any(d == 0 for d in chain):
            raise ValueError("use free_rank for infinite cyclic summands")
        return cls(free_rank, tuple(d for d in chain if d != 1))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def torsion_order(self) -> int:
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    @property
    def exponent(self) -> int:
        """Exponent of the torsion subgroup (1 if torsion-free)."""
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def has_p_torsion(self, p: int) -> bool:
        return any(d % p == 0 for d in self.invariant_factors)

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "invariant_factors": list(self.invariant_factors)}

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"


def divisibility_chain(values: Sequence[int]) -> list[int]:
    """Rewrite a diagonal as an equivalent chain d1 | d2 | ... (sorted, same product)."""
    a = [abs(v) for v in values]
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            x, y = a[i], a[j]
            if x == 0 and y == 0:
                continue
            g = gcd(x, y)
            a[i], a[j] = g, (x // g) * y if g else 0
    # zeros (free summands) go last; they only appear when callers pass them
    nonzero = [v for v in a if v]
    return nonzero + [0] * (len(a) - len(nonzero))


class SparseIntMatrix:
    """Sparse integer matrix stored as a ``{(row, col): value}`` map.

    Zero entries are never stored.  Instances are treated as immutable values.
    """

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        clean = {}
        if entries:
            items = entries.items() if isinstance(entries, dict) else entries
            for (i, j), v in items:
                if not (0 <= i < rows and 0 <= j < cols):
                    raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
                v = int(v)
                if v:
                    clean[(i, j)] = clean.get((i, j), 0) + v
                    if not clean[(i, j)]:
                        del clean[(i, j)]
        self._entries = clean

    @classmethod
    def from_coo(cls, rows, cols, row_idx, col_idx, values) -> "SparseIntMatrix":
        """Sum duplicate coordinates, as COO assembly usually expects."""
        acc: dict = {}
        for i, j, v in zip(row_idx, col_idx, values):
            acc[(i, j)] = acc.get((i, j), 0) + v
        return cls(rows, cols, acc)

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]], cols: int | None = None) -> "SparseIntMatrix":
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        ent = {(i, j): v for i, row in enumerate(data) for j, v in enumerate(row) if v}
        return cls(rows, cols, ent)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "SparseIntMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "SparseIntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @property
    def entries(self) -> dict:
        return dict(self._entries)

    @property
    def nnz(self) -> int:
        return len(self._entries)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, key) -> int:
        return self._entries.get(key, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __repr__(self) -> str:
        return f"SparseIntMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self._entries.items()})

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "SparseIntMatrix":
        """Move row i to row_perm[i] and column j to col_perm[j]."""
        return SparseIntMatrix(
            self.rows, self.cols,
            {(row_perm[i], col_perm[j]): v for (i, j), v in self._entries.items()},
        )

    def row_dicts(self) -> dict[int, dict[int, int]]:
        rows: dict[int, dict[int, int]] = {}
        for (i, j), v in self._entries.items():
            rows.setdefault(i, {})[j] = v
        return rows

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        right = other.row_dicts()
        acc: dict = {}
        for (i, k), v in self._entries.items():
            for j, w in right.get(k, {}).items():
                acc[(i, j)] = acc.get((i, j), 0) + v * w
        return SparseIntMatrix(self.rows, other.cols, acc)

    def is_zero(self) -> bool:
        return not self._entries

    # coordinate text interchange: header "rows cols nnz", then 1-based "i j v"
    def to_coo_text(self) -> str:
        lines = [f"{self.rows} {self.cols} {self.nnz}"]
        for (i, j) in sorted(self._entries):
            lines.append(f"{i + 1} {j + 1} {self._entries[(i, j)]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_coo_text(cls, text: str) -> "SparseIntMatrix":
        lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("%")]
        if not lines:
            raise ValueError("empty matrix file")
        rows, cols, nnz = (int(x) for x in lines[0])
        body = lines[1:]
        if len(body) != nnz:
            raise ValueError(f"header declares {nnz} entries, found {len(body)}")
        ent = {}
        for parts in body:
            i, j, v = int(parts[0]) - 1, int(parts[1]) - 1, int(parts[2])
            if (i, j) in ent:
                raise ValueError(f"duplicate entry ({i + 1}, {j + 1})")
            ent[(i, j)] = v
        return cls(rows, cols, ent)


class SmithForm(NamedTuple):
    diagonal: list[int]
    left: list[list[int]] | None = None
    right: list[list[int]] | None = None


def smith_normal_form(M: SparseIntMatrix, transforms: bool = False) -> SmithForm:
    """Smith normal form of ``M``.

    Returns the nonzero diagonal ``d1 | d2 | ... | dr`` (all positive, r is the
    rank).  With ``transforms=True`` the dense algorithm is used and unimodular
    ``left``/``right`` matrices with ``left @ M @ right == D`` are returned too.
    """
    if transforms:
        D, U, V = dense_smith(M.to_dense(), M.rows, M.cols, transforms=True)
        diag = [D[i][i] for i in range(min(M.rows, M.cols)) if D[i][i]]
        return SmithForm(diag, U, V)
    return SmithForm(_sparse_diagonal(M))


def _sparse_diagonal(M: SparseIntMatrix) -> list[int]:
    # work on the orientation with fewer rows; SNF is transpose invariant
    if M.rows > M.cols:
        M = M.transpose()
    rows = M.row_dicts()
    colsets: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            colsets.setdefault(c, set()).add(r)

    units = 0
    heap: list = []

    def push_row(r):
        row = rows[r]
        rl = len(row) - 1
        for c, v in row.items():
            if v == 1 or v == -1:
                heapq.heappush(heap, (rl * (len(colsets[c]) - 1), r, c))

    for r in rows:
        push_row(r)

    def eliminate(r, c, exact):
        """Clear column c using row r; returns rows whose column-c entry was not a multiple."""
        prow = rows[r]
        piv = prow[c]
        dirty = []
        for s in list(colsets[c]):
            if s == r:
                continue
            row = rows[s]
            q = row[c] // piv
            if q:
                for j, v in prow.items():
                    nv = row.get(j, 0) - q * v
                    if nv:
                        if j not in row:
                            colsets[j].add(s)
                        row[j] = nv
                    else:
                        row.pop(j, None)
                        colsets[j].discard(s)
                        if not colsets[j]:
                            del colsets[j]
            if c in row:
                dirty.append(s)
            if not row:
                del rows[s]
            elif exact:
                push_row(s)
        return dirty

    def drop_pivot(r, c):
        for j in rows.pop(r):
            colsets[j].discard(r)
            if not colsets[j]:
                del colsets[j]

    # phase 1: unit pivots, no remainders possible
    while heap:
        cost, r, c = heapq.heappop(heap)
        row = rows.get(r)
        if row is None or row.get(c) not in (1, -1):
            continue
        now = (len(row) - 1) * (len(colsets[c]) - 1)
        if now > cost:
            heapq.heappush(heap, (now, r, c))
            continue
        eliminate(r, c, exact=True)
        drop_pivot(r, c)
        units += 1

    # phase 2: general pivots on the residual torsion block
    others: list[int] = []
    while rows:
        best = None
        for r, row in rows.items():
            for c, v in row.items():
                key = (abs(v), (len(row) - 1) * (len(colsets[c]) - 1), r, c)
                if best is None or key < best:
                    best = key
        _, _, r, c = best
        while True:
            dirty = eliminate(r, c, exact=False)
            if dirty:
                # a remainder survived in column c; pivot on the smallest one
                r = min(dirty, key=lambda s: (abs(rows[s][c]), s))
                continue
            # column c is clear apart from r; clear row r by column operations
            prow = rows[r]
            piv = prow[c]
            rem = {}
            for j, v in list(prow.items()):
                if j == c:
                    continue
                nv = v - (v // piv) * piv
                if nv:
                    rem[j] = nv
            if not rem:
                others.append(abs(piv))
                drop_pivot(r, c)
                break
            for j in list(prow):
                if j != c and j not in rem:
                    del prow[j]
                    colsets[j].discard(r)
                    if not colsets[j]:
                        del colsets[j]
            prow.update(rem)
            # the smaller remainder in row r becomes the next pivot, same row
            c = min(rem, key=lambda j: (abs(rem[j]), j))
    return _finish_diagonal(units, others)


def _finish_diagonal(units: int, others: list[int]) -> list[int]:
    chain = divisibility_chain(others)
    ones = units + sum(1 for d in chain if d == 1)
    return [1] * ones + [d for d in chain if d != 1]


def dense_smith(A, m: int, n: int, transforms: bool = False):
    """Dense Smith normal form by row/column reduction.

    Returns ``(D, U, V)`` with ``U @ A @ V == D``; ``U`` and ``V`` are ``None``
    unless ``transforms`` is set.  ``A`` is not modified.
    """
    A = [list(row) for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transforms else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if transforms else None

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        if U is not None:
            U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        if V is not None:
            for row in V:
                row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        if U is not None:
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in A:
            row[dst] += q * row[src]
        if V is not None:
            for row in V:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
            small = None
            for i in range(t + 1, m):
                if A[i][t] and (small is None or abs(A[i][t]) < abs(A[small[0]][small[1]])):
                    small = (i, t)
            for j in range(t + 1, n):
                if A[t][j] and (small is None or abs(A[t][j]) < abs(A[small[0]][small[1]])):
                    small = (t, j)
            if small is not None:
                if small[1] == t:
                    swap_rows(t, small[0])
                else:
                    swap_cols(t, small[1])
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            if U is not None:
                U[t] = [-a for a in U[t]]
    return A, U, V


def _composition_is_zero(d_k: SparseIntMatrix, d_next: SparseIntMatrix) -> bool:
    return (d_k @ d_next).is_zero()


def homology_of_pair(d_k: SparseIntMatrix, d_next: SparseIntMatrix) -> AbelianGroupStructure:
    """Homology ``ker(d_k) / im(d_next)`` at the middle module of ``C_{k+1} -> C_k -> C_{k-1}``."""
    if d_k.cols != d_next.rows:
        raise ComplexError(f"middle ranks disagree: {d_k.cols} vs {d_next.rows}")
    if not _composition_is_zero(d_k, d_next):
        raise ComplexError("d_k @ d_{k+1} is not zero; the complex is built wrong")
    rank_k = len(smith_normal_form(d_k).diagonal) if d_k.nnz else 0
    diag_next = smith_normal_form(d_next).diagonal if d_next.nnz else []
    free = d_k.cols - rank_k - len(diag_next)
    return AbelianGroupStructure(free, tuple(d for d in diag_next if d > 1))
