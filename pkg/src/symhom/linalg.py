"""Exact sparse linear algebra over Z, Q, and prime fields.

The central object is :class:`SparseExactMatrix`, an immutable
coordinate-format matrix tagged with a coefficient ring.  On top of it sit

* :func:`smith_normal_form` -- integer Smith normal form with optional
  unimodular transform witnesses,
* :func:`rank` -- exact rank over the rationals (certified multi-modular,
  with exact fraction-free escalation) or over a prime field,
* :func:`solve_in_span` -- definitive linear solvability: integral solutions
  over Z via the Smith form, field solutions over Q and GF(p),
* :func:`nullspace` -- kernel bases over field coefficients.

All arithmetic is exact.  Large mod-p eliminations run on a hybrid path: a
Markowitz-style sparse phase with fill monitoring, then a blocked float64
elimination whose panel width keeps every intermediate value below 2**53,
hence exact in double precision for primes below 2**23.
"""
from __future__ import annotations

import hashlib
import heapq
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import gmpy2
import numpy as np

from .errors import DomainError, ValidationError
from .rings import GF, QQ, Ring, ZZ

__all__ = [
    "SparseExactMatrix",
    "SmithForm",
    "smith_normal_form",
    "rank",
    "solve_in_span",
    "nullspace",
]

# Primes for modular rank certification are drawn from this half-open range.
# The ceiling 2**23 guarantees that a 64-term dot product of reduced residues
# stays below 64 * (2**23)**2 = 2**52 < 2**53, so blocked float64 updates are
# exact.  The range contains ~250k primes; the number of "bad" primes (those
# hiding rank) is bounded by the divisor bound computed per matrix.
_PRIME_LOW = 1 << 22
_PRIME_HIGH = 1 << 23
_PANEL = 64
_GEMM_ROW_CHUNK = 2048
# Matrices at most this many cells skip the sparse phase entirely.
_DENSE_DIRECT_CELLS = 1 << 18
# Hard ceiling for densification (bytes of the float64 work array).
_DENSE_CAP_BYTES = 3_500_000_000
# Escalate to exact fraction-free elimination below this dimension.
_EXACT_ESCALATION_DIM = 400


# ---------------------------------------------------------------------------
# Matrix container


class SparseExactMatrix:
    """Immutable sparse matrix in coordinate format with exact entries.

    Entries are kept as a sorted tuple of ``(row, col, value)`` with no
    duplicates and no stored zeros.  Values are Python ints over Z and prime
    fields and :class:`fractions.Fraction` over Q.
    """

    __slots__ = ("_rows", "_cols", "_entries", "_ring")

    def __init__(self, rows: int, cols: int,
                 entries: Iterable[tuple] = (), ring: Ring = ZZ):
        if rows < 0 or cols < 0:
            raise DomainError(f"matrix dimensions must be non-negative, "
                              f"got {rows}x{cols}")
        cleaned = {}
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise DomainError(
                    f"entry position ({r},{c}) outside {rows}x{cols} matrix")
            if (r, c) in cleaned:
                raise ValidationError(
                    f"duplicate coordinate ({r},{c}) violates the "
                    f"no-duplicate-entries invariant")
            v = ring.coerce(v)
            if not ring.is_zero(v):
                cleaned[r, c] = v
        self._rows = int(rows)
        self._cols = int(cols)
        self._entries = tuple(sorted((r, c, v) for (r, c), v in cleaned.items()))
        self._ring = ring

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence], ring: Ring = ZZ
                   ) -> "SparseExactMatrix":
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        entries = []
        for r, row in enumerate(dense):
            if len(row) != cols:
                raise DomainError("ragged dense input: rows differ in length")
            entries.extend((r, c, v) for c, v in enumerate(row))
        return cls(rows, cols, entries, ring)

    @classmethod
    def identity(cls, n: int, ring: Ring = ZZ) -> "SparseExactMatrix":
        return cls(n, n, [(i, i, ring.one) for i in range(n)], ring)

    @classmethod
    def zero(cls, rows: int, cols: int, ring: Ring = ZZ) -> "SparseExactMatrix":
        return cls(rows, cols, (), ring)

    # -- basic accessors -----------------------------------------------------

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def ring(self) -> Ring:
        return self._ring

    @property
    def entries(self) -> tuple:
        return self._entries

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def row_dicts(self) -> list[dict]:
        """Fresh list of per-row ``{col: value}`` dicts (safe to mutate)."""
        out = [dict() for _ in range(self._rows)]
        for r, c, v in self._entries:
            out[r][c] = v
        return out

    def to_dense(self) -> list[list]:
        zero = self._ring.zero
        dense = [[zero] * self._cols for _ in range(self._rows)]
        for r, c, v in self._entries:
            dense[r][c] = v
        return dense

    def transpose(self) -> "SparseExactMatrix":
        return SparseExactMatrix(
            self._cols, self._rows,
            [(c, r, v) for r, c, v in self._entries], self._ring)

    def with_ring(self, ring: Ring) -> "SparseExactMatrix":
        """Coerce every entry into ``ring``, dropping entries that vanish."""
        return SparseExactMatrix(self._rows, self._cols, self._entries, ring)

    # -- arithmetic ----------------------------------------------------------

    def apply(self, vec: Sequence) -> list:
        """Matrix-vector product ``self @ vec``."""
        if len(vec) != self._cols:
            raise DomainError(
                f"dimension mismatch: {self._rows}x{self._cols} matrix "
                f"applied to length-{len(vec)} vector")
        ring = self._ring
        vec = [ring.coerce(x) for x in vec]
        out = [ring.zero] * self._rows
        for r, c, v in self._entries:
            out[r] = ring.add(out[r], ring.mul(v, vec[c]))
        return out

    def __matmul__(self, other: "SparseExactMatrix") -> "SparseExactMatrix":
        if not isinstance(other, SparseExactMatrix):
            return NotImplemented
        if self._cols != other._rows:
            raise DomainError(
                f"dimension mismatch: {self._rows}x{self._cols} @ "
                f"{other._rows}x{other._cols}")
        if self._ring != other._ring:
            raise DomainError("cannot multiply matrices over different rings")
        ring = self._ring
        other_rows = other.row_dicts()
        acc: dict[tuple[int, int], object] = {}
        for r, k, v in self._entries:
            for c, w in other_rows[k].items():
                key = (r, c)
                acc[key] = ring.add(acc.get(key, ring.zero), ring.mul(v, w))
        return SparseExactMatrix(
            self._rows, other._cols,
            [(r, c, v) for (r, c), v in acc.items()], ring)

    def scale(self, scalar) -> "SparseExactMatrix":
        ring = self._ring
        s = ring.coerce(scalar)
        return SparseExactMatrix(
            self._rows, self._cols,
            [(r, c, ring.mul(s, v)) for r, c, v in self._entries], ring)

    def add(self, other: "SparseExactMatrix") -> "SparseExactMatrix":
        if (self._rows, self._cols) != (other._rows, other._cols):
            raise DomainError("dimension mismatch in matrix addition")
        if self._ring != other._ring:
            raise DomainError("cannot add matrices over different rings")
        ring = self._ring
        acc = {(r, c): v for r, c, v in self._entries}
        for r, c, v in other._entries:
            acc[r, c] = ring.add(acc.get((r, c), ring.zero), v)
        return SparseExactMatrix(
            self._rows, self._cols,
            [(r, c, v) for (r, c), v in acc.items()], ring)

    # -- interchange format --------------------------------------------------

    def to_text(self) -> str:
        """Coordinate text format: ``rows cols nnz`` header, 1-indexed lines."""
        lines = [f"{self._rows} {self._cols} {len(self._entries)}"]
        lines.extend(f"{r + 1} {c + 1} {v}" for r, c, v in self._entries)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, ring: Ring = ZZ) -> "SparseExactMatrix":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValidationError("empty matrix text: missing header line")
        head = lines[0].split()
        if len(head) != 3:
            raise ValidationError(
                f"malformed matrix header {lines[0]!r}: expected "
                f"'rows cols nnz'")
        try:
            rows, cols, nnz = (int(x) for x in head)
        except ValueError:
            raise ValidationError(
                f"malformed matrix header {lines[0]!r}: non-integer field"
            ) from None
        if len(lines) - 1 != nnz:
            raise ValidationError(
                f"matrix text declares {nnz} entries but contains "
                f"{len(lines) - 1}")
        entries = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 3:
                raise ValidationError(
                    f"malformed matrix entry line {ln!r}: expected 'r c v'")
            try:
                r, c = int(parts[0]), int(parts[1])
                v = Fraction(parts[2]) if ring.kind == "Q" else int(parts[2])
            except ValueError:
                raise ValidationError(
                    f"malformed matrix entry line {ln!r}") from None
            if r < 1 or c < 1:
                raise ValidationError(
                    f"matrix entry line {ln!r} uses 0- or negative indices; "
                    f"the format is 1-indexed")
            entries.append((r - 1, c - 1, v))
        return cls(rows, cols, entries, ring)

    # -- dunder machinery ----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, SparseExactMatrix):
            return NotImplemented
        return (self._rows, self._cols, self._ring, self._entries) == \
            (other._rows, other._cols, other._ring, other._entries)

    def __hash__(self):
        return hash((self._rows, self._cols, self._ring, self._entries))

    def __repr__(self):
        return (f"SparseExactMatrix({self._rows}x{self._cols}, "
                f"nnz={len(self._entries)}, ring={self._ring})")


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    """Diagonal of the Smith normal form plus optional transform witnesses.

    ``diagonal`` lists the nonzero invariant factors d_1 | d_2 | ... only, so
    its length equals the rank.  When witnesses were requested, ``transforms``
    holds unimodular ``(U, V)`` with ``U @ M @ V`` equal to the diagonal
    matrix padded with zeros.
    """

    diagonal: tuple[int, ...]
    transforms: Optional[tuple[SparseExactMatrix, SparseExactMatrix]] = None

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def is_torsion_free(self) -> bool:
        """True when the cokernel contributes no finite cyclic summands."""
        return all(d == 1 for d in self.diagonal)


class _SNFWork:
    """Mutable elimination state with mirrored transform bookkeeping.

    The matrix lives as per-row dicts plus a column index.  Every elementary
    operation is applied simultaneously to the matrix and (when witnesses are
    on) to U (row ops) or to V stored transposed (column ops), keeping
    ``U @ M @ V`` invariant.
    """

    def __init__(self, matrix: SparseExactMatrix, witnesses: bool):
        self.nrows = matrix.rows
        self.ncols = matrix.cols
        self.rows: list[dict[int, int]] = matrix.row_dicts()
        self.colrows: list[set[int]] = [set() for _ in range(self.ncols)]
        for r, row in enumerate(self.rows):
            for c in row:
                self.colrows[c].add(r)
        if witnesses:
            self.U: Optional[list[dict[int, int]]] = \
                [{i: 1} for i in range(self.nrows)]
            self.VT: Optional[list[dict[int, int]]] = \
                [{i: 1} for i in range(self.ncols)]
        else:
            self.U = None
            self.VT = None

    # -- entry plumbing ------------------------------------------------------

    def _add_entry(self, r: int, c: int, delta: int) -> None:
        row = self.rows[r]
        new = row.get(c, 0) + delta
        if new:
            if c not in row:
                self.colrows[c].add(r)
            row[c] = new
        elif c in row:
            del row[c]
            self.colrows[c].discard(r)

    @staticmethod
    def _dict_axpy(dst: dict, src: dict, k: int) -> None:
        for key, v in src.items():
            new = dst.get(key, 0) + k * v
            if new:
                dst[key] = new
            else:
                dst.pop(key, None)

    # -- row operations ------------------------------------------------------

    def row_axpy(self, src: int, dst: int, k: int) -> None:
        """row[dst] += k * row[src]"""
        if k == 0:
            return
        for c, v in list(self.rows[src].items()):
            self._add_entry(dst, c, k * v)
        if self.U is not None:
            self._dict_axpy(self.U[dst], self.U[src], k)

    def row_scale_neg(self, r: int) -> None:
        """row[r] *= -1 (the only unit scaling used)."""
        row = self.rows[r]
        for c in row:
            row[c] = -row[c]
        if self.U is not None:
            u = self.U[r]
            for c in u:
                u[c] = -u[c]

    def row_swap(self, r1: int, r2: int) -> None:
        if r1 == r2:
            return
        for c in set(self.rows[r1]) | set(self.rows[r2]):
            if r1 in self.colrows[c] and r2 not in self.colrows[c]:
                self.colrows[c].discard(r1)
                self.colrows[c].add(r2)
            elif r2 in self.colrows[c] and r1 not in self.colrows[c]:
                self.colrows[c].discard(r2)
                self.colrows[c].add(r1)
        self.rows[r1], self.rows[r2] = self.rows[r2], self.rows[r1]
        if self.U is not None:
            self.U[r1], self.U[r2] = self.U[r2], self.U[r1]

    def two_row(self, r1: int, r2: int,
                a11: int, a12: int, a21: int, a22: int) -> None:
        """(row r1, row r2) <- (a11 r1 + a12 r2, a21 r1 + a22 r2).

        Caller guarantees the 2x2 coefficient matrix is unimodular.
        """
        old1, old2 = self.rows[r1], self.rows[r2]
        new1: dict[int, int] = {}
        new2: dict[int, int] = {}
        for c in set(old1) | set(old2):
            v1 = old1.get(c, 0)
            v2 = old2.get(c, 0)
            w1 = a11 * v1 + a12 * v2
            w2 = a21 * v1 + a22 * v2
            members = self.colrows[c]
            if w1:
                new1[c] = w1
                members.add(r1)
            else:
                members.discard(r1)
            if w2:
                new2[c] = w2
                members.add(r2)
            else:
                members.discard(r2)
        self.rows[r1], self.rows[r2] = new1, new2
        if self.U is not None:
            u1, u2 = self.U[r1], self.U[r2]
            m1: dict[int, int] = {}
            m2: dict[int, int] = {}
            for c in set(u1) | set(u2):
                v1 = u1.get(c, 0)
                v2 = u2.get(c, 0)
                w1 = a11 * v1 + a12 * v2
                w2 = a21 * v1 + a22 * v2
                if w1:
                    m1[c] = w1
                if w2:
                    m2[c] = w2
            self.U[r1], self.U[r2] = m1, m2

    # -- column operations ---------------------------------------------------

    def col_axpy(self, src: int, dst: int, k: int) -> None:
        """col[dst] += k * col[src]"""
        if k == 0:
            return
        for r in list(self.colrows[src]):
            self._add_entry(r, dst, k * self.rows[r][src])
        if self.VT is not None:
            self._dict_axpy(self.VT[dst], self.VT[src], k)

    def col_swap(self, c1: int, c2: int) -> None:
        if c1 == c2:
            return
        rows1 = list(self.colrows[c1])
        rows2 = list(self.colrows[c2])
        vals1 = {r: self.rows[r][c1] for r in rows1}
        vals2 = {r: self.rows[r][c2] for r in rows2}
        for r in rows1:
            del self.rows[r][c1]
        for r in rows2:
            del self.rows[r][c2]
        self.colrows[c1] = set()
        self.colrows[c2] = set()
        for r, v in vals2.items():
            self.rows[r][c1] = v
            self.colrows[c1].add(r)
        for r, v in vals1.items():
            self.rows[r][c2] = v
            self.colrows[c2].add(r)
        if self.VT is not None:
            self.VT[c1], self.VT[c2] = self.VT[c2], self.VT[c1]

    def two_col(self, c1: int, c2: int,
                a11: int, a12: int, a21: int, a22: int) -> None:
        """(col c1, col c2) <- (a11 c1 + a12 c2, a21 c1 + a22 c2)."""
        touched = set(self.colrows[c1]) | set(self.colrows[c2])
        for r in touched:
            row = self.rows[r]
            v1 = row.get(c1, 0)
            v2 = row.get(c2, 0)
            w1 = a11 * v1 + a12 * v2
            w2 = a21 * v1 + a22 * v2
            if w1:
                row[c1] = w1
                self.colrows[c1].add(r)
            else:
                row.pop(c1, None)
                self.colrows[c1].discard(r)
            if w2:
                row[c2] = w2
                self.colrows[c2].add(r)
            else:
                row.pop(c2, None)
                self.colrows[c2].discard(r)
        if self.VT is not None:
            t1, t2 = self.VT[c1], self.VT[c2]
            m1: dict[int, int] = {}
            m2: dict[int, int] = {}
            for c in set(t1) | set(t2):
                v1 = t1.get(c, 0)
                v2 = t2.get(c, 0)
                w1 = a11 * v1 + a12 * v2
                w2 = a21 * v1 + a22 * v2
                if w1:
                    m1[c] = w1
                if w2:
                    m2[c] = w2
            self.VT[c1], self.VT[c2] = m1, m2

    # -- pivoting ------------------------------------------------------------

    def select_pivot(self, active_rows: set, active_cols: set):
        """Markowitz-style pivot: unit entries first, then minimal fill cost,
        then smallest magnitude; deterministic tie-break by position."""
        best = None
        best_key = None
        for c in active_cols:
            members = self.colrows[c]
            if not members:
                continue
            cc = len(members)
            for r in members:
                v = self.rows[r][c]
                unit = 0 if v in (1, -1) else 1
                key = (unit, (len(self.rows[r]) - 1) * (cc - 1), abs(v), r, c)
                if best_key is None or key < best_key:
                    best_key = key
                    best = (r, c)
                    if key[0] == 0 and key[1] == 0:
                        return best
        return best

    def isolate(self, r: int, c: int) -> None:
        """Clear the pivot row and column, leaving a single entry at (r, c)."""
        while True:
            bezout_used = False
            a = self.rows[r][c]
            for i in list(self.colrows[c]):
                if i == r:
                    continue
                b = self.rows[i][c]
                if b % a == 0:
                    self.row_axpy(r, i, -(b // a))
                else:
                    g, x, y = gmpy2.gcdext(gmpy2.mpz(a), gmpy2.mpz(b))
                    g, x, y = int(g), int(x), int(y)
                    self.two_row(r, i, x, y, -(b // g), a // g)
                    a = g
                    bezout_used = True
            for j in list(self.rows[r]):
                if j == c:
                    continue
                b = self.rows[r][j]
                if b % a == 0:
                    self.col_axpy(c, j, -(b // a))
                else:
                    g, x, y = gmpy2.gcdext(gmpy2.mpz(a), gmpy2.mpz(b))
                    g, x, y = int(g), int(x), int(y)
                    self.two_col(c, j, x, y, -(b // g), a // g)
                    a = g
                    bezout_used = True
            if not bezout_used and len(self.colrows[c]) == 1 \
                    and len(self.rows[r]) == 1:
                return


def smith_normal_form(matrix: SparseExactMatrix, *,
                      witnesses: bool = False) -> SmithForm:
    """Smith normal form over Z with optional unimodular witnesses.

    Returns the nonzero invariant factors d_1 | d_2 | ... (their count is the
    rank).  With ``witnesses=True`` the result carries unimodular ``(U, V)``
    satisfying ``U @ M @ V = diag(d_1, ..., d_r)`` padded with zeros.

    >>> M = SparseExactMatrix.from_dense([[2, 0], [0, 3]])
    >>> smith_normal_form(M).diagonal
    (1, 6)
    """
    if matrix.ring != ZZ:
        raise DomainError(
            f"Smith normal form requires integer entries, got ring "
            f"{matrix.ring}")
    work = _SNFWork(matrix, witnesses)
    active_rows = set(range(matrix.rows))
    active_cols = set(range(matrix.cols))
    pivots: list[list[int]] = []
    while True:
        sel = work.select_pivot(active_rows, active_cols)
        if sel is None:
            break
        r, c = sel
        work.isolate(r, c)
        if work.rows[r][c] < 0:
            work.row_scale_neg(r)
        pivots.append([r, c])
        active_rows.discard(r)
        active_cols.discard(c)

    _fix_divisibility(work, pivots)

    if witnesses:
        # Permute the isolated pivots onto the leading diagonal positions.
        for k, (r, c) in enumerate(pivots):
            if r != k:
                work.row_swap(r, k)
                for other in pivots[k + 1:]:
                    if other[0] == k:
                        other[0] = r
                pivots[k][0] = k
            if c != k:
                work.col_swap(c, k)
                for other in pivots[k + 1:]:
                    if other[1] == k:
                        other[1] = c
                pivots[k][1] = k
        diagonal = tuple(work.rows[k][k] for k in range(len(pivots)))
        U = SparseExactMatrix(
            matrix.rows, matrix.rows,
            [(r, c, v) for r, row in enumerate(work.U) for c, v in row.items()])
        V = SparseExactMatrix(
            matrix.cols, matrix.cols,
            [(r, c, v) for c, tcol in enumerate(work.VT)
             for r, v in tcol.items()])
        return SmithForm(diagonal=diagonal, transforms=(U, V))

    diagonal = tuple(work.rows[r][c] for r, c in pivots)
    return SmithForm(diagonal=diagonal)


def _fix_divisibility(work: _SNFWork, pivots: list[list[int]]) -> None:
    """Repair the divisibility chain d_i | d_j (i < j) among isolated pivots.

    Uses the classical identity diag(a, b) ~ diag(gcd, lcm) realised by
    elementary operations so transform witnesses stay valid.
    """
    n = len(pivots)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            ri, ci = pivots[i]
            a = work.rows[ri][ci]
            if a == 1:
                continue
            for j in range(i + 1, n):
                rj, cj = pivots[j]
                b = work.rows[rj][cj]
                if b % a == 0:
                    continue
                changed = True
                work.col_axpy(cj, ci, 1)
                g, x, y = gmpy2.gcdext(gmpy2.mpz(a), gmpy2.mpz(b))
                g, x, y = int(g), int(x), int(y)
                work.two_row(ri, rj, x, y, -(b // g), a // g)
                work.col_axpy(ci, cj, -((y * b) // g))
                a = work.rows[ri][ci]
                if a == 1:
                    break


# ---------------------------------------------------------------------------
# Rank


def rank(matrix: SparseExactMatrix, ring: Optional[Ring] = None) -> int:
    """Exact rank of ``matrix`` over ``ring`` (default: the matrix's ring).

    Over Z and Q this is the rank over the rationals, computed by certified
    multi-modular elimination: ranks must agree at two distinct random large
    primes (with the number of rank-hiding primes bounded via a divisor
    bound); persistent disagreement escalates to exact fraction-free
    elimination.  Over GF(p) the elimination happens directly mod p.
    """
    ring = ring if ring is not None else matrix.ring
    if matrix.ring.kind == "GF" and ring != matrix.ring:
        raise DomainError(
            f"cannot compute rank over {ring} of a matrix with entries in "
            f"{matrix.ring}")
    if matrix.rows == 0 or matrix.cols == 0 or matrix.nnz == 0:
        return 0
    if ring.kind == "GF":
        rowdicts = _rows_mod_p(matrix, ring.p)
        return _rank_mod_p(rowdicts, matrix.rows, matrix.cols, ring.p)
    rowdicts = _integer_rows(matrix)
    return _certified_rank_over_q(rowdicts, matrix.rows, matrix.cols,
                                  _content_seed(matrix))


def _integer_rows(matrix: SparseExactMatrix) -> list[dict]:
    """Row dicts with integer entries; rational rows are scaled by the LCM of
    their denominators (a unit row operation, so rank is unchanged)."""
    rowdicts = matrix.row_dicts()
    if matrix.ring.kind != "Q":
        return rowdicts
    out = []
    for row in rowdicts:
        if not row:
            out.append({})
            continue
        scale = 1
        for v in row.values():
            scale = scale * v.denominator // math.gcd(scale, v.denominator)
        out.append({c: int(v * scale) for c, v in row.items()})
    return out


def _rows_mod_p(matrix: SparseExactMatrix, p: int) -> list[dict]:
    rowdicts: list[dict] = [dict() for _ in range(matrix.rows)]
    for r, c, v in matrix.entries:
        if isinstance(v, Fraction):
            if v.denominator % p == 0:
                raise DomainError(
                    f"entry {v} at ({r},{c}) has denominator divisible by "
                    f"{p}; cannot reduce mod {p}")
            res = (v.numerator * pow(v.denominator, -1, p)) % p
        else:
            res = v % p
        if res:
            rowdicts[r][c] = res
    return rowdicts


def _content_seed(matrix: SparseExactMatrix) -> int:
    h = hashlib.blake2b(digest_size=8)
    h.update(f"{matrix.rows}x{matrix.cols}".encode())
    for r, c, v in matrix.entries:
        h.update(f"{r},{c},{v};".encode())
    return int.from_bytes(h.digest(), "big")


def _divisor_bound_bits(rowdicts: list[dict], ncols: int) -> float:
    """Upper bound on log2 of the product of all invariant factors.

    Hadamard: any nonzero minor is at most the product of the Euclidean norms
    of the rows (or columns) it uses, so the product of invariant factors --
    which divides some nonzero maximal minor -- is bounded by the smaller of
    the two full products.
    """
    def bits_of(norms_sq: Iterable[int]) -> float:
        return sum(max(0.0, n.bit_length() / 2.0) for n in norms_sq if n)

    row_norms = [sum(v * v for v in row.values()) for row in rowdicts]
    col_norms: dict[int, int] = {}
    for row in rowdicts:
        for c, v in row.items():
            col_norms[c] = col_norms.get(c, 0) + v * v
    return min(bits_of(row_norms), bits_of(col_norms.values()))


def _draw_prime(rng: random.Random, used: set) -> int:
    while True:
        p = int(gmpy2.next_prime(rng.randrange(_PRIME_LOW, _PRIME_HIGH)))
        if p < _PRIME_HIGH and p not in used:
            used.add(p)
            return p


def _certified_rank_over_q(rowdicts: list[dict], nrows: int, ncols: int,
                           seed: int) -> int:
    if min(nrows, ncols) <= 4 or nrows * ncols <= 2500:
        return _bareiss_rank(rowdicts, nrows, ncols)
    rng = random.Random(seed)
    used: set[int] = set()
    witnesses: dict[int, int] = {}
    for attempt in range(12):
        p = _draw_prime(rng, used)
        r = _rank_mod_p(rowdicts, nrows, ncols, p)
        witnesses[r] = witnesses.get(r, 0) + 1
        best = max(witnesses)
        if witnesses[best] >= 2:
            # A mod-p rank never exceeds the rational rank, and two distinct
            # primes both hiding rank must both divide the invariant-factor
            # product, whose size is controlled by the divisor bound.
            return best
        if len(witnesses) > 1 and min(nrows, ncols) <= _EXACT_ESCALATION_DIM:
            return _bareiss_rank(rowdicts, nrows, ncols)
    raise RuntimeError(
        "rank certification failed: no two of 12 random primes agreed")


def _bareiss_rank(rowdicts: list[dict], nrows: int, ncols: int) -> int:
    """Exact fraction-free elimination (one-step Bareiss with pivoting)."""
    mpz = gmpy2.mpz
    dense = [[mpz(0)] * ncols for _ in range(nrows)]
    for i, row in enumerate(rowdicts):
        for c, v in row.items():
            dense[i][c] = mpz(v)
    prev = mpz(1)
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if dense[i][c]:
                piv = i
                break
        if piv is None:
            continue
        dense[r], dense[piv] = dense[piv], dense[r]
        prow = dense[r]
        pval = prow[c]
        # Every row below is updated to the bordered-minor form, including
        # rows with a zero pivot-column entry: the rescaling by pval/prev is
        # what keeps later divisions exact (Sylvester's identity).
        for i in range(r + 1, nrows):
            irow = dense[i]
            ival = irow[c]
            if ival:
                for j in range(c + 1, ncols):
                    irow[j] = (irow[j] * pval - ival * prow[j]) // prev
                irow[c] = mpz(0)
            else:
                for j in range(c + 1, ncols):
                    irow[j] = (irow[j] * pval) // prev
        prev = pval
        r += 1
        if r == nrows:
            break
    return r


# -- mod-p elimination ------------------------------------------------------


def _rank_mod_p(rowdicts: list[dict], nrows: int, ncols: int, p: int) -> int:
    """Rank mod p via the hybrid sparse/dense elimination."""
    reduced = []
    nnz = 0
    for row in rowdicts:
        nr = {}
        for c, v in row.items():
            res = v % p
            if res:
                nr[c] = res
        nnz += len(nr)
        reduced.append(nr)
    if nnz == 0:
        return 0
    if p >= _PRIME_HIGH:
        got, _ = _sparse_rank_mod_p(reduced, ncols, p, None)
        return got
    cells = nrows * ncols
    if cells <= _DENSE_DIRECT_CELLS:
        return _dense_rank_mod_p(_densify(reduced, None, ncols, p), p)
    budget: Optional[int] = max(200_000, 4 * nnz)
    if cells * 8 > _DENSE_CAP_BYTES:
        budget = None
    got, remainder = _sparse_rank_mod_p(reduced, ncols, p, budget)
    if remainder is None:
        return got
    cols = sorted(set().union(*remainder))
    if len(remainder) * len(cols) * 8 > _DENSE_CAP_BYTES:
        extra, _ = _sparse_rank_mod_p(remainder, ncols, p, None)
        return got + extra
    colmap = {c: i for i, c in enumerate(cols)}
    return got + _dense_rank_mod_p(
        _densify(remainder, colmap, len(cols), p), p)


def _densify(rowdicts: list[dict], colmap: Optional[dict], ncols: int,
             p: int) -> np.ndarray:
    arr = np.zeros((len(rowdicts), ncols), dtype=np.float64)
    if colmap is None:
        for i, row in enumerate(rowdicts):
            for c, v in row.items():
                arr[i, c] = v % p
    else:
        for i, row in enumerate(rowdicts):
            for c, v in row.items():
                arr[i, colmap[c]] = v % p
    return arr


def _sparse_rank_mod_p(rowdicts: list[dict], ncols: int, p: int,
                       budget: Optional[int]):
    """Markowitz-style sparse elimination mod p.

    Returns ``(pivots_eliminated, remainder)`` where ``remainder`` is None if
    elimination ran to completion, else the list of still-active row dicts
    (the Schur complement) after the fill budget was exceeded.
    """
    colrows: dict[int, set] = {}
    for i, row in enumerate(rowdicts):
        for c in row:
            colrows.setdefault(c, set()).add(i)
    nnz = sum(len(row) for row in rowdicts)
    alive_rows = sum(1 for row in rowdicts if row)
    heap = [(len(rs), c) for c, rs in colrows.items()]
    heapq.heapify(heap)
    got = 0
    while heap:
        if budget is not None:
            dense_est = alive_rows * max(1, len(colrows))
            if nnz > budget or (nnz > 32768 and nnz * 12 > dense_est):
                return got, [row for row in rowdicts if row]
        cnt, c = heapq.heappop(heap)
        members = colrows.get(c)
        if not members:
            continue
        if len(members) != cnt:
            heapq.heappush(heap, (len(members), c))
            continue
        r = min(members, key=lambda i: (len(rowdicts[i]), i))
        prow = rowdicts[r]
        a = prow[c]
        ainv = pow(a, p - 2, p)
        touched = set(prow)
        for i in list(members):
            if i == r:
                continue
            row = rowdicts[i]
            f = (row[c] * ainv) % p
            for j, v in prow.items():
                new = (row.get(j, 0) - f * v) % p
                if new:
                    if j not in row:
                        colrows.setdefault(j, set()).add(i)
                        nnz += 1
                    row[j] = new
                elif j in row:
                    del row[j]
                    colrows[j].discard(i)
                    nnz -= 1
            if not row:
                alive_rows -= 1
        for j in prow:
            colrows[j].discard(r)
        nnz -= len(prow)
        alive_rows -= 1
        rowdicts[r] = {}
        got += 1
        for j in touched:
            members_j = colrows.get(j)
            if members_j:
                heapq.heappush(heap, (len(members_j), j))
            elif members_j is not None:
                del colrows[j]
    return got, None


def _dense_rank_mod_p(a: np.ndarray, p: int, block: int = _PANEL) -> int:
    """In-place blocked Gaussian elimination mod p on a float64 array.

    Entries must be reduced residues in [0, p) with p < 2**23; every
    intermediate value then stays below 2**53 and float64 arithmetic is
    exact.  Only the rank is produced; the array is destroyed.
    """
    n, m = a.shape
    if n == 0 or m == 0:
        return 0
    r = 0
    c = 0
    lbuf = np.empty((n, block), dtype=np.float64)
    while r < n and c < m:
        r0 = r
        height = n - r0
        piv_cols: list[int] = []
        c_start = c
        while c < m and len(piv_cols) < block:
            k = len(piv_cols)
            # Scalar forward-substitution for the k panel pivot rows, then a
            # single mat-vec update for everything below the panel.
            svals = np.empty(k, dtype=np.float64)
            for j in range(k):
                s = a[r0 + j, c]
                for l in range(j):
                    s -= lbuf[j, l] * svals[l]
                svals[j] = s % p
            if k:
                below = a[r0 + k:, c]
                below -= lbuf[k:height, :k] @ svals
                np.mod(below, p, out=below)
            col_tail = a[r0 + k:, c]
            nz = np.nonzero(col_tail)[0]
            if nz.size == 0:
                c += 1
                continue
            i = r0 + k + int(nz[0])
            if i != r0 + k:
                a[[r0 + k, i], :] = a[[i, r0 + k], :]
                lbuf[[k, i - r0], :k] = lbuf[[i - r0, k], :k]
            pivinv = pow(int(a[r0 + k, c]), p - 2, p)
            mults = a[r0 + k + 1:, c]
            mults *= pivinv
            np.mod(mults, p, out=mults)
            # Record the updated column in the contiguous panel buffer; the
            # rows at and above the pivot are never read back.
            lbuf[:k + 1, k] = 0.0
            lbuf[k + 1:height, k] = mults
            piv_cols.append(c)
            c += 1
            if r0 + k + 1 == n:
                break
        k = len(piv_cols)
        if k == 0:
            break
        r = r0 + k
        if c < m:
            # Triangular update of the panel pivot rows' trailing parts.
            for j in range(1, k):
                acc = a[r0 + j, c:]
                for l in range(j):
                    s = lbuf[j, l]
                    if s:
                        acc -= s * a[r0 + l, c:]
                np.mod(acc, p, out=acc)
            if r < n:
                lm = lbuf[k:height, :k]
                u = a[r0:r, c:]
                trail = a[r:, c:]
                for s0 in range(0, trail.shape[0], _GEMM_ROW_CHUNK):
                    blockv = trail[s0:s0 + _GEMM_ROW_CHUNK]
                    blockv -= lm[s0:s0 + _GEMM_ROW_CHUNK] @ u
                    np.mod(blockv, p, out=blockv)
    return r


# ---------------------------------------------------------------------------
# Solving


def solve_in_span(matrix: SparseExactMatrix, b: Sequence):
    """Solve ``matrix @ x = b`` over the matrix's ring.

    Returns a coefficient list when solvable and None when ``b`` is
    definitively not in the span: over Z an integral solution is produced via
    Smith-form witnesses, over Q and GF(p) by exact field elimination.

    >>> M = SparseExactMatrix.from_dense([[2]])
    >>> solve_in_span(M, [4])
    [2]
    >>> solve_in_span(M, [3]) is None
    True
    """
    if len(b) != matrix.rows:
        raise DomainError(
            f"dimension mismatch: matrix has {matrix.rows} rows but the "
            f"target vector has length {len(b)}")
    ring = matrix.ring
    if ring.kind != "Z":
        return _solve_field(matrix, b, ring)
    b = [int(x) for x in b]
    smith = smith_normal_form(matrix, witnesses=True)
    U, V = smith.transforms
    y = U.apply(b)
    diag = smith.diagonal
    xprime = [0] * matrix.cols
    for k, d in enumerate(diag):
        if y[k] % d != 0:
            return None
        xprime[k] = y[k] // d
    for k in range(len(diag), matrix.rows):
        if y[k] != 0:
            return None
    x = V.apply(xprime)
    assert matrix.apply(x) == b
    return x


def _field_row_reduce(ring: Ring, dense: list[list], ncols: int) -> list[int]:
    """In-place reduced row echelon form; returns the pivot column list."""
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(dense)):
            if not ring.is_zero(dense[i][c]):
                piv = i
                break
        if piv is None:
            continue
        dense[r], dense[piv] = dense[piv], dense[r]
        inv = ring.inv(dense[r][c])
        dense[r] = [ring.mul(inv, x) for x in dense[r]]
        prow = dense[r]
        for i in range(len(dense)):
            if i != r and not ring.is_zero(dense[i][c]):
                f = dense[i][c]
                dense[i] = [ring.sub(x, ring.mul(f, y))
                            for x, y in zip(dense[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(dense):
            break
    return pivots


def _solve_field(matrix: SparseExactMatrix, b: Sequence, ring: Ring):
    aug = [[ring.coerce(x) for x in row] for row in matrix.to_dense()]
    b = [ring.coerce(x) for x in b]
    for row, bv in zip(aug, b):
        row.append(bv)
    pivots = _field_row_reduce(ring, aug, matrix.cols + 1)
    if pivots and pivots[-1] == matrix.cols:
        return None
    x = [ring.zero] * matrix.cols
    for i, c in enumerate(pivots):
        x[c] = aug[i][matrix.cols]
    return x


def _solve_many_field(matrix: SparseExactMatrix, rhs_rows: list, ring: Ring):
    """Solve ``matrix @ X = B`` over a field for several right-hand sides.

    ``rhs_rows`` holds B as rows (length = matrix.rows, each of width nrhs).
    Returns ``(X_rows, None)`` with X given as rows of width nrhs, or
    ``(None, c)`` where ``c`` is the first inconsistent right-hand-side
    column.  Free variables are set to zero.
    """
    ncols = matrix.cols
    nrhs = len(rhs_rows[0]) if rhs_rows else 0
    aug = [[ring.coerce(v) for v in row] for row in matrix.to_dense()]
    for row, extra in zip(aug, rhs_rows):
        row.extend(ring.coerce(x) for x in extra)
    pivots = _field_row_reduce(ring, aug, ncols + nrhs)
    for pc in pivots:
        if pc >= ncols:
            return None, pc - ncols
    x = [[ring.zero] * nrhs for _ in range(ncols)]
    for i, pc in enumerate(pivots):
        x[pc] = aug[i][ncols:]
    return x, None


def nullspace(matrix: SparseExactMatrix, ring: Optional[Ring] = None
              ) -> list[tuple]:
    """Basis of the right kernel over field coefficients.

    Integer matrices are interpreted over Q.  Each basis vector has a 1 in
    its defining free coordinate, making the basis canonical for the column
    order.
    """
    ring = ring if ring is not None else matrix.ring
    if ring.kind == "Z":
        ring = QQ
    if not ring.is_field:
        raise DomainError(f"nullspace requires field coefficients, got {ring}")
    dense = [[ring.coerce(v) for v in row] for row in matrix.to_dense()]
    pivots = _field_row_reduce(ring, dense, matrix.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(matrix.cols):
        if free in pivot_set:
            continue
        vec = [ring.zero] * matrix.cols
        vec[free] = ring.one
        for i, c in enumerate(pivots):
            if i < len(dense):
                vec[c] = ring.neg(dense[i][free])
        basis.append(tuple(vec))
    return basis
