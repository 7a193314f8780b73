"""Homology of bounded chain complexes of free modules.

A complex is described by per-degree ranks and sparse boundary matrices; the
composite of consecutive boundaries is verified to vanish on construction.
Betti numbers come from exact ranks over the coefficient field (the fraction
field Q when the ring is Z); torsion comes from the Smith normal form of the
incoming boundary.  Partial complexes are supported: asking for homology in a
degree whose neighbouring boundary was never supplied raises a truncation
error rather than silently returning a wrong answer.
"""
from __future__ import annotations

import hashlib
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DomainError, TruncationError, ValidationError
from .linalg import (
    SparseExactMatrix,
    nullspace,
    rank,
    smith_normal_form,
)
from .rings import QQ, Ring, ZZ

__all__ = [
    "ChainComplexDesc",
    "HomologyResult",
    "homology",
    "poincare_polynomial",
    "format_poincare",
    "induced_map_on_homology",
]


@dataclass(frozen=True)
class HomologyResult:
    """Homology in one degree: Betti number, torsion, optional cycle basis."""

    degree: int
    betti: int
    torsion: tuple[int, ...] = ()
    certified_torsion_free: bool = False
    basis: Optional[tuple[tuple, ...]] = None

    def to_json_dict(self) -> dict:
        return {
            "degree": self.degree,
            "betti": self.betti,
            "torsion": list(self.torsion),
            "certified_torsion_free": self.certified_torsion_free,
        }


class ChainComplexDesc:
    """Bounded complex ... -> C_{i+1} -> C_i -> ... -> C_0 of free modules.

    ``ranks`` maps degree to rank (a sequence is read as degrees 0, 1, ...).
    ``boundaries[i]`` is the matrix of d_i: C_i -> C_{i-1} in fixed bases.
    ``truncated_above=True`` records that the complex continues past the top
    stored degree but was not built there; top-degree homology then raises
    :class:`TruncationError` instead of pretending d_{top+1} = 0.
    """

    def __init__(self, ring: Ring, ranks, boundaries: dict,
                 *, truncated_above: bool = False):
        if not isinstance(ranks, dict):
            ranks = {i: r for i, r in enumerate(ranks)}
        if not ranks:
            raise DomainError("a chain complex needs at least one degree")
        for i, r in ranks.items():
            if r < 0:
                raise DomainError(f"rank at degree {i} is negative")
        self.ring = ring
        self.ranks = dict(sorted(ranks.items()))
        self.bottom = min(ranks)
        self.top = max(ranks)
        if set(ranks) != set(range(self.bottom, self.top + 1)):
            raise DomainError("complex degrees must form a contiguous range")
        self.boundaries = dict(boundaries)
        self.truncated_above = truncated_above
        self._check_boundaries()
        self._cache: dict = {}
        self._lock = threading.Lock()
        self._content_hash: Optional[str] = None

    def _check_boundaries(self) -> None:
        for i, mat in self.boundaries.items():
            if i <= self.bottom or i > self.top:
                raise DomainError(
                    f"boundary at degree {i} outside complex degrees "
                    f"[{self.bottom}, {self.top}]")
            if mat.ring != self.ring:
                raise ValidationError(
                    f"boundary at degree {i} is over {mat.ring}, complex "
                    f"over {self.ring}")
            if mat.rows != self.ranks[i - 1] or mat.cols != self.ranks[i]:
                raise ValidationError(
                    f"boundary at degree {i} has shape {mat.rows}x{mat.cols}"
                    f", expected {self.ranks[i - 1]}x{self.ranks[i]}")
        for i, mat in self.boundaries.items():
            nxt = self.boundaries.get(i + 1)
            if nxt is not None and (mat @ nxt).nnz != 0:
                raise ValidationError(
                    f"boundary composition d_{i} . d_{i + 1} is nonzero: "
                    f"not a chain complex")

    # -- accessors -----------------------------------------------------------

    def rank(self, i: int) -> int:
        return self.ranks.get(i, 0)

    def boundary_matrix(self, i: int) -> SparseExactMatrix:
        """d_i, synthesising genuine zero maps at the ends of the complex."""
        if i in self.boundaries:
            return self.boundaries[i]
        if i <= self.bottom or i > self.top:
            return SparseExactMatrix.zero(self.rank(i - 1), self.rank(i),
                                          self.ring)
        raise TruncationError(
            f"truncation too small: boundary at degree {i} was not built")

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * r for i, r in self.ranks.items())

    def content_hash(self) -> str:
        """Stable hex digest of ring, ranks and boundary entries."""
        if self._content_hash is None:
            h = hashlib.blake2b(digest_size=16)
            h.update(str(self.ring).encode())
            h.update(repr(sorted(self.ranks.items())).encode())
            h.update(repr(self.truncated_above).encode())
            for i in sorted(self.boundaries):
                h.update(f"|{i}:".encode())
                for r, c, v in self.boundaries[i].entries:
                    h.update(f"{r},{c},{v};".encode())
            self._content_hash = h.hexdigest()
        return self._content_hash

    def to_json_dict(self) -> dict:
        """Ranks plus coordinate triplet lists, for external verification."""
        return {
            "ring": str(self.ring),
            "ranks": {str(i): r for i, r in self.ranks.items()},
            "boundaries": {
                str(i): [[r, c, str(v)] for r, c, v in mat.entries]
                for i, mat in sorted(self.boundaries.items())},
        }


def _field_of(ring: Ring) -> Ring:
    return QQ if ring.kind == "Z" else ring


def homology(complex_desc: ChainComplexDesc, i: int,
             *, want_basis: bool = False) -> HomologyResult:
    """Homology of the complex in degree ``i``.

    Betti number = rank ker d_i - rank d_{i+1} over the coefficient field;
    torsion (integer coefficients only) = invariant factors > 1 of d_{i+1}.
    With ``want_basis=True`` the result carries explicit cycle vectors over
    the fraction field forming a basis of homology.

    Results are cached per complex and degree; the cache is thread-safe.
    """
    C = complex_desc
    key = (i, want_basis)
    with C._lock:
        if key in C._cache:
            return C._cache[key]
    result = _homology_uncached(C, i, want_basis)
    with C._lock:
        C._cache[key] = result
    return result


def _homology_uncached(C: ChainComplexDesc, i: int,
                       want_basis: bool) -> HomologyResult:
    if i > C.top and C.truncated_above:
        raise TruncationError(
            f"truncation too small: degree {i} beyond built top {C.top}")
    if i < C.bottom or i > C.top:
        return HomologyResult(degree=i, betti=0, torsion=(),
                              certified_torsion_free=True,
                              basis=() if want_basis else None)
    if i + 1 > C.top and C.truncated_above:
        raise TruncationError(
            f"truncation too small: homology at degree {i} needs the "
            f"boundary from degree {i + 1}, above built top {C.top}")
    d_i = C.boundary_matrix(i)
    d_next = C.boundary_matrix(i + 1)
    field = _field_of(C.ring)
    rank_d_i = rank(d_i, field)
    rank_d_next = rank(d_next, field)
    betti = C.rank(i) - rank_d_i - rank_d_next
    if C.ring.kind == "Z":
        torsion = tuple(d for d in smith_normal_form(d_next).diagonal if d > 1)
        certified = torsion == ()
    else:
        torsion = ()
        certified = False
    basis = _homology_basis(C, i, d_i, d_next) if want_basis else None
    return HomologyResult(degree=i, betti=betti, torsion=torsion,
                          certified_torsion_free=certified, basis=basis)


def _homology_basis(C: ChainComplexDesc, i: int,
                    d_i: SparseExactMatrix,
                    d_next: SparseExactMatrix) -> tuple[tuple, ...]:
    """Cycle vectors spanning homology over the fraction field.

    Kernel vectors of d_i that remain independent after the image of d_{i+1}
    is adjoined first.
    """
    from .linalg import _field_row_reduce

    field = _field_of(C.ring)
    kernel = nullspace(d_i, field)
    image_cols = [[field.coerce(v) for v in col]
                  for col in zip(*d_next.with_ring(field).to_dense())] \
        if d_next.cols and d_next.rows else []
    image_cols = [col for col in image_cols if any(not field.is_zero(x)
                                                  for x in col)]
    n_im = len(image_cols)
    if not kernel:
        return ()
    # Columns: image vectors first, then kernel vectors; a kernel vector is a
    # homology representative when it becomes a pivot column.
    stacked = list(zip(*(image_cols + [list(v) for v in kernel])))
    dense = [list(row) for row in stacked]
    pivots = _field_row_reduce(field, dense, n_im + len(kernel))
    chosen = [c - n_im for c in pivots if c >= n_im]
    return tuple(kernel[j] for j in chosen)


def induced_map_on_homology(complex_desc: ChainComplexDesc, i: int,
                            chain_matrix: SparseExactMatrix
                            ) -> SparseExactMatrix:
    """Matrix of the action induced on H_i by a degree-i chain endomorphism.

    The supplied matrix must preserve cycles and boundaries (this is checked
    column by column, and rejection names the first failing column); the
    induced matrix is expressed in the homology basis of
    :func:`homology` ``(want_basis=True)``, over the fraction field.
    """
    from .linalg import _solve_many_field

    C = complex_desc
    if chain_matrix.rows != C.rank(i) or chain_matrix.cols != C.rank(i):
        raise DomainError(
            f"chain endomorphism must be {C.rank(i)}x{C.rank(i)}, got "
            f"{chain_matrix.rows}x{chain_matrix.cols}")
    field = _field_of(C.ring)
    M = chain_matrix.with_ring(field)
    d_i = C.boundary_matrix(i).with_ring(field)
    d_next = C.boundary_matrix(i + 1).with_ring(field)

    # Cycles must map to cycles.
    kernel = nullspace(d_i, field)
    for idx, v in enumerate(kernel):
        image = M.apply(list(v))
        if any(not field.is_zero(x) for x in d_i.apply(image)):
            raise ValidationError(
                f"not a chain map: image of kernel basis column {idx} is "
                f"not a cycle")
    # Boundaries must map to boundaries.
    if d_next.cols:
        bcols = [d_next.apply([field.one if k == c else field.zero
                               for k in range(d_next.cols)])
                 for c in range(d_next.cols)]
        rhs = [M.apply(col) for col in bcols]
        solved, bad = _solve_many_field(d_next, list(zip(*rhs)), field)
        if solved is None:
            raise ValidationError(
                f"not a chain map: image of boundary column {bad} is not a "
                f"boundary")

    hom = homology(C, i, want_basis=True)
    basis = list(hom.basis or ())
    if not basis:
        return SparseExactMatrix.zero(0, 0, QQ)
    image_basis = _image_basis(d_next, field)
    span = basis + image_basis
    rhs_cols = list(zip(*(M.apply(list(h)) for h in basis)))
    span_matrix = SparseExactMatrix(
        C.rank(i), len(span),
        [(r, c, span[c][r]) for c in range(len(span))
         for r in range(C.rank(i))
         if not field.is_zero(span[c][r])], field)
    solution, bad = _solve_many_field(span_matrix, rhs_cols, field)
    assert solution is not None, "checked chain map failed to restrict"
    k = len(basis)
    entries = [(r, c, solution[r][c]) for r in range(k) for c in range(k)
               if not field.is_zero(solution[r][c])]
    return SparseExactMatrix(k, k, entries, QQ if field.kind == "Q" else field)


def _image_basis(d_next: SparseExactMatrix, field: Ring) -> list[tuple]:
    """Independent columns of the boundary matrix, as vectors."""
    from .linalg import _field_row_reduce

    if d_next.cols == 0 or d_next.nnz == 0:
        return []
    dense = [[field.coerce(v) for v in row]
             for row in d_next.with_ring(field).to_dense()]
    pivots = _field_row_reduce(field, [row[:] for row in dense], d_next.cols)
    cols = list(zip(*dense))
    return [tuple(cols[c]) for c in pivots]


def format_poincare(betti_by_degree: dict[int, int]) -> str:
    """Render Betti numbers as a polynomial string in t, e.g. ``7t^2+6t^3``."""
    terms = []
    for deg in sorted(betti_by_degree):
        b = betti_by_degree[deg]
        if b == 0:
            continue
        if deg == 0:
            terms.append(str(b))
        else:
            coeff = "" if b == 1 else str(b)
            power = "t" if deg == 1 else f"t^{deg}"
            terms.append(coeff + power)
    return "+".join(terms) if terms else "0"


def poincare_polynomial(p: int, ring: Optional[Ring] = None) -> str:
    """Poincare polynomial of the degree-p block-tensor complex.

    With integer coefficients (the default for p <= 4) torsion-freeness is
    certified along the way; for larger p the Betti numbers are computed over
    Q, where the certified multi-modular rank machinery keeps the cost sane.

    >>> poincare_polynomial(0)
    '1'
    >>> poincare_polynomial(2)
    't+2t^2'
    """
    from .symcomplex import build_complex

    if p < 0:
        raise DomainError(f"generator index must be non-negative, got {p}")
    if ring is None:
        ring = ZZ if p <= 4 else QQ
    C = build_complex(p, ring)
    betti = {i: homology(C, i).betti for i in range(p + 1)}
    return format_poincare(betti)
