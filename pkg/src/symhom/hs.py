"""Symmetric homology of algebras.

Two complementary computations are provided.

**Low degrees.**  :func:`build_low_complex` realises the small three-term
complex whose homology gives the degree-0 and degree-1 symmetric
homology of any unital algebra directly from products::

    d1(a (x) b (x) c) = abc - cba
    d2(a (x) b (x) c (x) d)
        = ab (x) c (x) d + d (x) ca (x) b + bca (x) 1 (x) d + d (x) bc (x) a
    d2(a)  = 1 (x) a (x) 1        (on the extra algebra summand)

:func:`build_hc_low_complex` is the cyclic counterpart (Connes' complex
in low degrees), and :func:`comparison_map` the explicit chain map from
the cyclic to the symmetric complex, whose squares the tests check as
matrix identities.

**Arbitrary degree.**  :func:`hs_degree` computes a single homology
degree through a truncated homotopy-colimit complex over surjections:
chains of composable epimorphisms between ordinals, decorated with a
tensor over the algebra attached to the source ordinal.  Truncating at
``m > 3(i+1)/2`` provably leaves degree-``i`` homology unchanged, which
is what the ``certified`` flag reports.  Two routes are implemented:

* ``honest`` -- the full truncated complex over any exact ring (used for
  integral torsion, e.g. the weight-graded polynomial algebra);
* ``collapsed`` -- over the rationals the complex collapses onto
  coinvariants of strictly decreasing order-preserving chains, shrinking
  the basis by orders of magnitude.

Unaugmented algebras (such as the matrix algebra) are handled by the
``whole``-components variant, which replaces augmentation-ideal powers
with full tensor powers.  Its degree-0 output is provably the symmetric
homology of the algebra; in higher degrees it computes the symmetric
homology of the unitalization and is reported uncertified.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Optional

from .algebras import AlgebraSpec, Tensor, bsym_apply, standard_augmented_form
from .deltas import (DeltaSMorphism, Permutation, compose, enumerate_epis,
                     enumerate_increasing_epis, epi_count)
from .errors import (AugmentationError, DomainError, ResourceGuardError,
                     ValidationError)
from .homology import ChainComplexDesc, _image_basis, homology
from .linalg import SparseExactMatrix, _solve_many_field
from .rings import QQ, Ring


def default_truncation(i: int) -> int:
    """Smallest truncation certified to compute degree-``i`` homology."""
    return (3 * (i + 1)) // 2 + 1


def truncation_certified(m: int, i: int) -> bool:
    """Whether truncating at ``m`` provably preserves degree ``i``."""
    return 2 * m > 3 * (i + 1)


# ---------------------------------------------------------------------------
# Shared machinery for tensor-decorated complexes


def _acc(store: dict, key, coeff, ring) -> None:
    prev = store.get(key)
    total = coeff if prev is None else ring.add(prev, coeff)
    if ring.is_zero(total):
        store.pop(key, None)
    else:
        store[key] = total


def _mul_elems(algebra: AlgebraSpec, ring: Ring, elems) -> dict:
    """Product of a sequence of elements, as an element-coefficient dict.

    The empty product is the unit combination.
    """
    acc = None
    for e in elems:
        if acc is None:
            acc = {e: ring.one}
            continue
        nxt = {}
        for e1, c1 in acc.items():
            for e2, c2 in algebra.multiply(e1, e).items():
                _acc(nxt, e2, ring.mul(c1, ring.coerce(c2)), ring)
        acc = nxt
    if acc is None:
        return {e: ring.coerce(c)
                for e, c in algebra.unit_combination().items()}
    return acc


def _expand(slots, ring) -> dict:
    """Outer product of per-position combinations into tuple keys."""
    out = {(): ring.one}
    for slot in slots:
        nxt = {}
        for key, c in out.items():
            for e, ce in slot.items():
                _acc(nxt, key + (e,), ring.mul(c, ce), ring)
        out = nxt
    return out


class _Carrier:
    """An algebra prepared for complex building.

    Finite-dimensional algebras on the ``ideal`` route are rewritten on
    the basis ``unit, ideal basis`` so that ideal membership is
    positional and all chain-group bases are pure monomials; monoid
    algebras are used as-is with weight slicing.
    """

    def __init__(self, algebra: AlgebraSpec, ring: Ring, components: str):
        if components not in ("ideal", "whole"):
            raise DomainError(f"unknown component variant {components!r}")
        self.base = algebra
        self.ring = ring
        self.components = components
        self.finite = algebra.kind == "finite_dim"
        if self.finite and components == "ideal":
            if algebra.aug is None or not algebra.aug_is_algebra_map:
                raise AugmentationError(
                    f"algebra {algebra.name} has no multiplicative "
                    f"augmentation; its ideal components are undefined "
                    f"(the whole-components variant remains available)")
            self.alg, _ = standard_augmented_form(algebra)
        else:
            self.alg = algebra

    def keys(self, m: int, weight) -> tuple:
        if self.finite:
            if weight is not None:
                raise DomainError(
                    f"algebra {self.base.name} has no weight grading")
            d = len(self.alg.basis)
            pool = range(d) if (m == 0 or self.components == "whole") \
                else range(1, d)
            return tuple(itertools.product(pool, repeat=m + 1))
        window = _weight_window(weight)
        if window is None:
            raise DomainError(
                f"algebra {self.base.name} is graded with infinite basis; "
                f"an explicit weight is required")
        out = []
        minimum = 1 if self.components == "ideal" else 0
        for w in window:
            if m == 0:
                out.extend((e,) for e in self.alg.elements_of_weight(w))
                continue
            for parts in _compositions(w, m + 1, minimum):
                for combo in itertools.product(
                        *(self.alg.elements_of_weight(part)
                          for part in parts)):
                    out.append(combo)
        return tuple(out)

    def apply(self, f: DeltaSMorphism, key: tuple) -> dict:
        out = bsym_apply(self.alg, f, Tensor.monomial(key, self.ring))
        return out.terms

    def permute_key(self, sigma: Permutation, key: tuple) -> tuple:
        inv = sigma.inverse()
        return tuple(key[inv(i)] for i in range(len(key)))


def _compositions(total: int, parts: int, minimum: int):
    if parts == 1:
        if total >= minimum:
            yield (total,)
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, minimum):
            yield (first,) + rest


def _weight_window(weight) -> Optional[tuple]:
    """Normalize a weight argument: an int, or an iterable window."""
    if weight is None:
        return None
    if isinstance(weight, int):
        return (weight,)
    window = tuple(sorted(set(weight)))
    if not window or any(not isinstance(w, int) or w < 0 for w in window):
        raise DomainError(f"invalid weight window {weight!r}")
    return window


# ---------------------------------------------------------------------------
# Low-degree complexes


def _low_bases(algebra: AlgebraSpec, ring: Ring, arities, weight):
    """Bases of tensor-power summands, as lists of (arity-spec) tuples.

    ``arities`` is a sequence whose entries are either an int ``k``
    (meaning all tensor monomials with ``k`` factors) or a list of such
    ints for a direct sum.
    """
    def monomials(k):
        if algebra.kind == "finite_dim":
            if weight is not None:
                raise DomainError(
                    f"algebra {algebra.name} has no weight grading")
            return list(itertools.product(range(len(algebra.basis)),
                                          repeat=k))
        if weight is None:
            raise DomainError(
                f"algebra {algebra.name} is graded with infinite basis; "
                f"an explicit weight is required")
        out = []
        for parts in _compositions(weight, k, 0):
            out.extend(itertools.product(
                *(algebra.elements_of_weight(w) for w in parts)))
        return out

    bases = []
    for spec in arities:
        cells = []
        for k in (spec if isinstance(spec, (list, tuple)) else [spec]):
            cells.extend(monomials(k))
        bases.append(cells)
    return bases


def _assemble(ring: Ring, bases, columns_by_degree) -> ChainComplexDesc:
    ranks = {i: len(cells) for i, cells in enumerate(bases)}
    index = [{key: pos for pos, key in enumerate(cells)} for cells in bases]
    boundaries = {}
    for deg, columns in columns_by_degree.items():
        entries = []
        for col, terms in enumerate(columns):
            for key, c in terms.items():
                entries.append((index[deg - 1][key], col, c))
        boundaries[deg] = SparseExactMatrix(
            ranks[deg - 1], ranks[deg], entries, ring)
    return ChainComplexDesc(ring, ranks, boundaries, truncated_above=True)


def build_low_complex(algebra: AlgebraSpec, ring: Optional[Ring] = None,
                      weight: Optional[int] = None) -> ChainComplexDesc:
    """Degrees 0..2 of the small symmetric complex of an algebra.

    Homology is valid in degrees 0 and 1 (the complex is truncated
    above).  Works for any unital algebra; no augmentation is needed.
    """
    ring = ring or algebra.ring
    bases = _low_bases(algebra, ring, [1, 3, [4, 1]], weight)
    mul = lambda *elems: _mul_elems(algebra, ring, elems)  # noqa: E731
    unit = mul()

    columns1 = []
    for (a, b, c) in bases[1]:
        terms = {}
        for e, v in mul(a, b, c).items():
            _acc(terms, (e,), v, ring)
        for e, v in mul(c, b, a).items():
            _acc(terms, (e,), ring.neg(v), ring)
        columns1.append(terms)

    columns2 = []
    for key in bases[2]:
        terms = {}
        if len(key) == 4:
            a, b, c, d = key
            for coeff, slots in (
                    (ring.one, [mul(a, b), {c: ring.one}, {d: ring.one}]),
                    (ring.one, [{d: ring.one}, mul(c, a), {b: ring.one}]),
                    (ring.one, [mul(b, c, a), unit, {d: ring.one}]),
                    (ring.one, [{d: ring.one}, mul(b, c), {a: ring.one}])):
                for k2, v in _expand(slots, ring).items():
                    _acc(terms, k2, ring.mul(coeff, v), ring)
        else:
            (a,) = key
            for k2, v in _expand([unit, {a: ring.one}, unit], ring).items():
                _acc(terms, k2, v, ring)
        columns2.append(terms)

    return _assemble(ring, bases, {1: columns1, 2: columns2})


def build_hc_low_complex(algebra: AlgebraSpec, ring: Optional[Ring] = None,
                         weight: Optional[int] = None) -> ChainComplexDesc:
    """Degrees 0..2 of the cyclic counterpart of the low complex."""
    ring = ring or algebra.ring
    bases = _low_bases(algebra, ring, [1, 2, [3, 1]], weight)
    mul = lambda *elems: _mul_elems(algebra, ring, elems)  # noqa: E731
    unit = mul()

    columns1 = []
    for (a, b) in bases[1]:
        terms = {}
        for e, v in mul(a, b).items():
            _acc(terms, (e,), v, ring)
        for e, v in mul(b, a).items():
            _acc(terms, (e,), ring.neg(v), ring)
        columns1.append(terms)

    columns2 = []
    for key in bases[2]:
        terms = {}
        if len(key) == 3:
            a, b, c = key
            for sign, slots in (
                    (ring.one, [mul(a, b), {c: ring.one}]),
                    (ring.neg(ring.one), [{a: ring.one}, mul(b, c)]),
                    (ring.one, [mul(c, a), {b: ring.one}])):
                for k2, v in _expand(slots, ring).items():
                    _acc(terms, k2, ring.mul(sign, v), ring)
        else:
            (a,) = key
            for k2, v in _expand([unit, {a: ring.one}], ring).items():
                _acc(terms, k2, v, ring)
            for k2, v in _expand([{a: ring.one}, unit], ring).items():
                _acc(terms, k2, ring.neg(v), ring)
        columns2.append(terms)

    return _assemble(ring, bases, {1: columns1, 2: columns2})


def hs_low(algebra: AlgebraSpec, ring: Optional[Ring] = None,
           weight: Optional[int] = None) -> dict:
    """Symmetric homology in degrees 0 and 1 from the low complex."""
    C = build_low_complex(algebra, ring, weight)
    return {0: homology(C, 0), 1: homology(C, 1)}


def hc_low(algebra: AlgebraSpec, ring: Optional[Ring] = None,
           weight: Optional[int] = None) -> dict:
    """Cyclic homology in degrees 0 and 1 from the low complex."""
    C = build_hc_low_complex(algebra, ring, weight)
    return {0: homology(C, 0), 1: homology(C, 1)}


def comparison_map(algebra: AlgebraSpec, ring: Optional[Ring] = None,
                   weight: Optional[int] = None) -> dict:
    """The chain map from the cyclic to the symmetric low complex.

    Degree 0 is the identity; degree 1 pads with a unit; degree 2 is the
    explicit five-plus-two-term correction.  Returns matrices keyed by
    degree, in the bases of the two complexes; the commuting of the
    squares with both differentials is a theorem, asserted by the tests.
    """
    ring = ring or algebra.ring
    hc_bases = _low_bases(algebra, ring, [1, 2, [3, 1]], weight)
    hs_bases = _low_bases(algebra, ring, [1, 3, [4, 1]], weight)
    mul = lambda *elems: _mul_elems(algebra, ring, elems)  # noqa: E731
    unit = mul()
    index = [{key: pos for pos, key in enumerate(cells)}
             for cells in hs_bases]

    def matrix(deg, columns):
        entries = []
        for col, terms in enumerate(columns):
            for key, v in terms.items():
                entries.append((index[deg][key], col, v))
        return SparseExactMatrix(len(hs_bases[deg]), len(hc_bases[deg]),
                                 entries, ring)

    columns0 = [{key: ring.one} for key in hc_bases[0]]

    columns1 = []
    for (a, b) in hc_bases[1]:
        terms = {}
        for k2, v in _expand([{a: ring.one}, {b: ring.one}, unit],
                             ring).items():
            _acc(terms, k2, v, ring)
        columns1.append(terms)

    columns2 = []
    for key in hc_bases[2]:
        terms = {}
        if len(key) == 3:
            a, b, c = key
            tensor_part = (
                (1, [{a: ring.one}, {b: ring.one}, {c: ring.one}, unit]),
                (-1, [unit, {a: ring.one}, mul(b, c), unit]),
                (1, [unit, mul(c, a), {b: ring.one}, unit]),
                (1, [unit, unit, mul(a, b, c), unit]),
                (-1, [{b: ring.one}, mul(c, a), unit, unit]),
            )
            for sign, slots in tensor_part:
                s = ring.coerce(sign)
                for k2, v in _expand(slots, ring).items():
                    _acc(terms, k2, ring.mul(s, v), ring)
            for e, v in mul(a, b, c).items():
                _acc(terms, (e,), ring.mul(ring.coerce(-2), v), ring)
            for e, v in mul(c, a, b).items():
                _acc(terms, (e,), ring.neg(v), ring)
        else:
            (a,) = key
            _acc(terms, (a,), ring.coerce(4), ring)
            for k2, v in _expand([unit, unit, {a: ring.one}, unit],
                                 ring).items():
                _acc(terms, k2, ring.neg(v), ring)
        columns2.append(terms)

    return {0: matrix(0, columns0), 1: matrix(1, columns1),
            2: matrix(2, columns2)}


def induced_h0_map(source: ChainComplexDesc, target: ChainComplexDesc,
                   chain_map0: SparseExactMatrix) -> SparseExactMatrix:
    """Map induced on degree-0 homology by a degree-0 chain map.

    Verifies that source boundaries land in target boundaries, then
    expresses the image of each source homology class in the target
    homology basis.
    """
    field = QQ if source.ring.kind == "Z" else source.ring
    M = chain_map0.with_ring(field)
    d1s = source.boundary_matrix(1).with_ring(field)
    d1t = target.boundary_matrix(1).with_ring(field)
    if d1s.cols:
        cols = [d1s.apply([field.one if k == c else field.zero
                           for k in range(d1s.cols)])
                for c in range(d1s.cols)]
        rhs = [M.apply(col) for col in cols]
        solved, bad = _solve_many_field(d1t, list(zip(*rhs)), field)
        if solved is None:
            raise ValidationError(
                f"not a chain map: image of boundary column {bad} is not a "
                f"boundary in the target")
    hom_s = homology(source, 0, want_basis=True)
    hom_t = homology(target, 0, want_basis=True)
    basis_s = list(hom_s.basis or ())
    basis_t = list(hom_t.basis or ())
    if not basis_s or not basis_t:
        return SparseExactMatrix.zero(len(basis_t), len(basis_s), field)
    span = basis_t + _image_basis(d1t, field)
    span_matrix = SparseExactMatrix(
        target.rank(0), len(span),
        [(r, c, span[c][r]) for c in range(len(span))
         for r in range(target.rank(0))
         if not field.is_zero(span[c][r])], field)
    rhs_cols = list(zip(*(M.apply(list(v)) for v in basis_s)))
    solution, _ = _solve_many_field(span_matrix, rhs_cols, field)
    assert solution is not None, "span of homology and boundaries is full"
    k_t, k_s = len(basis_t), len(basis_s)
    entries = [(r, c, solution[r][c]) for r in range(k_t)
               for c in range(k_s) if not field.is_zero(solution[r][c])]
    return SparseExactMatrix(k_t, k_s, entries, field)


# ---------------------------------------------------------------------------
# Truncated epi complexes


@lru_cache(maxsize=None)
def _chain_count(a: int, p: int) -> int:
    if p == 0:
        return 1
    return sum(epi_count(a, b) * _chain_count(b, p - 1)
               for b in range(a + 1))


@lru_cache(maxsize=None)
def _strict_chain_count(a: int, p: int) -> int:
    if p == 0:
        return 1
    return sum(comb(a, b) * _strict_chain_count(b, p - 1)
               for b in range(a))


@lru_cache(maxsize=None)
def _epi_arrows(a: int) -> tuple:
    return tuple(f for b in range(a, -1, -1) for f in enumerate_epis(a, b))


@lru_cache(maxsize=None)
def _strict_arrows(a: int) -> tuple:
    return tuple(phi.as_morphism() for b in range(a - 1, -1, -1)
                 for phi in enumerate_increasing_epis(a, b))


def _chains_from(a: int, p: int, arrows_of) -> tuple:
    if p == 0:
        return ((),)
    out = []
    for f in arrows_of(a):
        for rest in _chains_from(f.target, p - 1, arrows_of):
            out.append((f,) + rest)
    return tuple(out)


def _faces(carrier: _Carrier, key: tuple, arrows: tuple):
    """Alternating faces of a decorated chain: apply the first arrow,
    merge consecutive arrows, drop the last arrow."""
    p = len(arrows)
    ring = carrier.ring
    for key2, c in carrier.apply(arrows[0], key).items():
        yield (c, key2, arrows[1:])
    for j in range(1, p):
        sign = ring.coerce(-1 if j % 2 else 1)
        merged = arrows[:j - 1] + (compose(arrows[j - 1], arrows[j]),) \
            + arrows[j + 1:]
        yield (sign, key, merged)
    yield (ring.coerce(-1 if p % 2 else 1), key, arrows[:-1])


def _guard(estimate: int, max_nnz: int, what: str) -> None:
    if max_nnz is not None and estimate > max_nnz:
        raise ResourceGuardError(
            f"{what} is estimated at {estimate} matrix entries, above the "
            f"guard of {max_nnz}; raise max_nnz (or pass None) to override")


def build_truncated_epi_complex(algebra: AlgebraSpec, i: int, *,
                                m: Optional[int] = None,
                                ring: Optional[Ring] = None,
                                weight: Optional[int] = None,
                                components: str = "ideal",
                                max_nnz: Optional[int] = 2_000_000
                                ) -> ChainComplexDesc:
    """The truncated decorated-chain complex in degrees ``0 .. i + 1``.

    Degree ``p`` is spanned by chains of ``p`` composable epimorphisms
    of ordinals, every ordinal at most ``m``, decorated with a tensor
    monomial attached to the source ordinal -- the whole algebra at
    ordinal 0, tensor powers of the augmentation ideal (or of the whole
    algebra, per ``components``) above.
    """
    if i < 0:
        raise DomainError("homology degree must be nonnegative")
    ring = ring or algebra.ring
    m = default_truncation(i) if m is None else m
    if m < 0:
        raise DomainError("truncation must be nonnegative")
    carrier = _Carrier(algebra, ring, components)
    fanout = len(carrier.alg.basis) if carrier.finite else 1
    keys_at = {m0: carrier.keys(m0, weight) for m0 in range(m + 1)}
    estimate = sum(
        len(keys_at[m0]) * _chain_count(m0, p) * (p + 2) * fanout
        for p in range(i + 2) for m0 in range(m + 1))
    _guard(estimate, max_nnz, f"truncated complex for {algebra.name}")

    cells = {}
    for p in range(i + 2):
        layer = []
        for m0 in range(m + 1):
            keys = keys_at[m0]
            if not keys:
                continue
            for chain in _chains_from(m0, p, _epi_arrows):
                layer.extend((key, chain) for key in keys)
        cells[p] = layer
    index = {p: {cell: pos for pos, cell in enumerate(layer)}
             for p, layer in cells.items()}
    boundaries = {}
    for p in range(1, i + 2):
        entries = []
        lower = index[p - 1]
        for col, (key, arrows) in enumerate(cells[p]):
            acc = {}
            for coeff, key2, arrows2 in _faces(carrier, key, arrows):
                cell2 = (key2, arrows2)
                row = lower.get(cell2)
                if row is None:
                    raise ValidationError(
                        f"face of {cell2} leaves the complex; the "
                        f"components are not closed under the structure "
                        f"maps")
                _acc(acc, row, coeff, ring)
            entries.extend((row, col, v) for row, v in acc.items())
        boundaries[p] = SparseExactMatrix(
            len(cells[p - 1]), len(cells[p]), entries, ring)
    ranks = {p: len(cells[p]) for p in range(i + 2)}
    return ChainComplexDesc(ring, ranks, boundaries, truncated_above=True)


# ---------------------------------------------------------------------------
# Collapsed (rational) route


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _sweep(carrier: _Carrier, key: tuple, arrows: tuple):
    """Push source automorphisms of every arrow leftward into the tensor,
    leaving all arrows order-preserving."""
    arrows = list(arrows)
    for j in range(len(arrows) - 1, 0, -1):
        sigma, phi = arrows[j].factorize()
        if sigma.images != tuple(range(sigma.size)):
            arrows[j] = phi.as_morphism()
            arrows[j - 1] = compose(arrows[j - 1], sigma.as_morphism())
    if arrows:
        sigma, phi = arrows[0].factorize()
        if sigma.images != tuple(range(sigma.size)):
            arrows[0] = phi.as_morphism()
            key = carrier.permute_key(sigma, key)
    return key, tuple(arrows)


def build_collapsed_complex(algebra: AlgebraSpec, i: int, *,
                            m: Optional[int] = None,
                            weight: Optional[int] = None,
                            components: str = "ideal",
                            max_nnz: Optional[int] = 2_000_000
                            ) -> ChainComplexDesc:
    """Rational coinvariants model of the truncated complex.

    Degree ``p`` is spanned by orbits of pairs (tensor monomial,
    strictly decreasing chain of ``p`` order-preserving surjections)
    under the symmetric groups acting along the chain.  Over the
    rationals its homology agrees with the full truncated complex in
    every degree, at a small fraction of the size.
    """
    if i < 0:
        raise DomainError("homology degree must be nonnegative")
    m = default_truncation(i) if m is None else m
    carrier = _Carrier(algebra, QQ, components)
    keys_at = {m0: carrier.keys(m0, weight) for m0 in range(m + 1)}
    estimate = sum(
        len(keys_at[m0]) * _strict_chain_count(m0, p) * (p + 2)
        for p in range(i + 2) for m0 in range(m + 1))
    _guard(estimate, max_nnz, f"collapsed complex for {algebra.name}")

    roots_by_degree = {}
    root_index = {}
    for p in range(i + 2):
        layer = []
        for m0 in range(p, m + 1):
            keys = keys_at[m0]
            if not keys:
                continue
            for chain in _chains_from(m0, p, _strict_arrows):
                layer.extend((key, chain) for key in keys)
        idx = {cell: pos for pos, cell in enumerate(layer)}
        uf = _UnionFind(len(layer))
        for pos, (key, arrows) in enumerate(layer):
            if p == 0:
                n0 = len(key) - 1
                for s in range(n0):
                    tau = Permutation.transposition(n0 + 1, s, s + 1)
                    moved = (carrier.permute_key(tau, key), arrows)
                    uf.union(pos, idx[moved])
                continue
            for j in range(1, p + 1):
                nj = arrows[j - 1].target
                for s in range(nj):
                    tau = Permutation.transposition(nj + 1, s, s + 1)
                    tau_m = tau.as_morphism()
                    new_arrows = list(arrows)
                    new_arrows[j - 1] = compose(arrows[j - 1], tau_m)
                    if j < p:
                        new_arrows[j] = compose(tau_m, arrows[j])
                    moved = _sweep(carrier, key, tuple(new_arrows))
                    uf.union(pos, idx[moved])
        reps = sorted({uf.find(pos) for pos in range(len(layer))})
        roots_by_degree[p] = [layer[r] for r in reps]
        rep_pos = {r: k for k, r in enumerate(reps)}
        root_index[p] = (uf, idx, rep_pos)

    def class_of(p, cell):
        uf, idx, rep_pos = root_index[p]
        return rep_pos[uf.find(idx[cell])]

    boundaries = {}
    for p in range(1, i + 2):
        entries = []
        for col, (key, arrows) in enumerate(roots_by_degree[p]):
            acc = {}
            for coeff, key2, arrows2 in _faces(carrier, key, arrows):
                row = class_of(p - 1, (key2, arrows2))
                _acc(acc, row, coeff, QQ)
            entries.extend((row, col, v) for row, v in acc.items())
        boundaries[p] = SparseExactMatrix(
            len(roots_by_degree[p - 1]), len(roots_by_degree[p]),
            entries, QQ)
    ranks = {p: len(roots_by_degree[p]) for p in range(i + 2)}
    return ChainComplexDesc(QQ, ranks, boundaries, truncated_above=True)


# ---------------------------------------------------------------------------
# Reports


@dataclass(frozen=True)
class HSReport:
    """One computed symmetric-homology degree, with provenance."""

    algebra: str
    degree: int
    weight: Optional[int]
    m: int
    ring: str
    route: str
    certified: bool
    betti: int
    torsion: tuple

    def to_json_dict(self) -> dict:
        weight = list(self.weight) if isinstance(self.weight, tuple) \
            else self.weight
        return {
            "algebra": self.algebra,
            "degree": self.degree,
            "weight": weight,
            "m": self.m,
            "certified": self.certified,
            "betti": self.betti,
            "torsion": list(self.torsion),
        }


def hs_degree(algebra: AlgebraSpec, degree: int, *,
              ring: Optional[Ring] = None,
              weight: Optional[int] = None,
              m: Optional[int] = None,
              route: str = "auto",
              components: Optional[str] = None,
              max_nnz: Optional[int] = 2_000_000,
              allow_unaugmented: bool = False) -> HSReport:
    """Symmetric homology of an algebra in one degree.

    The truncation ``m`` defaults to the smallest certified value for
    the requested degree; explicitly passing a smaller one still
    delivers a result, flagged uncertified.  The route defaults to the
    collapsed coinvariants model over the rationals and to the honest
    complex otherwise.  Algebras without a multiplicative augmentation
    require ``allow_unaugmented``; their degree-0 answer is exact and
    higher degrees are reported uncertified (they compute the
    unitalization).
    """
    if degree < 0:
        raise DomainError("homology degree must be nonnegative")
    ring = ring or algebra.ring
    m = default_truncation(degree) if m is None else m
    if m < 0:
        raise DomainError("truncation must be nonnegative")
    trunc_ok = truncation_certified(m, degree)
    if algebra.kind == "finite_dim" and weight is not None:
        raise DomainError(
            f"algebra {algebra.name} has no weight grading")
    if algebra.kind != "finite_dim" and weight is None:
        raise DomainError(
            f"algebra {algebra.name} is graded with infinite basis; an "
            f"explicit weight is required")
    if components is None:
        augmented = algebra.has_augmentation and (
            algebra.kind != "finite_dim" or algebra.aug_is_algebra_map)
        if augmented:
            components = "ideal"
        elif allow_unaugmented:
            components = "whole"
        else:
            raise AugmentationError(
                f"algebra {algebra.name} has no multiplicative "
                f"augmentation; pass allow_unaugmented=True to use "
                f"whole-algebra components (certified in degree 0 only)")
    if route == "auto":
        route = "collapsed" if ring.kind == "Q" else "honest"
    if route == "collapsed":
        if ring.kind != "Q":
            raise DomainError(
                f"the collapsed route requires rational coefficients, "
                f"got {ring}")
        C = build_collapsed_complex(algebra, degree, m=m, weight=weight,
                                    components=components, max_nnz=max_nnz)
    elif route == "honest":
        C = build_truncated_epi_complex(algebra, degree, m=m, ring=ring,
                                        weight=weight, components=components,
                                        max_nnz=max_nnz)
    else:
        raise DomainError(f"unknown route {route!r}")
    h = homology(C, degree)
    certified = trunc_ok and (components == "ideal" or degree == 0)
    window = _weight_window(weight)
    report_weight = None if window is None else (
        window[0] if len(window) == 1 else window)
    return HSReport(algebra=algebra.name, degree=degree,
                    weight=report_weight, m=m, ring=str(ring), route=route,
                    certified=certified, betti=h.betti, torsion=h.torsion)
