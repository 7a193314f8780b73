"""Chain complexes of tensor words in blocks of distinct generators.

Degree-i chains (for p+1 generators z_0, ..., z_p) are spanned by tensor
products Z_0 (x) ... (x) Z_{p-i} of nonempty words whose letters partition
{0, ..., p}.  Reordering adjacent blocks costs the Koszul sign
(-1)^{(|Z|+1)(|W|+1)}, so each basis class has a canonical representative
with blocks sorted by their minimum letter.  The boundary splits one block
into two at an interior position, with faces signed alternately left to
right across the whole element.

On top of the basis sit the symmetric-group action by relabelling, the
alternating cyclic cycles b_p, the degree-shifting concatenation product,
and the assembly of the whole complex into a :class:`ChainComplexDesc`.
"""
from __future__ import annotations

import itertools
import re
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping

from .deltas import Permutation
from .errors import DomainError, ValidationError
from .homology import ChainComplexDesc
from .linalg import SparseExactMatrix
from .rings import Ring, ZZ

__all__ = [
    "SymBasisElement",
    "SymChain",
    "canonicalize",
    "enumerate_basis",
    "basis_rank",
    "boundary",
    "sigma_act",
    "b_cycle",
    "box_product",
    "build_complex",
]


def _validate_blocks(p: int, blocks) -> tuple[tuple[int, ...], ...]:
    blocks = tuple(tuple(int(x) for x in blk) for blk in blocks)
    if any(len(blk) == 0 for blk in blocks):
        raise DomainError("blocks must be nonempty")
    letters = [x for blk in blocks for x in blk]
    if sorted(letters) != list(range(p + 1)):
        raise DomainError(
            f"blocks must use each generator 0..{p} exactly once, got "
            f"{blocks}")
    return blocks


class SymBasisElement:
    """A canonical basis word: blocks sorted ascending by minimum letter.

    >>> SymBasisElement(4, [(2, 0, 3), (1, 4)]).to_string()
    '[2,0,3][1,4]'
    """

    __slots__ = ("p", "blocks", "_hash")

    def __init__(self, p: int, blocks):
        blocks = _validate_blocks(p, blocks)
        mins = [min(blk) for blk in blocks]
        if mins != sorted(mins):
            raise DomainError(
                f"blocks {blocks} are not canonical: order blocks by their "
                f"minimum letter (use canonicalize to absorb the sign)")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "_hash", hash((p, blocks)))

    def __setattr__(self, name, value):
        raise AttributeError("SymBasisElement is immutable")

    @property
    def degree(self) -> int:
        return self.p - (len(self.blocks) - 1)

    def to_string(self) -> str:
        return "".join("[" + ",".join(str(x) for x in blk) + "]"
                       for blk in self.blocks)

    _BLOCK_RE = re.compile(r"\[([^][]*)\]")

    @classmethod
    def from_string(cls, text: str) -> "SymBasisElement":
        chunks = cls._BLOCK_RE.findall(text)
        if not chunks or "".join(f"[{c}]" for c in chunks) != text.strip():
            raise ValidationError(f"malformed basis word {text!r}: expected "
                                  f"bracketed blocks like [2,0,3][1,4]")
        try:
            blocks = tuple(tuple(int(x) for x in chunk.split(","))
                           for chunk in chunks)
        except ValueError:
            raise ValidationError(
                f"malformed basis word {text!r}: non-integer letter") from None
        p = sum(len(b) for b in blocks) - 1
        try:
            return cls(p, blocks)
        except DomainError as exc:
            raise ValidationError(f"invalid basis word {text!r}: {exc}") \
                from None

    def __eq__(self, other):
        if not isinstance(other, SymBasisElement):
            return NotImplemented
        return self.p == other.p and self.blocks == other.blocks

    def __lt__(self, other):
        return (self.p, self.blocks) < (other.p, other.blocks)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"SymBasisElement({self.to_string()})"


def canonicalize(p: int, blocks) -> tuple[int, SymBasisElement]:
    """Sort blocks by minimum letter, returning (Koszul sign, element).

    Swapping adjacent blocks Z, W contributes (-1)^((|Z|+1)(|W|+1)); the
    total sign is accumulated over the inversions removed by sorting.

    >>> canonicalize(4, [(1, 4), (2, 0, 3)])
    (1, SymBasisElement([2,0,3][1,4]))
    >>> canonicalize(3, [(2, 3), (0, 1)])
    (-1, SymBasisElement([0,1][2,3]))
    """
    blocks = _validate_blocks(p, blocks)
    keyed = [(min(blk), blk) for blk in blocks]
    exponent = 0
    for i in range(len(keyed)):
        for j in range(i + 1, len(keyed)):
            if keyed[i][0] > keyed[j][0]:
                exponent += (len(keyed[i][1]) + 1) * (len(keyed[j][1]) + 1)
    ordered = tuple(blk for _, blk in sorted(keyed, key=lambda kv: kv[0]))
    return (-1) ** exponent, SymBasisElement(p, ordered)


def basis_rank(p: int, i: int) -> int:
    """Number of canonical degree-i basis words on p+1 generators."""
    if not 0 <= i <= p:
        return 0
    b = p - i + 1
    return factorial(p + 1) * comb(p, b - 1) // factorial(b)


def _set_partitions(elements: tuple[int, ...], blocks: int):
    """Partitions of ``elements`` into ``blocks`` sets ordered by minimum."""
    if blocks == 1:
        yield (elements,)
        return
    first, rest = elements[0], elements[1:]
    # The first block contains the overall minimum; choose its other members.
    for size in range(0, len(rest) - blocks + 2):
        for extra in itertools.combinations(rest, size):
            block0 = (first,) + extra
            remaining = tuple(x for x in rest if x not in extra)
            for tail in _set_partitions(remaining, blocks - 1):
                yield (block0,) + tail


@lru_cache(maxsize=None)
def enumerate_basis(p: int, i: int) -> tuple[SymBasisElement, ...]:
    """All canonical degree-i basis words, sorted by their block tuples.

    The order is deterministic and is the column/row order used by
    :func:`build_complex`.
    """
    if not 0 <= i <= p:
        return ()
    nblocks = p - i + 1
    out = []
    for sets in _set_partitions(tuple(range(p + 1)), nblocks):
        for arranged in itertools.product(
                *(itertools.permutations(blk) for blk in sets)):
            out.append(SymBasisElement(p, arranged))
    out.sort()
    expected = basis_rank(p, i)
    assert len(out) == expected, (p, i, len(out), expected)
    return tuple(out)


@lru_cache(maxsize=None)
def _basis_index(p: int, i: int) -> Mapping[SymBasisElement, int]:
    return {elem: k for k, elem in enumerate(enumerate_basis(p, i))}


class SymChain:
    """A formal linear combination of basis words of one degree.

    Stored as a coefficient mapping with no zero terms; all terms share the
    same generator count and homological degree.
    """

    __slots__ = ("p", "degree", "ring", "terms")

    def __init__(self, p: int, degree: int, terms=None, ring: Ring = ZZ):
        cleaned = {}
        for elem, coeff in (terms or {}).items():
            if elem.p != p or elem.degree != degree:
                raise DomainError(
                    f"term {elem.to_string()} has (p, degree) = "
                    f"({elem.p}, {elem.degree}), chain declares ({p}, {degree})")
            coeff = ring.coerce(coeff)
            if not ring.is_zero(coeff):
                cleaned[elem] = coeff
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("SymChain is immutable")

    @classmethod
    def single(cls, element: SymBasisElement, coeff=1,
               ring: Ring = ZZ) -> "SymChain":
        return cls(element.p, element.degree, {element: coeff}, ring)

    @classmethod
    def zero(cls, p: int, degree: int, ring: Ring = ZZ) -> "SymChain":
        return cls(p, degree, {}, ring)

    @classmethod
    def from_word(cls, *letters: int) -> "SymChain":
        """Single-block chain from a word of letters, e.g. from_word(1, 0)."""
        return cls.single(SymBasisElement(len(letters) - 1, (tuple(letters),)))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, element: SymBasisElement):
        return self.terms.get(element, self.ring.zero)

    def __add__(self, other: "SymChain") -> "SymChain":
        self._check_compatible(other)
        merged = dict(self.terms)
        for elem, coeff in other.terms.items():
            merged[elem] = self.ring.add(merged.get(elem, self.ring.zero),
                                         coeff)
        return SymChain(self.p, self.degree, merged, self.ring)

    def __sub__(self, other: "SymChain") -> "SymChain":
        return self + other.scale(-1)

    def scale(self, coeff) -> "SymChain":
        c = self.ring.coerce(coeff)
        return SymChain(self.p, self.degree,
                        {e: self.ring.mul(c, v) for e, v in self.terms.items()},
                        self.ring)

    def _check_compatible(self, other: "SymChain") -> None:
        if not isinstance(other, SymChain):
            raise DomainError("can only combine with another chain")
        if (self.p, self.degree) != (other.p, other.degree) \
                or self.ring != other.ring:
            raise DomainError(
                f"chain mismatch: ({self.p}, {self.degree}, {self.ring}) vs "
                f"({other.p}, {other.degree}, {other.ring})")

    def to_vector(self) -> list:
        """Coefficients in the order of :func:`enumerate_basis`."""
        index = _basis_index(self.p, self.degree)
        vec = [self.ring.zero] * len(index)
        for elem, coeff in self.terms.items():
            vec[index[elem]] = coeff
        return vec

    def __eq__(self, other):
        if not isinstance(other, SymChain):
            return NotImplemented
        return (self.p, self.degree, self.ring, self.terms) == \
            (other.p, other.degree, other.ring, other.terms)

    def __hash__(self):
        return hash((self.p, self.degree, self.ring,
                     frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "SymChain(0)"
        bits = [f"{self.terms[elem]:+}*{elem.to_string()}"
                for elem in sorted(self.terms)]
        return "SymChain(" + " ".join(bits) + ")"


def _boundary_terms(element: SymBasisElement):
    """Signed faces of one basis word: split each block at each interior
    position, faces numbered 0, 1, 2, ... left to right across the element."""
    face = 0
    blocks = element.blocks
    for j, blk in enumerate(blocks):
        for cut in range(1, len(blk)):
            pieces = blocks[:j] + (blk[:cut], blk[cut:]) + blocks[j + 1:]
            sign, canonical = canonicalize(element.p, pieces)
            yield ((-1) ** face) * sign, canonical
            face += 1


def boundary(chain: SymChain) -> SymChain:
    """The differential: alternating sum over single-block splits.

    >>> word = SymChain.single(SymBasisElement(4, ((2, 0, 3), (1, 4))))
    >>> sorted(e.to_string() for e in boundary(word).terms)
    ['[2,0,3][1][4]', '[2,0][3][1,4]', '[2][0,3][1,4]']
    """
    ring = chain.ring
    acc: dict[SymBasisElement, object] = {}
    for elem, coeff in chain.terms.items():
        for sign, face_elem in _boundary_terms(elem):
            delta = ring.mul(coeff, ring.coerce(sign))
            acc[face_elem] = ring.add(acc.get(face_elem, ring.zero), delta)
    return SymChain(chain.p, chain.degree - 1, acc, chain.ring)


def sigma_act(g: Permutation, chain: SymChain) -> SymChain:
    """Relabel generators by ``g`` and canonicalize (signs may appear).

    The action satisfies sigma_act(g, sigma_act(h, x)) == sigma_act(h * g, x)
    for the left-to-right permutation product.
    """
    if g.size != chain.p + 1:
        raise DomainError(
            f"permutation acts on {g.size} letters but chains use "
            f"{chain.p + 1} generators")
    ring = chain.ring
    acc: dict[SymBasisElement, object] = {}
    for elem, coeff in chain.terms.items():
        relabeled = tuple(tuple(g(x) for x in blk) for blk in elem.blocks)
        sign, canonical = canonicalize(chain.p, relabeled)
        delta = ring.mul(coeff, ring.coerce(sign))
        acc[canonical] = ring.add(acc.get(canonical, ring.zero), delta)
    return SymChain(chain.p, chain.degree, acc, chain.ring)


def b_cycle(p: int, ring: Ring = ZZ) -> SymChain:
    """The alternating sum of cyclic shifts of the full word, a cycle.

    The k-th shift z_k z_{k+1} ... z_{k+p} (indices mod p+1) enters with
    sign (-1)^{k*p}.

    >>> b_cycle(1).terms == {SymBasisElement(1, ((0, 1),)): 1,
    ...                      SymBasisElement(1, ((1, 0),)): -1}
    True
    """
    if p < 0:
        raise DomainError(f"generator index must be non-negative, got {p}")
    terms = {}
    for k in range(p + 1):
        word = tuple((k + t) % (p + 1) for t in range(p + 1))
        terms[SymBasisElement(p, (word,))] = (-1) ** (k * p)
    return SymChain(p, p, terms, ring)


def box_product(left: SymChain, right: SymChain) -> SymChain:
    """Concatenation product: relabel the right factor's generator r to
    r + p + 1 and append its blocks.  Bilinear; degree and generator counts
    add (with one extra generator).

    >>> z0 = SymChain.from_word(0)
    >>> box_product(z0, z0).terms == {SymBasisElement(1, ((0,), (1,))): 1}
    True
    """
    if left.ring != right.ring:
        raise DomainError("operands must share a coefficient ring")
    p, q = left.p, right.p
    shift = p + 1
    new_p = p + q + 1
    new_degree = left.degree + right.degree
    ring = left.ring
    acc: dict[SymBasisElement, object] = {}
    for lelem, lc in left.terms.items():
        for relem, rc in right.terms.items():
            blocks = lelem.blocks + tuple(
                tuple(x + shift for x in blk) for blk in relem.blocks)
            elem = SymBasisElement(new_p, blocks)
            coeff = ring.mul(lc, rc)
            acc[elem] = ring.add(acc.get(elem, ring.zero), coeff)
    return SymChain(new_p, new_degree, acc, ring)


def block_transpose_permutation(p: int, q: int) -> Permutation:
    """The relabelling that swaps the two factors of the product:
    0..q -> p+1..p+q+1 and q+1..p+q+1 -> 0..p, order-preservingly.

    With it, twisted commutativity reads
    ``box_product(Y, Z) == (-1)**(i*j) * sigma_act(g, box_product(Z, Y))``.
    """
    size = p + q + 2
    images = [0] * size
    for x in range(q + 1):
        images[x] = x + p + 1
    for x in range(q + 1, size):
        images[x] = x - q - 1
    return Permutation(images)


def build_complex(p: int, ring: Ring = ZZ) -> ChainComplexDesc:
    """Assemble the degree-p complex: ranks and boundary matrices in the
    canonical basis order of :func:`enumerate_basis`.

    >>> build_complex(2).ranks
    {0: 1, 1: 6, 2: 6}
    """
    if p < 0:
        raise DomainError(f"generator index must be non-negative, got {p}")
    ranks = {i: basis_rank(p, i) for i in range(p + 1)}
    boundaries = {}
    for i in range(1, p + 1):
        target_index = _basis_index(p, i - 1)
        entries = []
        for col, elem in enumerate(enumerate_basis(p, i)):
            acc: dict[int, int] = {}
            for sign, face_elem in _boundary_terms(elem):
                row = target_index[face_elem]
                acc[row] = acc.get(row, 0) + sign
            entries.extend((row, col, v) for row, v in acc.items() if v)
        boundaries[i] = SparseExactMatrix(
            ranks[i - 1], ranks[i], entries, ZZ).with_ring(ring)
    return ChainComplexDesc(ring, ranks, boundaries)
