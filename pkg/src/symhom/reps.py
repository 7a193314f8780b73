"""Symmetric-group characters and their occurrence in block-word homology.

The symmetric group on ``p + 1`` letters acts on the degree-``i`` chains
of the block-word complex by relabelling letters (with the block-order
sign).  This module computes:

* irreducible characters of small symmetric groups by the
  Murnaghan-Nakayama rule, with exact rational class-function
  arithmetic;
* the character of the action induced on homology, either through
  explicit induced matrices (small ``p``) or, in the top degree, through
  the orbit of the alternating cycle under coset representatives of the
  cyclic subgroup -- which avoids kernel computations entirely;
* the character induced from a cyclic subgroup, by the standard
  averaging formula, as an independent cross-check;
* Lefschetz numbers (alternating traces) on chains and on homology;
* integral homology of symmetric groups up to degree three via the
  normalized bar complex, used as an oracle for torsion classes;
* a connectivity report comparing proven and conjectured vanishing
  ranges of the block-word homology.

Permutations follow the conventions of :mod:`symhom.deltas`: products
compose left to right, and the chain action satisfies
``act(g, act(h, x)) == act(h * g, x)``.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, isqrt

from .deltas import Permutation
from .errors import DomainError, ValidationError
from .homology import (ChainComplexDesc, HomologyResult, homology,
                       induced_map_on_homology)
from .linalg import SparseExactMatrix, rank
from .rings import QQ, Ring, ZZ
from .symcomplex import (SymChain, b_cycle, basis_rank, build_complex,
                         enumerate_basis, sigma_act)

# ---------------------------------------------------------------------------
# Partitions and conjugacy classes


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple:
    """All partitions of ``n`` as descending tuples, largest part first.

    >>> partitions(4)
    ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    """
    if n < 0:
        raise DomainError("cannot partition a negative integer")
    if n == 0:
        return ((),)
    out = []

    def grow(remaining, cap, prefix):
        if remaining == 0:
            out.append(prefix)
            return
        for part in range(min(cap, remaining), 0, -1):
            grow(remaining - part, part, prefix + (part,))

    grow(n, n, ())
    return tuple(out)


def partition_string(lam: tuple) -> str:
    """Render a partition as ``3+1+1`` (empty partition: ``0``)."""
    return "+".join(str(part) for part in lam) if lam else "0"


def parse_partition(text: str) -> tuple:
    try:
        parts = tuple(int(x) for x in text.split("+"))
    except ValueError:
        raise ValidationError(f"malformed partition string {text!r}") from None
    if parts == (0,):
        return ()
    if any(p < 1 for p in parts) or any(
            a < b for a, b in zip(parts, parts[1:])):
        raise ValidationError(
            f"partition parts must be positive and descending: {text!r}")
    return parts


def centralizer_order(lam: tuple) -> int:
    """Order of the centralizer of a permutation with cycle type ``lam``."""
    z = 1
    for length, group in itertools.groupby(lam):
        m = len(tuple(group))
        z *= length ** m * factorial(m)
    return z


def class_size(lam: tuple) -> int:
    """Number of permutations with cycle type ``lam``."""
    return factorial(sum(lam)) // centralizer_order(lam)


def class_representative(lam: tuple) -> Permutation:
    """A permutation of cycle type ``lam``: descending cycle lengths on
    consecutive blocks of letters.

    >>> class_representative((3, 1)).images
    (1, 2, 0, 3)
    """
    images = []
    start = 0
    for length in lam:
        images.extend([start + (j + 1) % length for j in range(length)])
        start += length
    return Permutation(images)


class ClassFunction:
    """An exact class function on the symmetric group of degree ``n``.

    Values are stored per cycle type and kept as ``Fraction``.

    >>> triv = ClassFunction(2, {(2,): 1, (1, 1): 1})
    >>> sgn = ClassFunction(2, {(2,): -1, (1, 1): 1})
    >>> triv.inner(sgn), triv.inner(triv)
    (Fraction(0, 1), Fraction(1, 1))
    """

    __slots__ = ("n", "values")

    def __init__(self, n: int, values: dict):
        expected = set(partitions(n))
        vals = {}
        for lam, v in values.items():
            lam = tuple(lam)
            if lam not in expected:
                raise DomainError(f"{lam} is not a cycle type of degree {n}")
            vals[lam] = Fraction(v)
        missing = expected - set(vals)
        if missing:
            raise DomainError(
                f"missing values at cycle types {sorted(missing)}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "values",
                           {lam: vals[lam] for lam in partitions(n)})

    def __setattr__(self, name, value):
        raise AttributeError("ClassFunction is immutable")

    def __call__(self, lam: tuple) -> Fraction:
        lam = tuple(lam)
        if lam not in self.values:
            raise DomainError(f"{lam} is not a cycle type of degree {self.n}")
        return self.values[lam]

    @property
    def degree(self) -> Fraction:
        """Value at the identity (cycle type all ones)."""
        return self.values[(1,) * self.n] if self.n else self.values[()]

    def _binop(self, other, flip):
        if not isinstance(other, ClassFunction) or other.n != self.n:
            raise DomainError("class functions live on different groups")
        return ClassFunction(self.n, {
            lam: self.values[lam] - other.values[lam] if flip
            else self.values[lam] + other.values[lam]
            for lam in self.values})

    def __add__(self, other):
        return self._binop(other, False)

    def __sub__(self, other):
        return self._binop(other, True)

    def scale(self, scalar) -> "ClassFunction":
        s = Fraction(scalar)
        return ClassFunction(self.n,
                             {lam: s * v for lam, v in self.values.items()})

    def inner(self, other: "ClassFunction") -> Fraction:
        """Normalized inner product, weighting each class by its size."""
        if not isinstance(other, ClassFunction) or other.n != self.n:
            raise DomainError("class functions live on different groups")
        total = sum(class_size(lam) * self.values[lam] * other.values[lam]
                    for lam in self.values)
        return Fraction(total, factorial(self.n))

    def to_json_dict(self) -> dict:
        return {partition_string(lam): (int(v) if v.denominator == 1
                                        else str(v))
                for lam, v in self.values.items()}

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.n == other.n and self.values == other.values

    def __repr__(self):
        body = ", ".join(f"{partition_string(lam)}: {v}"
                         for lam, v in self.values.items())
        return f"ClassFunction(n={self.n}, {{{body}}})"


# ---------------------------------------------------------------------------
# Irreducible characters (Murnaghan-Nakayama)


def _beta_to_partition(beta: tuple) -> tuple:
    ell = len(beta)
    lam = tuple(b - (ell - 1 - i) for i, b in enumerate(beta))
    return tuple(part for part in lam if part > 0)


@lru_cache(maxsize=None)
def _mn_value(lam: tuple, mu: tuple) -> int:
    """Character value by border-strip removal on first-column beta numbers."""
    if not mu:
        return 1 if not lam else 0
    k, rest = mu[0], mu[1:]
    ell = len(lam)
    beta = tuple(lam[i] + (ell - 1 - i) for i in range(ell))
    in_beta = set(beta)
    total = 0
    for b in beta:
        if b - k < 0 or (b - k) in in_beta:
            continue
        height = sum(1 for x in beta if b - k < x < b)
        new_beta = tuple(sorted([x for x in beta if x != b] + [b - k],
                                reverse=True))
        total += (-1) ** height * _mn_value(_beta_to_partition(new_beta), rest)
    return total


@lru_cache(maxsize=None)
def irreducible_characters(n: int) -> dict:
    """All irreducible characters of the symmetric group of degree ``n``,
    keyed by partition, in the order of :func:`partitions`.

    >>> chars = irreducible_characters(3)
    >>> chars[(3,)].values
    {(3,): Fraction(1, 1), (2, 1): Fraction(1, 1), (1, 1, 1): Fraction(1, 1)}
    """
    if n < 0:
        raise DomainError("degree must be nonnegative")
    return {lam: ClassFunction(n, {mu: _mn_value(lam, mu)
                                   for mu in partitions(n)})
            for lam in partitions(n)}


def trivial_character(n: int) -> ClassFunction:
    return ClassFunction(n, {lam: 1 for lam in partitions(n)})


def sign_character(n: int) -> ClassFunction:
    return ClassFunction(n, {lam: (-1) ** (n - len(lam))
                             for lam in partitions(n)})


def decompose(chi: ClassFunction) -> dict:
    """Multiplicities of ``chi`` against all irreducibles, as Fractions."""
    return {lam: chi.inner(irr)
            for lam, irr in irreducible_characters(chi.n).items()}


# ---------------------------------------------------------------------------
# Chain-level action


@lru_cache(maxsize=None)
def shared_complex(p: int, ring: Ring = ZZ) -> ChainComplexDesc:
    """The block-word complex, built once per ``(p, ring)`` and shared so
    homology caches accumulate across callers."""
    return build_complex(p, ring)


def chain_action_matrix(p: int, i: int, g: Permutation,
                        ring: Ring = QQ) -> SparseExactMatrix:
    """Matrix of letter relabelling by ``g`` on degree-``i`` chains."""
    if g.size != p + 1:
        raise DomainError(
            f"permutation of size {g.size} cannot act on {p + 1} letters")
    basis = enumerate_basis(p, i)
    index = {elem: k for k, elem in enumerate(basis)}
    entries = []
    for col, elem in enumerate(basis):
        moved = sigma_act(g, SymChain.single(elem, ring=ring))
        for target, coeff in moved.terms.items():
            entries.append((index[target], col, coeff))
    return SparseExactMatrix(len(basis), len(basis), entries, ring)


def chain_character(p: int, g: Permutation) -> dict:
    """Signed trace of the relabelling action on each chain degree."""
    if g.size != p + 1:
        raise DomainError(
            f"permutation of size {g.size} cannot act on {p + 1} letters")
    out = {}
    for i in range(p + 1):
        total = 0
        for elem in enumerate_basis(p, i):
            moved = sigma_act(g, SymChain.single(elem))
            coeff = moved.terms.get(elem)
            if coeff is not None:
                total += coeff
        out[i] = total
    return out


# ---------------------------------------------------------------------------
# Homology characters


def _integral_trace(matrix: SparseExactMatrix) -> int:
    total = sum((v for r, c, v in matrix.entries if r == c),
                Fraction(0))
    total = Fraction(total)
    if total.denominator != 1:
        raise ValidationError(f"trace {total} is not an integer")
    return int(total)


def homology_character(p: int, i: int) -> ClassFunction:
    """Character of the degree-``i`` homology representation, via explicit
    induced matrices on a shared rational complex.

    Feasible for small ``p`` (the kernel computation is dense); the top
    degree of larger complexes should use
    :func:`top_homology_character` instead.
    """
    C = shared_complex(p, QQ)
    values = {}
    for lam in partitions(p + 1):
        g = class_representative(lam)
        M = chain_action_matrix(p, i, g, QQ)
        induced = induced_map_on_homology(C, i, M)
        values[lam] = _integral_trace(induced)
    return ClassFunction(p + 1, values)


@lru_cache(maxsize=None)
def _coset_table(p: int):
    """Left cosets of the cyclic subgroup generated by the long cycle.

    Returns ``(reps, lookup)`` where ``lookup[w] = (coset index, sign of
    the cyclic part raised to p)``.
    """
    n = p + 1
    cyc = Permutation(tuple((j + 1) % n for j in range(n)))
    powers = [Permutation.identity(n)]
    while len(powers) < n:
        powers.append(powers[-1] * cyc)
    reps, lookup = [], {}
    for images in itertools.permutations(range(n)):
        w = Permutation(images)
        if w in lookup:
            continue
        k = len(reps)
        reps.append(w)
        for z in powers:
            eps = z.sign() ** p if p % 2 else 1
            lookup[z * w] = (k, eps)
    return tuple(reps), lookup


def top_homology_character(p: int, *, certify: bool = True) -> ClassFunction:
    """Character of the top-degree homology, computed from the orbit of
    the alternating cycle under coset representatives.

    The top chain group has no incoming boundary, so the span of the
    translates of the alternating top cycle sits inside homology; the
    cyclic subgroup acts on the cycle by the sign raised to ``p``, so
    translates are indexed by cosets and the action permutes them with
    signs.  With ``certify`` the translates are checked to be linearly
    independent and to exhaust homology (their number equals the Betti
    number), so the combinatorial character below is certified to be the
    homology character.
    """
    if p < 1:
        raise DomainError("top-degree character needs p >= 1")
    n = p + 1
    reps, lookup = _coset_table(p)
    if certify:
        b = b_cycle(p, QQ)
        dim = basis_rank(p, p)
        basis = enumerate_basis(p, p)
        index = {elem: k for k, elem in enumerate(basis)}
        entries = []
        for row, g in enumerate(reps):
            vec = sigma_act(g, b)
            for elem, coeff in vec.terms.items():
                entries.append((row, index[elem], coeff))
        translates = SparseExactMatrix(len(reps), dim, entries, QQ)
        if rank(translates, QQ) != len(reps):
            raise ValidationError(
                "translates of the alternating cycle are not independent")
        C = shared_complex(p, QQ)
        betti = homology(C, p).betti
        if betti != len(reps):
            raise ValidationError(
                f"top homology has rank {betti}, expected {len(reps)}")
    values = {}
    for lam in partitions(n):
        w = class_representative(lam)
        trace = 0
        for k, g in enumerate(reps):
            k2, eps = lookup[g * w]
            if k2 == k:
                trace += eps
        values[lam] = trace
    return ClassFunction(n, values)


def induced_character_from_cyclic(n: int, power: int) -> ClassFunction:
    """Character induced from the cyclic subgroup generated by the long
    cycle, starting from its sign character raised to ``power``.

    Computed by the averaging formula (sum over conjugators), entirely
    independently of any homology machinery.
    """
    if n < 1:
        raise DomainError("group degree must be positive")
    cyc = Permutation(tuple((j + 1) % n for j in range(n)))
    powers = [Permutation.identity(n)]
    while len(powers) < n:
        powers.append(powers[-1] * cyc)
    eps = {z: (z.sign() ** power if power % 2 else 1) for z in powers}
    values = {}
    for lam in partitions(n):
        w = class_representative(lam)
        total = 0
        for images in itertools.permutations(range(n)):
            x = Permutation(images)
            conj = x * w * x.inverse()
            if conj in eps:
                total += eps[conj]
        values[lam] = Fraction(total, n)
    return ClassFunction(n, values)


def lefschetz_numbers(p: int, lam: tuple) -> tuple:
    """Alternating trace of the class ``lam`` action on chains and on
    homology; the two agree for any chain endomorphism.

    Returns ``(chain_side, homology_side)``.
    """
    g = class_representative(lam)
    chain_side = sum((-1) ** i * t for i, t in chain_character(p, g).items())
    C = shared_complex(p, QQ)
    homology_side = 0
    for i in range(p + 1):
        if homology(C, i).betti == 0:
            continue
        M = chain_action_matrix(p, i, g, QQ)
        homology_side += (-1) ** i * _integral_trace(
            induced_map_on_homology(C, i, M))
    return chain_side, homology_side


# ---------------------------------------------------------------------------
# Group homology of small symmetric groups (normalized bar complex)


def group_homology_small(n: int, i: int) -> HomologyResult:
    """Integral homology ``H_i`` of the symmetric group on ``n`` letters,
    from the normalized bar complex (tuples of non-identity elements).

    Supported for ``n <= 4`` and ``i <= 3``; the top supported cases for
    ``n = 4`` are expensive and meant for one-off oracle runs.

    >>> group_homology_small(2, 1).torsion
    (2,)
    """
    if not 1 <= n <= 4:
        raise DomainError(f"group degree {n} outside supported range 1..4")
    if not 0 <= i <= 3:
        raise DomainError(f"homology degree {i} outside supported range 0..3")
    elements = [Permutation(images)
                for images in itertools.permutations(range(n))]
    identity = Permutation.identity(n)
    nontrivial = [g for g in elements if g != identity]
    pos = {g: k for k, g in enumerate(nontrivial)}
    e = len(nontrivial)

    def tuple_index(tup) -> int:
        idx = 0
        for g in tup:
            idx = idx * e + pos[g]
        return idx

    top = i + 1
    ranks = {j: e ** j for j in range(top + 1)}
    boundaries = {}
    for j in range(1, top + 1):
        entries = []
        for col, tup in enumerate(itertools.product(nontrivial, repeat=j)):
            acc = {}

            def put(target, sign):
                k = tuple_index(target)
                acc[k] = acc.get(k, 0) + sign

            put(tup[1:], 1)
            for k in range(j - 1):
                glued = tup[k] * tup[k + 1]
                if glued != identity:
                    put(tup[:k] + (glued,) + tup[k + 2:], (-1) ** (k + 1))
            put(tup[:-1], (-1) ** j)
            entries.extend((row, col, v) for row, v in acc.items() if v)
        boundaries[j] = SparseExactMatrix(e ** (j - 1), e ** j, entries, ZZ)
    complex_desc = ChainComplexDesc(ZZ, ranks, boundaries,
                                    truncated_above=True)
    return homology(complex_desc, i)


# ---------------------------------------------------------------------------
# Connectivity


def guaranteed_vanishing_bound(p: int) -> int:
    """Largest degree through which homology provably vanishes."""
    if p < 1:
        raise DomainError("connectivity bounds need p >= 1")
    return (2 * (p - 1)) // 3


def conjectured_vanishing_bound(p: int) -> int:
    """Conjectured improvement: vanishing through degree ``p - r`` where
    ``r`` is the largest integer with ``r(r+1) <= 2p + 2``."""
    if p < 1:
        raise DomainError("connectivity bounds need p >= 1")
    r = (isqrt(8 * p + 9) - 1) // 2
    while (r + 1) * (r + 2) <= 2 * p + 2:
        r += 1
    while r * (r + 1) > 2 * p + 2:
        r -= 1
    return p - r


def connectivity_report(p: int, ring: Ring = ZZ) -> dict:
    """Betti numbers of the block-word complex against the proven and
    conjectured vanishing bounds.

    The proven bound is asserted; the conjectured one is only reported
    (``conjecture_consistent``), never enforced.
    """
    C = shared_complex(p, ring)
    betti = {i: homology(C, i).betti for i in range(p + 1)}
    proven = guaranteed_vanishing_bound(p)
    conjectured = conjectured_vanishing_bound(p)
    for i in range(proven + 1):
        if betti[i] != 0:
            raise ValidationError(
                f"homology in degree {i} is nonzero inside the proven "
                f"vanishing range (p={p})")
    first_nonzero = next((i for i in range(p + 1) if betti[i]), None)
    return {
        "p": p,
        "betti": betti,
        "proven_vanishing_through": proven,
        "conjectured_vanishing_through": conjectured,
        "first_nonzero_degree": first_nonzero,
        "conjecture_consistent": first_nonzero is None
        or first_nonzero > conjectured,
    }


def sign_multiplicity_report(p: int) -> dict:
    """Multiplicity of the sign character in each nonzero homology degree
    (small ``p``); experimental data for the conjectured range."""
    sgn = sign_character(p + 1)
    C = shared_complex(p, QQ)
    out = {}
    for i in range(p + 1):
        if homology(C, i).betti == 0:
            continue
        chi = homology_character(p, i) if i < p else top_homology_character(p)
        out[i] = chi.inner(sgn)
    return out
