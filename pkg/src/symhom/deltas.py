"""Combinatorics of the crossed simplicial category of symmetric groups.

Objects are the finite ordinals ``[n] = {0, 1, ..., n}``, represented by
the plain integer ``n``.  A morphism ``f: [m] -> [n]`` is a set map
together with a chosen total order on every preimage; we store it as the
tuple of its ordered fibers::

    fibers[i] == the preimage of i, as a tuple in its chosen order.

Composition concatenates fibers: the fiber of ``i`` under ``g . f``
lists ``g``'s fiber of ``i`` in order, replacing each ``j`` by ``f``'s
fiber of ``j``.  Every morphism factors *uniquely* as an automorphism of
the source followed by a weakly increasing map; the automorphism reads
off the concatenated fibers.

Convention for permutations: ``Permutation.images[j]`` is the image of
``j``, and products compose left to right (``(p * q)(x) == q(p(x))``).
With that convention ``to_permutation`` is an anti-homomorphism with
respect to categorical composition: ``to_permutation(g . f) ==
to_permutation(f) * to_permutation(g)``.  Equivalently it is covariant
for diagrammatic composition ``compose(f, g)``.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb, factorial

from .errors import CompositionError, DomainError, ValidationError


class Permutation:
    """A permutation of ``{0, ..., k-1}`` in one-line notation.

    >>> s = Permutation((1, 2, 0))
    >>> s(0), s(1), s(2)
    (1, 2, 0)
    >>> (s * s).images          # apply s, then s again
    (2, 0, 1)
    >>> s.inverse().images
    (2, 0, 1)
    >>> s.sign(), s.cycle_type()
    (1, (3,))
    """

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise DomainError(f"not a permutation of 0..{len(images) - 1}: {images}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, size: int) -> "Permutation":
        return cls(range(size))

    @classmethod
    def transposition(cls, size: int, a: int, b: int) -> "Permutation":
        images = list(range(size))
        images[a], images[b] = images[b], images[a]
        return cls(images)

    @classmethod
    def from_cycles(cls, size: int, cycles) -> "Permutation":
        """Build from disjoint cycles, e.g. ``from_cycles(4, [(0, 1, 2)])``."""
        images = list(range(size))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + type(cyc)((cyc[0],))):
                if images[a] != a:
                    raise DomainError("cycles are not disjoint")
                images[a] = b
        return cls(images)

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # Left-to-right: apply self first, then other.
        if self.size != other.size:
            raise DomainError("size mismatch in permutation product")
        return Permutation(tuple(other.images[x] for x in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for j, i in enumerate(self.images):
            inv[i] = j
        return Permutation(inv)

    def as_morphism(self) -> "DeltaSMorphism":
        """The corresponding automorphism of ``[size - 1]`` (singleton fibers)."""
        fibers = [None] * len(self.images)
        for j, i in enumerate(self.images):
            fibers[i] = (j,)
        return DeltaSMorphism(fibers)

    def sign(self) -> int:
        return -1 if sum(ell - 1 for ell in self.cycle_type()) % 2 else 1

    def cycle_type(self) -> tuple:
        """Cycle lengths in weakly decreasing order (a partition of ``size``)."""
        seen = [False] * len(self.images)
        lengths = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            ell, x = 0, start
            while not seen[x]:
                seen[x] = True
                x = self.images[x]
                ell += 1
            lengths.append(ell)
        return tuple(sorted(lengths, reverse=True))

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(("Permutation", self.images))

    def __repr__(self):
        return f"Permutation({self.images})"


class OrderPreservingMap:
    """A weakly increasing map ``[m] -> [n]``, stored by its value tuple.

    >>> OrderPreservingMap((0, 0, 1), 1).values
    (0, 0, 1)
    """

    __slots__ = ("values", "target")

    def __init__(self, values, target: int):
        values = tuple(int(v) for v in values)
        if not values:
            raise DomainError("empty source ordinal")
        if any(b < a for a, b in zip(values, values[1:])):
            raise DomainError(f"values not weakly increasing: {values}")
        if target < 0 or any(v < 0 or v > target for v in values):
            raise DomainError(f"values {values} not within 0..{target}")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "target", target)

    def __setattr__(self, name, value):
        raise AttributeError("OrderPreservingMap is immutable")

    @property
    def source(self) -> int:
        return len(self.values) - 1

    @property
    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.target + 1))

    def __call__(self, x: int) -> int:
        return self.values[x]

    def as_morphism(self) -> "DeltaSMorphism":
        """The same map with every fiber in increasing order."""
        fibers = [[] for _ in range(self.target + 1)]
        for j, i in enumerate(self.values):
            fibers[i].append(j)
        return DeltaSMorphism(fibers)

    def __eq__(self, other):
        return (isinstance(other, OrderPreservingMap)
                and self.values == other.values and self.target == other.target)

    def __hash__(self):
        return hash(("OrderPreservingMap", self.values, self.target))

    def __repr__(self):
        return f"OrderPreservingMap({self.values}, target={self.target})"


class DeltaSMorphism:
    """A morphism ``[m] -> [n]``: a set map with totally ordered fibers.

    >>> f = DeltaSMorphism([(2, 0), (1,)])      # f: [2] -> [1]
    >>> f.source, f.target, f.is_epi
    (2, 1, True)
    >>> f.underlying_map()
    (0, 1, 0)
    >>> f.to_string()
    '2->1:[2,0|1]'
    """

    __slots__ = ("fibers", "source", "target")

    def __init__(self, fibers):
        fibers = tuple(tuple(int(x) for x in f) for f in fibers)
        if not fibers:
            raise DomainError("target ordinal must have at least one element")
        flat = [x for f in fibers for x in f]
        m = len(flat) - 1
        if m < 0:
            raise DomainError("source ordinal must have at least one element")
        if sorted(flat) != list(range(m + 1)):
            raise DomainError(
                f"fibers must partition 0..{m}, got {fibers}")
        object.__setattr__(self, "fibers", fibers)
        object.__setattr__(self, "source", m)
        object.__setattr__(self, "target", len(fibers) - 1)

    def __setattr__(self, name, value):
        raise AttributeError("DeltaSMorphism is immutable")

    @classmethod
    def identity(cls, n: int) -> "DeltaSMorphism":
        return cls([(j,) for j in range(n + 1)])

    # -- structure ----------------------------------------------------

    @property
    def is_epi(self) -> bool:
        """Epimorphism == every fiber nonempty (underlying map surjective)."""
        return all(self.fibers)

    @property
    def is_automorphism(self) -> bool:
        return self.source == self.target and all(len(f) == 1 for f in self.fibers)

    def underlying_map(self) -> tuple:
        """The value tuple ``j -> f(j)`` of the underlying set map."""
        values = [0] * (self.source + 1)
        for i, fiber in enumerate(self.fibers):
            for j in fiber:
                values[j] = i
        return tuple(values)

    def then(self, other: "DeltaSMorphism") -> "DeltaSMorphism":
        """Diagrammatic composite: ``self`` then ``other``."""
        if self.target != other.source:
            raise CompositionError(
                f"cannot compose [{self.source}]->[{self.target}] "
                f"with [{other.source}]->[{other.target}]")
        return DeltaSMorphism(
            tuple(x for j in fiber for x in self.fibers[j])
            for fiber in other.fibers)

    def factorize(self) -> tuple:
        """Unique factorization ``self = increasing . permutation``.

        Returns ``(sigma, phi)`` with ``sigma`` a Permutation of the
        source and ``phi`` an OrderPreservingMap, such that
        ``compose(sigma.as_morphism(), phi.as_morphism()) == self``.

        >>> sigma, phi = DeltaSMorphism([(2, 0), (1,)]).factorize()
        >>> sigma.images, phi.values
        ((1, 2, 0), (0, 0, 1))
        """
        concat = [x for fiber in self.fibers for x in fiber]
        images = [0] * len(concat)
        for position, element in enumerate(concat):
            images[element] = position
        values = [i for i, fiber in enumerate(self.fibers) for _ in fiber]
        return Permutation(images), OrderPreservingMap(values, self.target)

    # -- serialization ------------------------------------------------

    def to_string(self) -> str:
        body = "|".join(",".join(str(x) for x in fiber) for fiber in self.fibers)
        return f"{self.source}->{self.target}:[{body}]"

    @classmethod
    def from_string(cls, text: str) -> "DeltaSMorphism":
        try:
            head, body = text.split(":", 1)
            m_str, n_str = head.split("->")
            m, n = int(m_str), int(n_str)
            if not (body.startswith("[") and body.endswith("]")):
                raise ValueError("missing brackets")
            segments = body[1:-1].split("|")
            fibers = tuple(
                tuple(int(x) for x in seg.split(",")) if seg else ()
                for seg in segments)
        except (ValueError, IndexError) as exc:
            raise ValidationError(f"malformed morphism string {text!r}: {exc}") from None
        try:
            f = cls(fibers)
        except DomainError as exc:
            raise ValidationError(
                f"malformed morphism string {text!r}: {exc}") from None
        if f.source != m or f.target != n:
            raise ValidationError(
                f"morphism string {text!r} declares [{m}]->[{n}] but fibers "
                f"describe [{f.source}]->[{f.target}]")
        return f

    def __eq__(self, other):
        return isinstance(other, DeltaSMorphism) and self.fibers == other.fibers

    def __hash__(self):
        return hash(("DeltaSMorphism", self.fibers))

    def __repr__(self):
        return f"DeltaSMorphism.from_string({self.to_string()!r})"


def compose(f: DeltaSMorphism, g: DeltaSMorphism) -> DeltaSMorphism:
    """Diagrammatic composite ``g . f`` of ``f: [m]->[n]`` and ``g: [n]->[p]``."""
    return f.then(g)


def to_permutation(f: DeltaSMorphism) -> Permutation:
    """The underlying bijection of an automorphism of ``[n]``.

    Anti-homomorphism law (left-to-right permutation product):
    ``to_permutation(compose(f, g)) == to_permutation(f) * to_permutation(g)``.
    """
    if not f.is_automorphism:
        raise DomainError(f"{f!r} is not an automorphism")
    images = [0] * (f.source + 1)
    for i, (j,) in enumerate(f.fibers):
        images[j] = i
    return Permutation(images)


# -- counting and enumeration ----------------------------------------


def epi_count(m: int, n: int) -> int:
    """Number of epimorphisms ``[m] -> [n]``: ``(m+1)! * C(m, n)``."""
    if m < 0 or n < 0:
        raise DomainError("ordinals must be nonnegative")
    return factorial(m + 1) * comb(m, n)


def hom_count(m: int, n: int) -> int:
    """Total number of morphisms ``[m] -> [n]``: ``(m+1)! * C(m+n+1, n)``."""
    if m < 0 or n < 0:
        raise DomainError("ordinals must be nonnegative")
    return factorial(m + 1) * comb(m + n + 1, n)


def _compositions(total: int, parts: int, minimum: int):
    """All tuples of `parts` ints >= minimum summing to `total`, lexicographic."""
    if parts == 1:
        if total >= minimum:
            yield (total,)
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, minimum):
            yield (first,) + rest


def _cut(sequence, sizes):
    fibers, start = [], 0
    for s in sizes:
        fibers.append(sequence[start:start + s])
        start += s
    return fibers


@lru_cache(maxsize=None)
def enumerate_epis(m: int, n: int) -> tuple:
    """All epimorphisms ``[m] -> [n]`` in a fixed deterministic order.

    Order: lexicographic on the fiber-size vector, then lexicographic on
    the concatenated fiber contents.  The count matches ``epi_count``.

    >>> [f.to_string() for f in enumerate_epis(1, 0)]
    ['1->0:[0,1]', '1->0:[1,0]']
    """
    if n > m:
        return ()
    out = []
    for sizes in _compositions(m + 1, n + 1, 1):
        for perm in itertools.permutations(range(m + 1)):
            out.append(DeltaSMorphism(_cut(perm, sizes)))
    return tuple(out)


def enumerate_morphisms(m: int, n: int) -> tuple:
    """All morphisms ``[m] -> [n]`` (exhaustive; meant for small ordinals)."""
    out = []
    for sizes in _compositions(m + 1, n + 1, 0):
        for perm in itertools.permutations(range(m + 1)):
            out.append(DeltaSMorphism(_cut(perm, sizes)))
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_increasing_epis(m: int, n: int) -> tuple:
    """All weakly increasing surjections ``[m] -> [n]``; there are ``C(m, n)``."""
    out = []
    for sizes in _compositions(m + 1, n + 1, 1):
        values = [i for i, s in enumerate(sizes) for _ in range(s)]
        out.append(OrderPreservingMap(values, n))
    return tuple(out)
