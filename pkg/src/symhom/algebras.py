"""Associative algebras with chosen bases, tensors over them, and the
action of fiber-ordered morphisms on tensor powers.

Three kinds of algebra are supported:

* ``finite_dim`` -- a finite-dimensional unital algebra presented by
  structure constants over an exact ring, with an optional augmentation
  (a linear functional to the ring, normally required to be an algebra
  map; a non-multiplicative linear functional can be attached only via
  an explicit opt-in flag).
* ``free_monoid`` -- the monoid algebra of the free monoid on a finite
  generating set.  Elements are words (tuples of generator indices),
  graded by word length.
* ``free_comm_monoid`` -- the monoid algebra of the free commutative
  monoid.  Elements are exponent vectors, graded by total degree.

Monoid algebras carry the canonical augmentation sending every
generator to zero; it is an algebra map because the product of two
nonempty words is nonempty.

Elements are referred to by basis index (``finite_dim``) or by their
word/exponent tuple (monoid kinds).  A :class:`Tensor` is an exact
linear combination of tensor monomials -- tuples of such elements -- of
a fixed arity.  The central operation is :func:`bsym_apply`: a
fiber-ordered morphism ``f: [m] -> [n]`` sends a tensor monomial with
``m + 1`` factors to the monomial with ``n + 1`` factors whose ``i``-th
factor is the product, in fiber order, of the inputs indexed by the
fiber of ``i``; an empty fiber contributes the unit.  This assignment
is functorial, which the tests check directly.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .deltas import DeltaSMorphism
from .errors import AugmentationError, DomainError, ValidationError
from .linalg import SparseExactMatrix, smith_normal_form
from .rings import Ring, ZZ

_KINDS = ("finite_dim", "free_monoid", "free_comm_monoid")


class AlgebraSpec:
    """An associative unital algebra with a distinguished basis.

    Instances are immutable and hashable; derived data (ideal bases,
    standard forms) is cached per instance.  Use the classmethod
    constructors -- they validate the axioms and report the first
    violated one by name.

    >>> A = AlgebraSpec.finite_dim(("1",), [(0, 0, 0, 1)], (1,))
    >>> A.dim, A.multiply(0, 0)
    (1, {0: 1})
    """

    __slots__ = ("kind", "ring", "name", "basis", "_mul", "unit", "aug",
                 "aug_is_algebra_map", "gens", "_intern")

    def __init__(self, *, kind, ring, name, basis=None, mul=None, unit=None,
                 aug=None, aug_is_algebra_map=False, gens=None):
        for field, value in (("kind", kind), ("ring", ring), ("name", name),
                             ("basis", basis), ("_mul", mul), ("unit", unit),
                             ("aug", aug),
                             ("aug_is_algebra_map", aug_is_algebra_map),
                             ("gens", gens)):
            object.__setattr__(self, field, value)
        object.__setattr__(self, "_intern", {})

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraSpec is immutable")

    # -- constructors --------------------------------------------------

    @classmethod
    def finite_dim(cls, basis, mul, unit, ring: Ring = ZZ, aug=None,
                   name=None, allow_projection_augmentation=False
                   ) -> "AlgebraSpec":
        """Build a finite-dimensional algebra from structure constants.

        ``basis`` is a sequence of distinct labels; ``mul`` an iterable
        of quadruples ``(i, j, l, c)`` meaning the product of basis
        elements ``i`` and ``j`` has coefficient ``c`` on basis element
        ``l`` (absent pairs multiply to zero); ``unit`` the coordinate
        vector of the multiplicative unit.  ``aug`` is an optional
        coordinate row of a functional sending the unit to one.  A
        non-multiplicative ``aug`` is rejected unless
        ``allow_projection_augmentation`` is set.
        """
        basis = tuple(str(b) for b in basis)
        d = len(basis)
        if d == 0:
            raise ValidationError("algebra must have at least one basis element")
        if len(set(basis)) != d:
            raise ValidationError(f"duplicate basis labels in {basis}")
        table = [[{} for _ in range(d)] for _ in range(d)]
        for quad in mul:
            i, j, l, c = quad
            if not (0 <= i < d and 0 <= j < d and 0 <= l < d):
                raise ValidationError(
                    f"structure constant {quad} indexes outside 0..{d - 1}")
            c = ring.coerce(c)
            if not ring.is_zero(c):
                cell = table[i][j]
                cell[l] = ring.add(cell.get(l, ring.zero), c)
        frozen = tuple(
            tuple(tuple(sorted(cell.items())) for cell in row) for row in table)
        unit = tuple(ring.coerce(c) for c in unit)
        if len(unit) != d:
            raise ValidationError(
                f"unit vector has length {len(unit)}, expected {d}")
        if aug is not None:
            aug = tuple(ring.coerce(c) for c in aug)
            if len(aug) != d:
                raise ValidationError(
                    f"augmentation vector has length {len(aug)}, expected {d}")
        spec = cls(kind="finite_dim", ring=ring, basis=basis, mul=frozen,
                   unit=unit, aug=aug, name=name or "A", gens=None)
        spec._validate_finite_dim(allow_projection_augmentation)
        return spec

    @classmethod
    def free_monoid(cls, gens=("t",), ring: Ring = ZZ, name=None
                    ) -> "AlgebraSpec":
        """The monoid algebra of the free monoid on ``gens``."""
        gens = tuple(str(g) for g in gens)
        if not gens or len(set(gens)) != len(gens):
            raise ValidationError(f"generators must be distinct and nonempty: {gens}")
        return cls(kind="free_monoid", ring=ring, gens=gens,
                   name=name or f"k<{','.join(gens)}>",
                   aug_is_algebra_map=True)

    @classmethod
    def free_comm_monoid(cls, gens=("t",), ring: Ring = ZZ, name=None
                         ) -> "AlgebraSpec":
        """The monoid algebra of the free commutative monoid on ``gens``."""
        gens = tuple(str(g) for g in gens)
        if not gens or len(set(gens)) != len(gens):
            raise ValidationError(f"generators must be distinct and nonempty: {gens}")
        return cls(kind="free_comm_monoid", ring=ring, gens=gens,
                   name=name or f"k[{','.join(gens)}]",
                   aug_is_algebra_map=True)

    # -- validation ----------------------------------------------------

    def _mul_coords(self, x: dict, y: dict) -> dict:
        """Product of two coordinate combinations (finite_dim only)."""
        ring, out = self.ring, {}
        for i, ci in x.items():
            row = self._mul[i]
            for j, cj in y.items():
                cij = ring.mul(ci, cj)
                for l, c in row[j]:
                    out[l] = ring.add(out.get(l, ring.zero), ring.mul(cij, c))
        return {l: c for l, c in out.items() if not ring.is_zero(c)}

    def _validate_finite_dim(self, allow_projection: bool) -> None:
        ring, d = self.ring, len(self.basis)
        unit = {i: c for i, c in enumerate(self.unit) if not ring.is_zero(c)}
        for i in range(d):
            e = {i: ring.one}
            if self._mul_coords(unit, e) != e:
                raise ValidationError(
                    f"unit axiom fails: 1 * {self.basis[i]} != {self.basis[i]}")
            if self._mul_coords(e, unit) != e:
                raise ValidationError(
                    f"unit axiom fails: {self.basis[i]} * 1 != {self.basis[i]}")
        for i in range(d):
            for j in range(d):
                ij = dict(self._mul[i][j])
                for k in range(d):
                    left = self._mul_coords(ij, {k: ring.one})
                    right = self._mul_coords({i: ring.one}, dict(self._mul[j][k]))
                    if left != right:
                        raise ValidationError(
                            f"associativity axiom fails at "
                            f"({self.basis[i]}, {self.basis[j]}, {self.basis[k]}): "
                            f"{left} != {right}")
        if self.aug is None:
            return
        aug_unit = sum((ring.mul(self.aug[i], c) for i, c in unit.items()),
                       ring.zero)
        if aug_unit != ring.one:
            raise ValidationError(
                f"augmentation axiom fails: aug(1) = {aug_unit} != 1")
        multiplicative = True
        witness = None
        for i in range(d):
            for j in range(d):
                lhs = sum((ring.mul(c, self.aug[l]) for l, c in self._mul[i][j]),
                          ring.zero)
                if lhs != ring.mul(self.aug[i], self.aug[j]):
                    multiplicative = False
                    witness = (i, j, lhs)
                    break
            if not multiplicative:
                break
        if not multiplicative and not allow_projection:
            i, j, lhs = witness
            raise ValidationError(
                f"augmentation axiom fails: aug is not an algebra map at "
                f"({self.basis[i]}, {self.basis[j]}): aug(product) = {lhs} != "
                f"aug({self.basis[i]}) * aug({self.basis[j]})")
        object.__setattr__(self, "aug_is_algebra_map", multiplicative)

    # -- basic queries -------------------------------------------------

    @property
    def dim(self):
        """Dimension over the ground ring, or ``None`` for monoid kinds."""
        return len(self.basis) if self.kind == "finite_dim" else None

    @property
    def has_augmentation(self) -> bool:
        return self.kind != "finite_dim" or self.aug is not None

    def intern(self, x):
        """Return a shared canonical copy of a monoid element tuple."""
        cached = self._intern.get(x)
        if cached is None:
            self._intern[x] = x
            cached = x
        return cached

    def check_element(self, x):
        """Validate and canonicalize an element reference."""
        if self.kind == "finite_dim":
            if not isinstance(x, int) or not 0 <= x < len(self.basis):
                raise DomainError(f"{x!r} is not a basis index of {self.name}")
            return x
        if not isinstance(x, tuple):
            raise DomainError(f"{x!r} is not a monoid element tuple")
        if self.kind == "free_monoid":
            if any(not isinstance(g, int) or not 0 <= g < len(self.gens)
                   for g in x):
                raise DomainError(f"word {x!r} uses unknown generators")
        else:
            if len(x) != len(self.gens) or any(e < 0 for e in x):
                raise DomainError(
                    f"{x!r} is not an exponent vector over {self.gens}")
        return self.intern(x)

    def unit_element(self):
        """The unit as a monoid element (monoid kinds only)."""
        if self.kind == "free_monoid":
            return ()
        if self.kind == "free_comm_monoid":
            return (0,) * len(self.gens)
        raise DomainError("finite_dim unit is a combination, not an element")

    def unit_combination(self) -> dict:
        """The multiplicative unit as an element-to-coefficient dict."""
        if self.kind == "finite_dim":
            return {i: c for i, c in enumerate(self.unit)
                    if not self.ring.is_zero(c)}
        return {self.unit_element(): self.ring.one}

    def multiply(self, x, y) -> dict:
        """Product of two elements as an element-to-coefficient dict."""
        if self.kind == "finite_dim":
            return dict(self._mul[x][y])
        if self.kind == "free_monoid":
            return {self.intern(x + y): self.ring.one}
        return {self.intern(tuple(a + b for a, b in zip(x, y))): self.ring.one}

    def aug_of(self, x):
        """Augmentation of a single element."""
        if self.kind == "finite_dim":
            if self.aug is None:
                raise AugmentationError(
                    f"algebra {self.name} carries no augmentation")
            return self.aug[x]
        return self.ring.one if x == self.unit_element() else self.ring.zero

    def weight_of(self, x) -> int:
        """Weight of an element: word length or total degree."""
        if self.kind == "free_monoid":
            return len(x)
        if self.kind == "free_comm_monoid":
            return sum(x)
        raise DomainError(
            f"algebra {self.name} is finite-dimensional and has no weight grading")

    def elements_of_weight(self, w: int) -> tuple:
        """All monomials of the given weight, in a fixed order."""
        if w < 0:
            raise DomainError("weight must be nonnegative")
        if self.kind == "free_monoid":
            return tuple(self.intern(word) for word in
                         itertools.product(range(len(self.gens)), repeat=w))
        if self.kind == "free_comm_monoid":
            return tuple(self.intern(exps) for exps in
                         _exponent_vectors(w, len(self.gens)))
        raise DomainError(
            f"algebra {self.name} is finite-dimensional and has no weight grading")

    def element_label(self, x) -> str:
        """Human-readable label: basis label, or word like ``t^2*s``."""
        if self.kind == "finite_dim":
            return self.basis[x]
        if self.kind == "free_monoid":
            if not x:
                return "1"
            parts = [(g, len(tuple(run)))
                     for g, run in itertools.groupby(x)]
            return "*".join(
                self.gens[g] if e == 1 else f"{self.gens[g]}^{e}"
                for g, e in parts)
        if all(e == 0 for e in x):
            return "1"
        return "*".join(
            self.gens[g] if e == 1 else f"{self.gens[g]}^{e}"
            for g, e in enumerate(x) if e)

    # -- serialization -------------------------------------------------

    def to_json_dict(self) -> dict:
        if self.kind == "finite_dim":
            out = {
                "kind": "finite_dim",
                "basis": list(self.basis),
                "mul": [[i, j, l, str(c)]
                        for i, row in enumerate(self._mul)
                        for j, cell in enumerate(row)
                        for l, c in cell],
                "unit": [str(c) for c in self.unit],
                "aug": None if self.aug is None else [str(c) for c in self.aug],
            }
            if self.aug is not None and not self.aug_is_algebra_map:
                out["allow_projection_augmentation"] = True
            return out
        return {"kind": self.kind, "gens": list(self.gens)}

    @classmethod
    def from_json_dict(cls, data: dict, ring: Ring = ZZ, name=None
                       ) -> "AlgebraSpec":
        try:
            kind = data["kind"]
        except (TypeError, KeyError):
            raise ValidationError("algebra JSON must be an object with 'kind'") \
                from None
        if kind not in _KINDS:
            raise ValidationError(
                f"unknown algebra kind {kind!r}; expected one of {_KINDS}")
        try:
            if kind == "finite_dim":
                def scal(s):
                    return Fraction(s) if isinstance(s, str) else s
                mul = [(i, j, l, scal(c)) for i, j, l, c in data["mul"]]
                aug = data.get("aug")
                return cls.finite_dim(
                    data["basis"], mul, [scal(c) for c in data["unit"]],
                    ring=ring, aug=None if aug is None else [scal(c) for c in aug],
                    name=name,
                    allow_projection_augmentation=bool(
                        data.get("allow_projection_augmentation", False)))
            if kind == "free_monoid":
                return cls.free_monoid(data["gens"], ring=ring, name=name)
            return cls.free_comm_monoid(data["gens"], ring=ring, name=name)
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed algebra JSON: {exc}") from None

    # -- dunder machinery ----------------------------------------------

    def _key(self):
        return (self.kind, self.ring, self.basis, self._mul, self.unit,
                self.aug, self.gens)

    def __eq__(self, other):
        if not isinstance(other, AlgebraSpec):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        size = f"dim={self.dim}" if self.kind == "finite_dim" else \
            f"gens={self.gens}"
        return f"AlgebraSpec({self.name!r}, {self.kind}, {size}, ring={self.ring})"


def _exponent_vectors(total: int, length: int):
    """All nonnegative integer vectors of the given length summing to total."""
    if length == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _exponent_vectors(total - first, length - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# Tensors


class Tensor:
    """An exact linear combination of tensor monomials of fixed arity.

    Monomial keys are tuples of algebra elements (basis indices or
    monoid tuples); the class itself never interprets them.

    >>> t = Tensor.monomial((0, 1)) - Tensor.monomial((1, 0))
    >>> sorted(t.terms.items())
    [((0, 1), 1), ((1, 0), -1)]
    """

    __slots__ = ("arity", "ring", "terms")

    def __init__(self, arity: int, terms: dict, ring: Ring = ZZ):
        if arity < 1:
            raise DomainError("tensor arity must be at least 1")
        clean = {}
        for key, coeff in terms.items():
            if len(key) != arity:
                raise DomainError(
                    f"monomial {key} has {len(key)} factors, expected {arity}")
            c = ring.coerce(coeff)
            if not ring.is_zero(c):
                clean[key] = c
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Tensor is immutable")

    @classmethod
    def zero(cls, arity: int, ring: Ring = ZZ) -> "Tensor":
        return cls(arity, {}, ring)

    @classmethod
    def monomial(cls, factors, ring: Ring = ZZ, coeff=1) -> "Tensor":
        factors = tuple(factors)
        return cls(len(factors), {factors: coeff}, ring)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _binop(self, other: "Tensor", flip: bool) -> "Tensor":
        if not isinstance(other, Tensor):
            return NotImplemented
        if self.arity != other.arity or self.ring != other.ring:
            raise DomainError("tensor arity/ring mismatch")
        ring = self.ring
        acc = dict(self.terms)
        for key, c in other.terms.items():
            c = ring.neg(c) if flip else c
            acc[key] = ring.add(acc.get(key, ring.zero), c)
        return Tensor(self.arity, acc, ring)

    def __add__(self, other):
        return self._binop(other, False)

    def __sub__(self, other):
        return self._binop(other, True)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, scalar) -> "Tensor":
        ring = self.ring
        s = ring.coerce(scalar)
        return Tensor(self.arity,
                      {k: ring.mul(s, c) for k, c in self.terms.items()}, ring)

    def tensor(self, other: "Tensor") -> "Tensor":
        """Concatenation product: arities add."""
        if self.ring != other.ring:
            raise DomainError("cannot tensor over different rings")
        ring, out = self.ring, {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = k1 + k2
                out[key] = ring.add(out.get(key, ring.zero), ring.mul(c1, c2))
        return Tensor(self.arity + other.arity, out, ring)

    def with_ring(self, ring: Ring) -> "Tensor":
        return Tensor(self.arity,
                      {k: ring.coerce(c) for k, c in self.terms.items()}, ring)

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return (self.arity, self.ring, self.terms) == \
            (other.arity, other.ring, other.terms)

    def __repr__(self):
        if not self.terms:
            return f"Tensor.zero({self.arity})"
        body = " ".join(f"{c:+}*{k}" for k, c in sorted(
            self.terms.items(), key=lambda kv: repr(kv[0])))
        return f"Tensor({body})"


def tensor_weight(algebra: AlgebraSpec, monomial: tuple) -> int:
    """Total weight of a tensor monomial over a graded monoid algebra."""
    return sum(algebra.weight_of(x) for x in monomial)


def bsym_apply(algebra: AlgebraSpec, f: DeltaSMorphism, tensor: Tensor
               ) -> Tensor:
    """Act by a fiber-ordered morphism on a tensor combination.

    For each monomial and each target position ``i`` the factors listed
    in ``f``'s ordered fiber of ``i`` are multiplied in fiber order; an
    empty fiber contributes the unit.  The result is functorial:
    applying ``f`` then ``g`` agrees with applying their composite.

    >>> A = AlgebraSpec.free_monoid(("t",))
    >>> f = DeltaSMorphism([(1, 0), ()])          # [1] -> [1], nothing over 1
    >>> bsym_apply(A, f, Tensor.monomial(((0,), (0, 0)))).terms
    {((0, 0, 0), ()): 1}
    """
    if tensor.arity != f.source + 1:
        raise DomainError(
            f"tensor arity {tensor.arity} does not match morphism source "
            f"[{f.source}]")
    ring = tensor.ring
    unit = {e: ring.coerce(c) for e, c in algebra.unit_combination().items()}
    out = {}
    for mono, coeff in tensor.terms.items():
        partial = {(): coeff}
        for fiber in f.fibers:
            if fiber:
                combo = {mono[fiber[0]]: ring.one}
                for j in fiber[1:]:
                    nxt = {}
                    for e, c in combo.items():
                        for e2, c2 in algebra.multiply(e, mono[j]).items():
                            c2 = ring.mul(c, ring.coerce(c2))
                            if e2 in nxt:
                                nxt[e2] = ring.add(nxt[e2], c2)
                            else:
                                nxt[e2] = c2
                    combo = nxt
            else:
                combo = unit
            nxt_partial = {}
            for key, c in partial.items():
                for e, ce in combo.items():
                    k2 = key + (e,)
                    cc = ring.mul(c, ce)
                    if k2 in nxt_partial:
                        nxt_partial[k2] = ring.add(nxt_partial[k2], cc)
                    else:
                        nxt_partial[k2] = cc
            partial = nxt_partial
        for key, c in partial.items():
            if key in out:
                out[key] = ring.add(out[key], c)
            else:
                out[key] = c
    return Tensor(f.target + 1, out, ring)


# ---------------------------------------------------------------------------
# Augmentation ideals


@lru_cache(maxsize=None)
def ideal_basis(algebra: AlgebraSpec) -> tuple:
    """A basis of the augmentation ideal of a finite-dimensional algebra.

    Each basis vector is an index-to-coefficient dict (returned as a
    tuple of sorted item tuples for immutability).  Over the integers
    the basis is integral and extends to a unimodular basis of the
    whole algebra; over a field it is a standard complement basis.
    """
    if algebra.kind != "finite_dim":
        raise DomainError("ideal_basis applies to finite-dimensional algebras")
    if algebra.aug is None:
        raise AugmentationError(
            f"algebra {algebra.name} carries no augmentation; "
            f"its augmentation ideal is undefined")
    ring, d = algebra.ring, len(algebra.basis)
    if ring.kind == "Z":
        row = SparseExactMatrix(
            1, d, [(0, j, c) for j, c in enumerate(algebra.aug)
                   if not ring.is_zero(c)], ZZ)
        snf = smith_normal_form(row, witnesses=True)
        if snf.diagonal != (1,):
            raise ValidationError(
                f"augmentation of {algebra.name} is not surjective over Z")
        v = snf.transforms[1]
        cols = [{} for _ in range(d)]
        for r, c, val in v.entries:
            cols[c][r] = val
        kernel = cols[1:]
    else:
        pivot = next(j for j, c in enumerate(algebra.aug)
                     if not ring.is_zero(c))
        kernel = []
        for j in range(d):
            if j == pivot:
                continue
            vec = {j: ring.one}
            ratio = ring.div(algebra.aug[j], algebra.aug[pivot])
            if not ring.is_zero(ratio):
                vec[pivot] = ring.neg(ratio)
            kernel.append(vec)
    return tuple(tuple(sorted(vec.items())) for vec in kernel)


def ideal_component_basis(algebra: AlgebraSpec, m: int, weight=None) -> tuple:
    """Basis tensors of the ``m``-th component of the augmentation-ideal
    tensor system: the whole algebra at ``m = 0`` and the ``(m + 1)``-st
    tensor power of the augmentation ideal for ``m >= 1``.

    For monoid algebras the basis is infinite, so a ``weight`` must be
    given and the weight-homogeneous slice is returned; for
    finite-dimensional algebras ``weight`` must be omitted.

    >>> k = AlgebraSpec.finite_dim(("1",), [(0, 0, 0, 1)], (1,), aug=(1,))
    >>> len(ideal_component_basis(k, 0)), len(ideal_component_basis(k, 1))
    (1, 0)
    """
    if m < 0:
        raise DomainError("component index must be nonnegative")
    ring = algebra.ring
    if algebra.kind == "finite_dim":
        if weight is not None:
            raise DomainError(
                f"algebra {algebra.name} is finite-dimensional and has no "
                f"weight grading")
        if m == 0:
            return tuple(Tensor.monomial((i,), ring)
                         for i in range(len(algebra.basis)))
        vectors = [Tensor(1, {(i,): c for i, c in items}, ring)
                   for items in ideal_basis(algebra)]
        out = []
        for combo in itertools.product(vectors, repeat=m + 1):
            t = combo[0]
            for factor in combo[1:]:
                t = t.tensor(factor)
            out.append(t)
        return tuple(out)
    if weight is None:
        raise DomainError(
            f"algebra {algebra.name} has an infinite basis; pass an explicit "
            f"weight to select a finite homogeneous slice")
    if m == 0:
        return tuple(Tensor.monomial((e,), ring)
                     for e in algebra.elements_of_weight(weight))
    if weight < m + 1:
        return ()
    out = []
    for parts in _positive_compositions(weight, m + 1):
        for combo in itertools.product(
                *(algebra.elements_of_weight(w) for w in parts)):
            out.append(Tensor.monomial(combo, ring))
    return tuple(out)


def _positive_compositions(total: int, parts: int):
    """All tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _positive_compositions(total - first, parts - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# Standard augmented form


def _invert_dense(ring: Ring, columns: list) -> list:
    """Inverse of a small dense matrix given by columns; returns columns."""
    d = len(columns)
    work = [[Fraction(columns[c][r]) if ring.kind != "GF" else columns[c][r]
             for c in range(d)] for r in range(d)]
    inv = [[Fraction(1) if r == c else Fraction(0) for c in range(d)]
           for r in range(d)]
    if ring.kind == "GF":
        inv = [[1 if r == c else 0 for c in range(d)] for r in range(d)]
    for col in range(d):
        pivot = next((r for r in range(col, d)
                      if not ring.is_zero(work[r][col] % ring.p
                                          if ring.kind == "GF"
                                          else work[r][col])), None)
        if pivot is None:
            raise DomainError("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        if ring.kind == "GF":
            scale = pow(work[col][col] % ring.p, ring.p - 2, ring.p)
            work[col] = [(v * scale) % ring.p for v in work[col]]
            inv[col] = [(v * scale) % ring.p for v in inv[col]]
        else:
            scale = 1 / work[col][col]
            work[col] = [v * scale for v in work[col]]
            inv[col] = [v * scale for v in inv[col]]
        for r in range(d):
            if r == col:
                continue
            factor = work[r][col]
            if ring.is_zero(factor % ring.p if ring.kind == "GF" else factor):
                continue
            if ring.kind == "GF":
                work[r] = [(a - factor * b) % ring.p
                           for a, b in zip(work[r], work[col])]
                inv[r] = [(a - factor * b) % ring.p
                          for a, b in zip(inv[r], inv[col])]
            else:
                work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
                inv[r] = [a - factor * b for a, b in zip(inv[r], inv[col])]
    return [[ring.coerce(inv[r][c]) for r in range(d)] for c in range(d)]


@lru_cache(maxsize=None)
def standard_augmented_form(algebra: AlgebraSpec):
    """Rewrite a finite-dimensional augmented algebra on the basis
    ``unit, ideal basis``.

    Returns ``(std, new_in_old)`` where ``std`` is an isomorphic
    algebra whose basis element 0 is the unit and whose augmentation is
    the coordinate projection onto it, and ``new_in_old`` is the tuple
    of columns expressing the new basis in the old coordinates.  In the
    standard form the augmentation ideal is spanned by the basis
    elements of positive index, so ideal membership of a product is
    visible positionally.
    """
    if algebra.kind != "finite_dim":
        raise DomainError(
            "standard_augmented_form applies to finite-dimensional algebras")
    ring, d = algebra.ring, len(algebra.basis)
    kernel = ideal_basis(algebra)
    columns = [list(algebra.unit)]
    for items in kernel:
        vec = [ring.zero] * d
        for i, c in dict(items).items():
            vec[i] = c
        columns.append(vec)
    inv_columns = _invert_dense(ring, columns)
    # Coordinates of old basis vector l in the new basis: column l of the
    # inverse change-of-basis matrix.
    old_in_new = inv_columns

    mul = []
    for i in range(d):
        xi = {r: columns[i][r] for r in range(d)
              if not ring.is_zero(columns[i][r])}
        for j in range(d):
            xj = {r: columns[j][r] for r in range(d)
                  if not ring.is_zero(columns[j][r])}
            prod = algebra._mul_coords(xi, xj)
            new_coords = {}
            for l, c in prod.items():
                for nl in range(d):
                    v = ring.mul(c, old_in_new[l][nl])
                    if not ring.is_zero(v):
                        new_coords[nl] = ring.add(
                            new_coords.get(nl, ring.zero), v)
            for nl, c in new_coords.items():
                if not ring.is_zero(c):
                    mul.append((i, j, nl, c))
    labels = ("1",) + tuple(f"w{j}" for j in range(1, d))
    unit_new = (ring.one,) + (ring.zero,) * (d - 1)
    aug_new = (ring.one,) + (ring.zero,) * (d - 1)
    std = AlgebraSpec.finite_dim(
        labels, mul, unit_new, ring=ring, aug=aug_new,
        name=f"{algebra.name}(std)",
        allow_projection_augmentation=not algebra.aug_is_algebra_map)
    return std, tuple(tuple(col) for col in columns)


# ---------------------------------------------------------------------------
# Corpus algebras


def scalar_algebra(ring: Ring = ZZ) -> AlgebraSpec:
    """The ground ring as an algebra over itself, augmented by identity."""
    return AlgebraSpec.finite_dim(
        ("1",), [(0, 0, 0, 1)], (1,), ring=ring, aug=(1,), name="k")


def group_algebra_z2(ring: Ring = ZZ) -> AlgebraSpec:
    """The group algebra of the order-two group; augmentation sends both
    group elements to one."""
    mul = [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1)]
    return AlgebraSpec.finite_dim(
        ("e", "g"), mul, (1, 0), ring=ring, aug=(1, 1), name="k[Z/2]")


def matrix_algebra_m2(ring: Ring = ZZ, with_projection: bool = False
                      ) -> AlgebraSpec:
    """The algebra of 2x2 matrices over the ground ring.

    Being simple, it admits no augmentation that is an algebra map; by
    default no augmentation is attached.  With ``with_projection`` the
    linear functional reading the upper-left entry is attached through
    the explicit opt-in (it sends the unit to one but is not
    multiplicative, and anything built from its "ideal" is flagged).
    """
    mul = []
    for a in range(2):
        for b in range(2):
            for c in range(2):
                for d in range(2):
                    if b == c:
                        mul.append((2 * a + b, 2 * c + d, 2 * a + d, 1))
    aug = (1, 0, 0, 0) if with_projection else None
    return AlgebraSpec.finite_dim(
        ("E00", "E01", "E10", "E11"), mul, (1, 0, 0, 1), ring=ring, aug=aug,
        name="M2", allow_projection_augmentation=with_projection)


def truncated_polynomial_algebra(ring: Ring = ZZ, power: int = 3
                                 ) -> AlgebraSpec:
    """The polynomial algebra truncated at ``t**power = 0``, augmented by
    evaluation at zero."""
    if power < 1:
        raise DomainError("truncation power must be positive")
    labels = tuple("1" if k == 0 else ("t" if k == 1 else f"t^{k}")
                   for k in range(power))
    mul = [(i, j, i + j, 1) for i in range(power) for j in range(power)
           if i + j < power]
    unit = (1,) + (0,) * (power - 1)
    aug = (1,) + (0,) * (power - 1)
    return AlgebraSpec.finite_dim(
        labels, mul, unit, ring=ring, aug=aug, name=f"k[t]/(t^{power})")


def polynomial_algebra(ring: Ring = ZZ) -> AlgebraSpec:
    """The polynomial algebra on one variable, graded by degree."""
    return AlgebraSpec.free_monoid(("t",), ring=ring, name="k[t]")
