"""Tests for the ordered-fiber morphism category."""
import itertools
import random

import pytest

from symhom.deltas import (
    DeltaSMorphism,
    OrderPreservingMap,
    Permutation,
    compose,
    enumerate_epis,
    enumerate_increasing_epis,
    enumerate_morphisms,
    epi_count,
    hom_count,
    to_permutation,
)
from symhom.errors import CompositionError, DomainError, ValidationError


def test_identity_composition():
    f = DeltaSMorphism([(1, 0)])            # [1] -> [0]
    assert compose(f, DeltaSMorphism.identity(0)) == f
    assert compose(DeltaSMorphism.identity(1), f) == f


def test_compose_concatenates_fibers_in_block_order():
    # g . f for f:[2]->[1] fibers ((2,0),(1,)) and g:[1]->[0] fiber ((1,0),)
    f = DeltaSMorphism([(2, 0), (1,)])
    g = DeltaSMorphism([(1, 0)])
    assert compose(f, g).fibers == ((1, 2, 0),)


def test_compose_rejects_mismatched_objects():
    f = DeltaSMorphism([(0, 1)])            # [1] -> [0]
    g = DeltaSMorphism([(0,), (1,)])        # [1] -> [1]
    with pytest.raises(CompositionError):
        compose(f, g)


def test_associativity_exhaustive_small_objects():
    # All composable triples through objects [0]..[2].
    objs = range(3)
    homs = {(a, b): enumerate_morphisms(a, b) for a in objs for b in objs}
    for a, b, c, d in itertools.product(objs, repeat=4):
        for f in homs[a, b]:
            for g in homs[b, c]:
                fg = compose(f, g)
                for h in homs[c, d]:
                    assert compose(fg, h) == compose(f, compose(g, h))


def test_factorize_example():
    f = DeltaSMorphism([(2, 0), (1,)])
    sigma, phi = f.factorize()
    assert sigma.images == (1, 2, 0)        # 2 -> 0, 0 -> 1, 1 -> 2
    assert phi.values == (0, 0, 1)


def test_factorize_round_trip_exhaustive():
    for m in range(4):
        for n in range(4):
            for f in enumerate_morphisms(m, n):
                sigma, phi = f.factorize()
                assert compose(sigma.as_morphism(), phi.as_morphism()) == f


def test_factorization_is_unique():
    # For every f with objects <= [2], exactly one (permutation, increasing)
    # pair recomposes to f.
    for m in range(3):
        for n in range(3):
            increasing = [g for g in enumerate_morphisms(m, n)
                          if g.factorize()[0] == Permutation.identity(m + 1)]
            for f in enumerate_morphisms(m, n):
                count = sum(
                    1
                    for sigma in itertools.permutations(range(m + 1))
                    for phi in increasing
                    if compose(Permutation(sigma).as_morphism(), phi) == f)
                assert count == 1


def test_epi_iff_all_fibers_nonempty():
    f = DeltaSMorphism([(2, 0), (1,)])
    assert f.is_epi
    g = DeltaSMorphism([(), (0, 1, 2)])
    assert not g.is_epi
    assert g.underlying_map() == (1, 1, 1)


def test_epi_counts_match_formula():
    for m in range(5):
        for n in range(5):
            assert len(enumerate_epis(m, n)) == epi_count(m, n)
    assert epi_count(2, 1) == 12
    assert epi_count(1, 0) == 2


def test_hom_counts_match_formula():
    for m in range(4):
        for n in range(4):
            assert len(enumerate_morphisms(m, n)) == hom_count(m, n)
            assert len(set(enumerate_morphisms(m, n))) == hom_count(m, n)


def test_enumerate_epis_deterministic_order():
    assert [f.to_string() for f in enumerate_epis(1, 0)] == \
        ['1->0:[0,1]', '1->0:[1,0]']
    # Size vectors come lexicographically, contents lexicographically inside.
    first = enumerate_epis(2, 1)[0]
    assert first.fibers == ((0,), (1, 2))


def test_composition_of_epis_is_epi():
    for f in enumerate_epis(3, 2):
        for g in enumerate_epis(2, 1):
            assert compose(f, g).is_epi


def test_factorization_of_epi_has_surjective_increasing_part():
    for f in enumerate_epis(3, 1):
        _, phi = f.factorize()
        assert phi.is_surjective


def test_increasing_epi_enumeration():
    from math import comb
    for m in range(5):
        for n in range(m + 1):
            maps = enumerate_increasing_epis(m, n)
            assert len(maps) == comb(m, n)
            assert all(p.is_surjective for p in maps)


def test_to_permutation_requires_automorphism():
    with pytest.raises(DomainError):
        to_permutation(DeltaSMorphism([(1, 0)]))


def test_to_permutation_anti_homomorphism_law_exhaustive():
    # With the left-to-right product, to_permutation is covariant for
    # diagrammatic composition, i.e. an anti-homomorphism for categorical
    # composition.  Checked exhaustively for n <= 3.
    for n in range(4):
        autos = [s.as_morphism() for s in
                 (Permutation(p) for p in itertools.permutations(range(n + 1)))]
        for f in autos:
            for g in autos:
                assert to_permutation(compose(f, g)) == \
                    to_permutation(f) * to_permutation(g)


def test_permutation_basics():
    s = Permutation((1, 2, 0))
    assert s.inverse() * s == Permutation.identity(3)
    assert s * s.inverse() == Permutation.identity(3)
    assert Permutation.transposition(4, 1, 3).sign() == -1
    assert Permutation.from_cycles(5, [(0, 1, 2), (3, 4)]).cycle_type() == (3, 2)
    assert Permutation((0, 1, 2, 3)).sign() == 1


def test_permutation_product_is_left_to_right():
    p = Permutation((1, 0, 2))
    q = Permutation((0, 2, 1))
    assert (p * q).images == tuple(q(p(x)) for x in range(3))


def test_serialization_round_trip():
    rng = random.Random(7)
    for m in range(4):
        for n in range(4):
            morphisms = enumerate_morphisms(m, n)
            for f in rng.sample(morphisms, min(20, len(morphisms))):
                assert DeltaSMorphism.from_string(f.to_string()) == f


def test_serialization_empty_fiber():
    f = DeltaSMorphism([(2, 1, 0), (), ()])
    assert f.to_string() == '2->2:[2,1,0||]'
    assert DeltaSMorphism.from_string('2->2:[2,1,0||]') == f


def test_malformed_strings_rejected():
    for bad in ['', '2->1:[2,0|]', '1->0:(0,1)', '2->1:[2,0|1|]', 'x->y:[0]']:
        with pytest.raises(ValidationError):
            DeltaSMorphism.from_string(bad)


def test_order_preserving_map_validation():
    with pytest.raises(DomainError):
        OrderPreservingMap((1, 0), 1)
    with pytest.raises(DomainError):
        OrderPreservingMap((0, 2), 1)
