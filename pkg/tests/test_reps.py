"""Tests for symmetric-group characters and homology representations."""
import math
import random
from fractions import Fraction

import pytest

from symhom.deltas import Permutation
from symhom.errors import DomainError, ValidationError
from symhom.homology import homology
from symhom.reps import (
    ClassFunction, chain_action_matrix, chain_character,
    class_representative, class_size, centralizer_order,
    conjectured_vanishing_bound, connectivity_report, decompose,
    group_homology_small, guaranteed_vanishing_bound, homology_character,
    induced_character_from_cyclic, irreducible_characters, lefschetz_numbers,
    parse_partition, partition_string, partitions, shared_complex,
    sign_character, sign_multiplicity_report, top_homology_character,
    trivial_character)
from symhom.rings import QQ, ZZ
from symhom.symcomplex import basis_rank


class TestPartitions:
    def test_pinned_list(self):
        assert partitions(4) == ((4,), (3, 1), (2, 2), (2, 1, 1),
                                 (1, 1, 1, 1))

    def test_counts(self):
        # Partition numbers p(0)..p(8).
        for n, count in enumerate([1, 1, 2, 3, 5, 7, 11, 15, 22]):
            assert len(partitions(n)) == count

    def test_all_descending_and_sum(self):
        for n in range(8):
            for lam in partitions(n):
                assert sum(lam) == n
                assert all(a >= b for a, b in zip(lam, lam[1:]))

    def test_strings_round_trip(self):
        for n in range(7):
            for lam in partitions(n):
                assert parse_partition(partition_string(lam)) == lam

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValidationError):
            parse_partition("3+x")
        with pytest.raises(ValidationError):
            parse_partition("1+3")
        with pytest.raises(ValidationError):
            parse_partition("3+-1")


class TestClassData:
    def test_class_sizes_sum_to_group_order(self):
        for n in range(1, 8):
            assert sum(class_size(lam) for lam in partitions(n)) == \
                math.factorial(n)

    def test_centralizer_class_product(self):
        for n in range(1, 7):
            for lam in partitions(n):
                assert centralizer_order(lam) * class_size(lam) == \
                    math.factorial(n)

    def test_representative_cycle_types(self):
        for n in range(1, 7):
            for lam in partitions(n):
                assert class_representative(lam).cycle_type() == lam

    def test_pinned_representative(self):
        assert class_representative((3, 1)).images == (1, 2, 0, 3)


class TestClassFunction:
    def test_requires_complete_values(self):
        with pytest.raises(DomainError, match="missing"):
            ClassFunction(3, {(3,): 1})
        with pytest.raises(DomainError):
            ClassFunction(2, {(2,): 1, (1, 1): 1, (3,): 1})

    def test_orthogonality_of_trivial_and_sign(self):
        for n in (2, 3, 4):
            triv, sgn = trivial_character(n), sign_character(n)
            assert triv.inner(sgn) == 0
            assert triv.inner(triv) == 1
            assert sgn.inner(sgn) == 1

    def test_arithmetic(self):
        triv, sgn = trivial_character(3), sign_character(3)
        both = triv + sgn
        assert both((2, 1)) == 0 and both((1, 1, 1)) == 2
        assert (both - sgn) == triv
        assert triv.scale(5)((3,)) == 5

    def test_json_uses_partition_keys(self):
        assert sign_character(3).to_json_dict() == \
            {"3": 1, "2+1": -1, "1+1+1": 1}
        halves = ClassFunction(2, {(2,): Fraction(1, 2), (1, 1): 1})
        assert halves.to_json_dict() == {"2": "1/2", "1+1": 1}


class TestIrreducibleCharacters:
    def test_pinned_table_degree_three(self):
        chars = irreducible_characters(3)
        table = {lam: tuple(int(v) for v in chi.values.values())
                 for lam, chi in chars.items()}
        assert table == {
            (3,): (1, 1, 1),
            (2, 1): (-1, 0, 2),
            (1, 1, 1): (1, -1, 1),
        }

    def test_degrees_squared_sum_to_group_order(self):
        for n in range(1, 8):
            chars = irreducible_characters(n)
            assert sum(int(chi.degree) ** 2 for chi in chars.values()) == \
                math.factorial(n)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_orthonormality(self, n):
        chars = list(irreducible_characters(n).values())
        for a, chi in enumerate(chars):
            for b, psi in enumerate(chars):
                assert chi.inner(psi) == (1 if a == b else 0)

    @pytest.mark.slow
    def test_orthonormality_degree_seven(self):
        chars = list(irreducible_characters(7).values())
        for a, chi in enumerate(chars):
            for b, psi in enumerate(chars):
                assert chi.inner(psi) == (1 if a == b else 0)

    def test_extremes_are_trivial_and_sign(self):
        for n in (2, 3, 4, 5):
            chars = irreducible_characters(n)
            assert chars[(n,)] == trivial_character(n)
            assert chars[(1,) * n] == sign_character(n)


class TestChainAction:
    def test_matrices_are_signed_permutations(self):
        rng = random.Random(5)
        for p in (2, 3):
            for i in range(p + 1):
                images = list(range(p + 1))
                rng.shuffle(images)
                g = Permutation(images)
                M = chain_action_matrix(p, i, g, QQ)
                cols = {}
                for r, c, v in M.entries:
                    cols.setdefault(c, []).append(v)
                assert len(cols) == basis_rank(p, i)
                assert all(len(vs) == 1 and abs(vs[0]) == 1
                           for vs in cols.values())

    def test_identity_trace_equals_rank(self):
        for p in (1, 2, 3):
            traces = chain_character(p, Permutation.identity(p + 1))
            assert traces == {i: basis_rank(p, i) for i in range(p + 1)}

    def test_character_matches_matrix_trace(self):
        for p in (2, 3):
            for lam in partitions(p + 1):
                g = class_representative(lam)
                traces = chain_character(p, g)
                for i in range(p + 1):
                    M = chain_action_matrix(p, i, g, QQ)
                    diag = sum(v for r, c, v in M.entries if r == c)
                    assert traces[i] == diag

    def test_size_guard(self):
        with pytest.raises(DomainError):
            chain_character(2, Permutation.identity(2))
        with pytest.raises(DomainError):
            chain_action_matrix(2, 1, Permutation.identity(5), QQ)


class TestHomologyCharacter:
    def test_degree_one_is_sign(self):
        assert homology_character(1, 1).to_json_dict() == \
            {"2": -1, "1+1": 1}

    def test_degree_two_pinned(self):
        assert homology_character(2, 2).to_json_dict() == \
            {"3": 2, "2+1": 0, "1+1+1": 2}

    def test_top_route_matches_induced_route(self):
        for p in (1, 2, 3):
            assert top_homology_character(p) == homology_character(p, p)

    @pytest.mark.parametrize("p", [1, 2, 3, 4, 5])
    def test_top_matches_cyclic_induction(self, p):
        assert top_homology_character(p) == \
            induced_character_from_cyclic(p + 1, p)

    @pytest.mark.parametrize("p", [1, 2, 3, 4, 5])
    def test_top_rank_is_factorial(self, p):
        assert top_homology_character(p).degree == math.factorial(p)

    def test_small_multiplicities_nonnegative_integers(self):
        for p, i in [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)]:
            for mult in decompose(homology_character(p, i)).values():
                assert mult.denominator == 1 and mult >= 0

    def test_middle_degree_decomposition_pinned(self):
        mults = decompose(homology_character(3, 2))
        nonzero = {lam: int(v) for lam, v in mults.items() if v}
        assert nonzero == {(3, 1): 1, (2, 1, 1): 1, (1, 1, 1, 1): 1}

    @pytest.mark.slow
    def test_p4_multiplicities_nonnegative_integers(self):
        for i in (3, 4):
            chi = homology_character(4, i) if i < 4 else \
                top_homology_character(4)
            for mult in decompose(chi).values():
                assert mult.denominator == 1 and mult >= 0


class TestInducedCharacterFormula:
    def test_degree_two_cases(self):
        assert induced_character_from_cyclic(2, 1) == sign_character(2)
        assert induced_character_from_cyclic(2, 2) == trivial_character(2)

    def test_dimension_is_index(self):
        for n in range(2, 7):
            for power in (n - 1, n):
                chi = induced_character_from_cyclic(n, power)
                assert chi.degree == math.factorial(n - 1)

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_frobenius_reciprocity(self, n):
        """Multiplicity of each irreducible in the induced character equals
        the average of the irreducible against the cyclic character."""
        cyc = Permutation(tuple((j + 1) % n for j in range(n)))
        powers = [Permutation.identity(n)]
        while len(powers) < n:
            powers.append(powers[-1] * cyc)
        for power in (n - 1, n):
            chi = induced_character_from_cyclic(n, power)
            for lam, irr in irreducible_characters(n).items():
                restricted = sum(
                    (z.sign() ** power if power % 2 else 1)
                    * irr(z.cycle_type()) for z in powers)
                assert chi.inner(irr) == Fraction(restricted, n)


class TestLefschetz:
    @pytest.mark.parametrize("p", [1, 2, 3])
    def test_balance(self, p):
        for lam in partitions(p + 1):
            chain_side, homology_side = lefschetz_numbers(p, lam)
            assert chain_side == homology_side

    @pytest.mark.slow
    def test_balance_p4(self):
        for lam in partitions(5):
            chain_side, homology_side = lefschetz_numbers(4, lam)
            assert chain_side == homology_side


class TestGroupHomology:
    def test_pinned_low_degrees(self):
        expectations = {
            (1, 0): (1, ()),
            (2, 0): (1, ()),
            (2, 1): (0, (2,)),
            (2, 2): (0, ()),
            (2, 3): (0, (2,)),
            (3, 0): (1, ()),
            (3, 1): (0, (2,)),
            (3, 2): (0, ()),
            (4, 1): (0, (2,)),
        }
        for (n, i), (betti, torsion) in expectations.items():
            h = group_homology_small(n, i)
            assert (h.betti, h.torsion) == (betti, torsion), (n, i)

    def test_order_six_degree_three(self):
        h = group_homology_small(3, 3)
        assert (h.betti, h.torsion) == (0, (6,))

    @pytest.mark.slow
    def test_order_twentyfour_schur_multiplier(self):
        h = group_homology_small(4, 2)
        assert (h.betti, h.torsion) == (0, (2,))

    def test_guards(self):
        with pytest.raises(DomainError):
            group_homology_small(5, 1)
        with pytest.raises(DomainError):
            group_homology_small(3, 4)
        with pytest.raises(DomainError):
            group_homology_small(0, 0)


class TestConnectivity:
    def test_bounds_pinned(self):
        assert [guaranteed_vanishing_bound(p) for p in range(1, 8)] == \
            [0, 0, 1, 2, 2, 3, 4]
        assert [conjectured_vanishing_bound(p) for p in range(1, 8)] == \
            [0, 0, 1, 2, 2, 3, 4]
        # The two bounds separate for the first time at p = 15.
        assert guaranteed_vanishing_bound(15) == 9
        assert conjectured_vanishing_bound(15) == 10

    @pytest.mark.parametrize("p", [1, 2, 3, 4])
    def test_report_consistent(self, p):
        report = connectivity_report(p, QQ)
        assert report["p"] == p
        assert report["conjecture_consistent"]
        first = report["first_nonzero_degree"]
        assert first > report["proven_vanishing_through"]
        assert sorted(report["betti"]) == list(range(p + 1))

    def test_sign_multiplicity_report(self):
        assert sign_multiplicity_report(2) == {1: 1, 2: 1}
        assert sign_multiplicity_report(3) == {2: 1, 3: 1}


class TestSharedComplex:
    def test_identity_of_instances(self):
        assert shared_complex(3, QQ) is shared_complex(3, QQ)
        assert shared_complex(3, QQ) is not shared_complex(3, ZZ)

    def test_homology_cache_accumulates(self):
        C = shared_complex(2, QQ)
        first = homology(C, 1)
        again = homology(C, 1)
        assert first is again
