"""Tests for homology of chain complexes: Betti numbers, torsion, bases,
Poincare polynomials, and induced maps."""
import random
from fractions import Fraction

import pytest

from symhom.deltas import Permutation
from symhom.errors import DomainError, TruncationError, ValidationError
from symhom.homology import (
    ChainComplexDesc,
    HomologyResult,
    format_poincare,
    homology,
    induced_map_on_homology,
    poincare_polynomial,
)
from symhom.linalg import SparseExactMatrix, rank
from symhom.rings import GF, QQ, ZZ
from symhom.symcomplex import SymChain, build_complex, enumerate_basis, sigma_act


def two_term(entry=None):
    """Z --d--> Z with a single optional boundary entry."""
    entries = [] if entry is None else [(0, 0, entry)]
    return ChainComplexDesc(ZZ, [1, 1],
                            {1: SparseExactMatrix(1, 1, entries, ZZ)})


def action_matrix(p, i, g, ring=ZZ):
    """Matrix of the generator-relabelling action on degree-i chains."""
    basis = enumerate_basis(p, i)
    index = {e: k for k, e in enumerate(basis)}
    entries = []
    for col, elem in enumerate(basis):
        image = sigma_act(g, SymChain.single(elem))
        entries.extend((index[e], col, c) for e, c in image.terms.items())
    return SparseExactMatrix(len(basis), len(basis), entries, ring)


class TestComplexConstruction:
    def test_ranks_from_sequence(self):
        c = two_term()
        assert c.ranks == {0: 1, 1: 1}
        assert c.rank(0) == 1 and c.rank(7) == 0

    def test_needs_a_degree(self):
        with pytest.raises(DomainError):
            ChainComplexDesc(ZZ, [], {})

    def test_negative_rank(self):
        with pytest.raises(DomainError):
            ChainComplexDesc(ZZ, [1, -2], {})

    def test_noncontiguous_degrees(self):
        with pytest.raises(DomainError):
            ChainComplexDesc(ZZ, {0: 1, 2: 1}, {})

    def test_boundary_shape_mismatch(self):
        with pytest.raises(ValidationError):
            ChainComplexDesc(ZZ, [2, 3],
                             {1: SparseExactMatrix(1, 1, [], ZZ)})

    def test_boundary_ring_mismatch(self):
        with pytest.raises(ValidationError):
            ChainComplexDesc(ZZ, [1, 1],
                             {1: SparseExactMatrix(1, 1, [], QQ)})

    def test_nonzero_composition_rejected(self):
        one = SparseExactMatrix(1, 1, [(0, 0, 1)], ZZ)
        with pytest.raises(ValidationError, match="not a chain complex"):
            ChainComplexDesc(ZZ, [1, 1, 1], {1: one, 2: one})

    def test_end_boundaries_synthesised(self):
        c = two_term()
        assert c.boundary_matrix(0).nnz == 0
        assert c.boundary_matrix(2).nnz == 0
        assert c.boundary_matrix(2).cols == 0

    def test_missing_interior_boundary(self):
        c = ChainComplexDesc(ZZ, [1, 1, 1],
                             {1: SparseExactMatrix(1, 1, [], ZZ)},
                             truncated_above=True)
        with pytest.raises(TruncationError, match="truncation too small"):
            c.boundary_matrix(2)

    def test_euler_characteristic(self):
        assert two_term().euler_characteristic() == 0
        assert build_complex(2).euler_characteristic() == 1

    def test_content_hash(self):
        assert two_term(2).content_hash() == two_term(2).content_hash()
        assert two_term(2).content_hash() != two_term(3).content_hash()
        assert two_term().content_hash() != \
            ChainComplexDesc(QQ, [1, 1],
                             {1: SparseExactMatrix(1, 1, [], QQ)}
                             ).content_hash()


class TestHomology:
    def test_two_term_zero_boundary(self):
        c = two_term()
        h0, h1 = homology(c, 0), homology(c, 1)
        assert (h0.betti, h0.torsion, h0.certified_torsion_free) == \
            (1, (), True)
        assert (h1.betti, h1.torsion) == (1, ())

    def test_outside_range_is_zero(self):
        c = two_term()
        assert homology(c, 5).betti == 0
        assert homology(c, -1).betti == 0

    def test_multiplication_by_two_gives_torsion(self):
        h = homology(two_term(2), 0)
        assert (h.betti, h.torsion, h.certified_torsion_free) == \
            (0, (2,), False)

    def test_field_coefficients_have_no_torsion_claim(self):
        c = ChainComplexDesc(GF(2), [1, 1],
                             {1: SparseExactMatrix(1, 1, [], GF(2))})
        h = homology(c, 0)
        assert h.betti == 1
        assert h.torsion == ()
        assert not h.certified_torsion_free

    def test_degree_one_complex(self):
        c = build_complex(1)
        assert homology(c, 1).betti == 1
        assert homology(c, 0).betti == 0

    def test_degree_three_complex(self):
        c = build_complex(3)
        h2, h3 = homology(c, 2), homology(c, 3)
        assert (h2.betti, h2.torsion, h2.certified_torsion_free) == \
            (7, (), True)
        assert (h3.betti, h3.torsion) == (6, ())

    def test_truncated_top_needs_next_boundary(self):
        c = ChainComplexDesc(ZZ, [1, 1],
                             {1: SparseExactMatrix(1, 1, [], ZZ)},
                             truncated_above=True)
        assert homology(c, 0).betti == 1
        with pytest.raises(TruncationError, match="truncation too small"):
            homology(c, 1)
        with pytest.raises(TruncationError):
            homology(c, 3)

    def test_cache_returns_same_object(self):
        c = build_complex(2)
        assert homology(c, 1) is homology(c, 1)

    @pytest.mark.parametrize("p", range(5))
    def test_euler_consistency(self, p):
        c = build_complex(p)
        total = sum((-1) ** i * homology(c, i).betti for i in range(p + 1))
        assert total == c.euler_characteristic()

    def test_betti_nonnegative(self):
        rng = random.Random(5)
        for _ in range(10):
            # random two-step complex built as d1 = A, d2 chosen in ker A
            c = build_complex(rng.choice([1, 2, 3]))
            for i in c.ranks:
                assert homology(c, i).betti >= 0


class TestHomologyBasis:
    def test_basis_spans_homology(self):
        c = build_complex(3)
        h = homology(c, 2, want_basis=True)
        assert h.basis is not None and len(h.basis) == h.betti == 7
        d2 = c.boundary_matrix(2).with_ring(QQ)
        d3 = c.boundary_matrix(3).with_ring(QQ)
        for cycle in h.basis:
            assert all(x == 0 for x in d2.apply(list(cycle)))
        # independence modulo the image: adjoining the image columns keeps
        # every basis cycle pivotal
        cols = []
        for col in range(d3.cols):
            unit = [Fraction(int(k == col)) for k in range(d3.cols)]
            cols.append(d3.apply(unit))
        cols.extend(list(v) for v in h.basis)
        entries = [(r, c, v) for c, vec in enumerate(cols)
                   for r, v in enumerate(vec) if v != 0]
        stacked = SparseExactMatrix(c.rank(2), len(cols), entries, QQ)
        assert rank(stacked) == rank(d3) + h.betti

    def test_torsion_only_degree_has_empty_basis(self):
        h = homology(two_term(2), 0, want_basis=True)
        assert h.betti == 0 and h.basis == ()

    def test_zero_map_basis_is_full(self):
        h = homology(two_term(), 1, want_basis=True)
        assert len(h.basis) == 1


class TestPoincarePolynomial:
    @pytest.mark.parametrize("p,want", [
        (0, "1"),
        (1, "t"),
        (2, "t+2t^2"),
        (3, "7t^2+6t^3"),
        (4, "43t^3+24t^4"),
    ])
    def test_small(self, p, want):
        assert poincare_polynomial(p) == want

    @pytest.mark.slow
    def test_p5(self):
        assert poincare_polynomial(5) == "t^3+272t^4+120t^5"

    def test_negative_p(self):
        with pytest.raises(DomainError):
            poincare_polynomial(-2)

    def test_formatting(self):
        assert format_poincare({}) == "0"
        assert format_poincare({0: 1}) == "1"
        assert format_poincare({0: 3, 1: 1, 5: 2}) == "3+t+2t^5"
        assert format_poincare({2: 0, 3: 4}) == "4t^3"


class TestInducedMap:
    def test_identity_chain_map(self):
        c = build_complex(1)
        m = induced_map_on_homology(c, 1, SparseExactMatrix.identity(2, ZZ))
        assert (m.rows, m.cols) == (1, 1)
        assert m.entries == ((0, 0, 1),)

    def test_transposition_negates_top_class(self):
        c = build_complex(1)
        swap = action_matrix(1, 1, Permutation((1, 0)))
        m = induced_map_on_homology(c, 1, swap)
        assert m.entries == ((0, 0, -1),)

    def test_shape_mismatch(self):
        c = build_complex(1)
        with pytest.raises(DomainError):
            induced_map_on_homology(c, 1, SparseExactMatrix.identity(3, ZZ))

    def test_cycle_violation_names_column(self):
        c = build_complex(1)
        bad = SparseExactMatrix.from_dense([[1, 0], [0, 2]], ZZ)
        with pytest.raises(ValidationError,
                           match="not a chain map.*column 0.*not a cycle"):
            induced_map_on_homology(c, 1, bad)

    def test_boundary_violation_names_column(self):
        # C_2 = Q --e0--> C_1 = Q^3 --(project to last)--> C_0 = Q.
        # Cycles in degree 1 = span(e0, e1); boundaries = span(e0).
        d2 = SparseExactMatrix(3, 1, [(0, 0, 1)], QQ)
        d1 = SparseExactMatrix(1, 3, [(0, 2, 1)], QQ)
        c = ChainComplexDesc(QQ, [1, 3, 1], {1: d1, 2: d2})
        bad = SparseExactMatrix.from_dense(
            [[0, 0, 0], [1, 1, 0], [0, 0, 1]], QQ)
        with pytest.raises(ValidationError,
                           match="not a chain map.*column 0.*not a boundary"):
            induced_map_on_homology(c, 1, bad)

    def test_coxeter_relations_on_degree_two_homology(self):
        c = build_complex(3)
        gens = [Permutation((1, 0, 2, 3)), Permutation((0, 2, 1, 3)),
                Permutation((0, 1, 3, 2))]
        induced = [induced_map_on_homology(c, 2, action_matrix(3, 2, g))
                   for g in gens]
        eye = SparseExactMatrix.identity(7, QQ)
        for m in induced:
            assert (m.rows, m.cols) == (7, 7)
            assert m @ m == eye
        s1, s2, s3 = induced
        braid12 = s1 @ s2
        braid23 = s2 @ s3
        assert braid12 @ braid12 @ braid12 == eye
        assert braid23 @ braid23 @ braid23 == eye
        far = s1 @ s3
        assert far @ far == eye

    def test_functorial_in_composition(self):
        c = build_complex(3)
        rng = random.Random(11)
        for _ in range(3):
            g = Permutation(tuple(rng.sample(range(4), 4)))
            h = Permutation(tuple(rng.sample(range(4), 4)))
            mg, mh = action_matrix(3, 2, g), action_matrix(3, 2, h)
            lhs = induced_map_on_homology(c, 2, mg @ mh)
            rhs = induced_map_on_homology(c, 2, mg) @ \
                induced_map_on_homology(c, 2, mh)
            assert lhs == rhs


class TestJson:
    def test_result_key_order(self):
        data = homology(two_term(2), 0).to_json_dict()
        assert list(data) == ["degree", "betti", "torsion",
                              "certified_torsion_free"]
        assert data == {"degree": 0, "betti": 0, "torsion": [2],
                        "certified_torsion_free": False}
