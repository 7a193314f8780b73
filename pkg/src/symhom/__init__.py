"""Exact homological algebra for symmetric-group crossed simplicial structures.

Subpackages by task:

- ``deltas``: the category of finite ordinals with ordered-fiber maps.
- ``algebras``: associative algebra descriptions and the multiplicative
  tensor action of ordered-fiber maps.
- ``symcomplex``: block-tensor chain complexes with the signed block
  calculus, cycles and the external product.
- ``linalg``: sparse exact integer/rational linear algebra (Smith form,
  certified rank, membership in integer column spans).
- ``homology``: chain complex homology, Poincare polynomials, induced
  maps on homology.
- ``reps``: symmetric group characters and the representation content of
  homology; small group homology.
- ``hs``: low-degree symmetric and cyclic homology of algebras, the
  comparison map between them, and truncated epimorphism complexes.
- ``cli``: the ``symhom`` command line front end.
"""

__version__ = "0.1.0"

from .rings import ZZ, QQ, GF, Ring, parse_ring
from .errors import (
    AugmentationError,
    CompositionError,
    DomainError,
    ResourceGuardError,
    TruncationError,
    ValidationError,
)
from .deltas import (
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
from .linalg import (
    SparseExactMatrix,
    nullspace,
    rank,
    smith_normal_form,
    solve_in_span,
)
from .homology import (
    ChainComplexDesc,
    HomologyResult,
    format_poincare,
    homology,
    induced_map_on_homology,
    poincare_polynomial,
)
from .algebras import (
    AlgebraSpec,
    Tensor,
    bsym_apply,
    group_algebra_z2,
    matrix_algebra_m2,
    polynomial_algebra,
    scalar_algebra,
    truncated_polynomial_algebra,
)
from .symcomplex import (
    SymChain,
    b_cycle,
    block_transpose_permutation,
    boundary,
    box_product,
    build_complex,
    enumerate_basis,
    sigma_act,
)
from .reps import (
    ClassFunction,
    decompose,
    group_homology_small,
    homology_character,
    induced_character_from_cyclic,
    irreducible_characters,
    lefschetz_numbers,
    top_homology_character,
)
from .hs import (
    HSReport,
    build_collapsed_complex,
    build_hc_low_complex,
    build_low_complex,
    build_truncated_epi_complex,
    comparison_map,
    hc_low,
    hs_degree,
    hs_low,
    induced_h0_map,
)

__all__ = [
    "__version__",
    "ZZ", "QQ", "GF", "Ring", "parse_ring",
    "AugmentationError", "CompositionError", "DomainError",
    "ResourceGuardError", "TruncationError", "ValidationError",
    "DeltaSMorphism", "OrderPreservingMap", "Permutation",
    "compose", "enumerate_epis", "enumerate_increasing_epis",
    "enumerate_morphisms", "epi_count", "hom_count", "to_permutation",
    "SparseExactMatrix", "nullspace", "rank", "smith_normal_form",
    "solve_in_span",
    "ChainComplexDesc", "HomologyResult", "format_poincare", "homology",
    "induced_map_on_homology", "poincare_polynomial",
    "AlgebraSpec", "Tensor", "bsym_apply", "group_algebra_z2",
    "matrix_algebra_m2", "polynomial_algebra", "scalar_algebra",
    "truncated_polynomial_algebra",
    "SymChain", "b_cycle", "block_transpose_permutation", "boundary",
    "box_product", "build_complex", "enumerate_basis", "sigma_act",
    "ClassFunction", "decompose", "group_homology_small",
    "homology_character", "induced_character_from_cyclic",
    "irreducible_characters", "lefschetz_numbers", "top_homology_character",
    "HSReport", "build_collapsed_complex", "build_hc_low_complex",
    "build_low_complex", "build_truncated_epi_complex", "comparison_map",
    "hc_low", "hs_degree", "hs_low", "induced_h0_map",
]
