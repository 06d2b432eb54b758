"""Exact computation with generalized matrix algebras and their (Lie)
higher derivations: construction from Morita contexts, structure-condition
checking, and a certificate-producing properness decision."""

from .linalg import (
    AffineSolutionSet, Field, LinAlgError, Matrix, PrimeField, QQ,
    RationalField, Subspace, intersect, kernel, solve, span,
)
from .algebra import (
    AlgebraElement, AlgebraError, FinDimAlgebra, Trivalent, center,
    commutator, dual_numbers, has_nonzero_central_ideal, is_domain,
    is_idempotent, is_nontrivial_idempotent, matrix_algebra, multiply,
    product_field, upper_triangular_algebra, validate,
)
from .gma import (
    Bimodule, CenterIso, Gma, GmaError, MoritaContext, NotWeaklyFaithfulError,
    benkovic, benkovic_improper_map, build_gma, center_gma, compute_phi,
    faithfulness, full_matrix, is_trivial, peirce_decompose,
    peirce_decompose_with_embedding, project_a, project_b, regular_bimodule,
    triangular,
)
from .mapseq import (
    CheckResult, EntryMaps, MapSequence, MapSequenceError, extract_entries,
    identity_sequence, inner_derivation, is_center_valued_vanishing,
    ordinary_from_derivation, ordinary_sequence, reconstruct, seq_grade,
    seq_scale, seq_sum, seq_truncate, verify_hd, verify_lhd, zero_sequence,
    zero_tau,
)
from .structure import (
    ConditionReport, HdFamilies, IngredientError, LhdFamilies,
    LhdIngredients, StructureError, Violation, check_hd_conditions,
    check_lhd_conditions, check_tau_form, eta, family_word_indices,
    hd_families, lhd_families, nu, synthesize_lhd, word_sum_indices,
    word_sums, zero_ingredients,
)
from .properness import (
    Certificate, GammaMaps, PropernessError, SufficiencyReport, Verdict,
    check_a_prime, check_b_prime, check_sufficient, decide_proper,
    eq34_crosscheck, improper_witness_holds, verify_certificate,
)

__version__ = "0.1.0"
