"""Strong Gram invariants of connected non-negative unit forms of Dynkin
type A: cycle types, factored Coxeter polynomials and (reduced) Coxeter
numbers, computed exactly through quiver realizations.
"""

from .errors import CanonicalizationError, InvariantViolation, NotDynkinTypeA
from .invariants import (
    CoxeterNumbers,
    coxeter_numbers,
    coxeter_numbers_of_cycle_type,
    coxeter_polynomial,
    coxeter_polynomial_of_cycle_type,
    cycle_type_from_cox_poly,
    cycle_type_of_form,
    enumerate_coxeter_polynomials,
    spectral_multiplicity,
    verify_reduced_coxeter_number,
)
from .partitions import (
    FactoredCoxPoly,
    Partition,
    char_poly_of_partition,
    cycle_type_of_permutation,
    part1c,
    partitions_by_length,
)
from .quiver import (
    Quiver,
    Walk,
    coxeter_laplace,
    coxeter_matrix_of_quiver,
    cycle_type_of_quiver,
    incidence_matrix,
    incidence_vector,
    inverse_quiver,
    laplace,
    min_decreasing_walk,
    min_increasing_walk,
    opposite,
    relabel_vertices,
    remove_last_arrow,
    structural_walk,
    triangular_gram,
    vertex_permutation,
)
# realize() itself stays in its module to avoid shadowing the submodule name
from .realize import (
    RealizationResult,
    canonical_extension_quiver,
    realize_algorithm71,
    realize_backtracking,
    representative_quiver_A,
    representative_quiver_star,
    weak_congruence_to_canonical,
)
from .sweep import SweepReport, run_sweep
from .unitform import (
    UnitForm,
    check_strong_congruence,
    corank,
    coxeter_matrix,
    coxeter_polynomial_direct,
    evaluate,
    form_of_quiver,
    is_connected,
    is_non_negative,
    symmetric_gram,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
