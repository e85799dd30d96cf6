"""Exact convolution algebra of complex measures on finite groups.

The package computes with measures whose coefficients live in cyclotomic
fields, so every algebraic identity (idempotency, commutation, limits of
convolution powers) is decided exactly; floating point appears only in
norm evaluation, power-iteration dynamics and the rotation-group quadrature
demo.
"""

from .cyclo import CycloScalar
from .groups import (
    CosetSpace,
    GroupTable,
    Subgroup,
    all_subgroups,
    centralizer,
    closure,
    commutator_subgroup,
    cyclic_group,
    full_subgroup,
    normal_subgroups,
    subgroup_from_elements,
    trivial_subgroup,
    dihedral_group,
    direct_product,
    from_permutations,
    from_table,
    intersection,
    is_matched_pair,
    is_subgroup_product,
    left_cosets,
    normalizer,
    product_set,
    quaternion_group,
    quotient_group,
    semidirect_product,
    symmetric_group,
)
from .characters import (
    Character,
    character_group,
    find_extension,
    kernel,
    restrict,
)
from .measures import (
    FloatMeasure,
    IdempotentClass,
    Measure,
    adjoint,
    char_idem,
    classify_idempotent,
    convolve,
    dirac,
    haar,
    support,
    tv_norm,
)
from .commutation import (
    CommutationVerdict,
    classify_pair,
    semidirect_counterexample,
)
from .dynamics import (
    LimitReport,
    StrombergResult,
    free_product_decay,
    idempotent_power_limit,
    stromberg_check,
    verify_corollary_35,
)
from .measure_groups import (
    GammaElement,
    exp_skew,
    g_k_rho,
    gamma_elements,
    is_local_unitary,
    n_k_rho,
    nu_u,
    omega_class_count,
    verify_prop_43,
)
from .so3 import (
    Example33Report,
    example_33_report,
    integrate_haar,
    integrate_product,
)
from .suite import FIXTURES, SuiteConfig, run_fixture, run_suite

__version__ = "0.1.0"

__all__ = [
    "CycloScalar",
    "GroupTable",
    "Subgroup",
    "CosetSpace",
    "closure",
    "full_subgroup",
    "trivial_subgroup",
    "subgroup_from_elements",
    "normal_subgroups",
    "product_set",
    "is_subgroup_product",
    "normalizer",
    "centralizer",
    "commutator_subgroup",
    "quotient_group",
    "intersection",
    "is_matched_pair",
    "all_subgroups",
    "left_cosets",
    "symmetric_group",
    "cyclic_group",
    "dihedral_group",
    "quaternion_group",
    "direct_product",
    "semidirect_product",
    "from_permutations",
    "from_table",
    "Character",
    "character_group",
    "restrict",
    "kernel",
    "find_extension",
    "Measure",
    "FloatMeasure",
    "IdempotentClass",
    "dirac",
    "haar",
    "char_idem",
    "convolve",
    "adjoint",
    "support",
    "tv_norm",
    "classify_idempotent",
    "CommutationVerdict",
    "classify_pair",
    "semidirect_counterexample",
    "LimitReport",
    "StrombergResult",
    "stromberg_check",
    "idempotent_power_limit",
    "verify_corollary_35",
    "free_product_decay",
    "GammaElement",
    "n_k_rho",
    "g_k_rho",
    "gamma_elements",
    "omega_class_count",
    "is_local_unitary",
    "verify_prop_43",
    "nu_u",
    "exp_skew",
    "Example33Report",
    "example_33_report",
    "integrate_product",
    "integrate_haar",
    "SuiteConfig",
    "FIXTURES",
    "run_fixture",
    "run_suite",
    "__version__",
]
