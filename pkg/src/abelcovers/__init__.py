"""Exact computation of generalized Dwyer-Fried sets for abelian covers.

The main entry points are re-exported here; see the submodules for details.
"""

from .errors import BoundExceeded, DimensionError, InputError, InvariantViolation, Unsupported
from .lattice import IntMatrix, Lattice, hermite_normal_form, smith_normal_form, saturation
from .groups import (
    FgAbGroup,
    Homomorphism,
    Subgroup,
    cyclic_exponent,
    determinant_group,
    enumerate_epis_mod_aut,
    fiber_representatives,
    gamma_count,
    quotient_invariants,
)
from .characters import (
    Arrangement,
    TorsionCharacter,
    TranslatedSubgroup,
    character_kernel,
    coset_containment,
    coset_intersection,
    epsilon_of_cyclic_extension,
    v_of,
)
from .cyclotomic import CyclotomicScalar
from .laurent import (
    GroupWord,
    LaurentPolynomial,
    Presentation,
    admissible_tau1,
    fox_alexander_matrix,
    hypersurface_positive_dim,
    minors_gcd,
    restrict_to_coset,
)
from .jumploci import (
    Hypersurface,
    ObstructionReport,
    maximal_translated_tori,
    omega_describe,
    omega_member,
    pullback_diagnostics,
    sigma_member,
    singular_set_probe,
    tau_d,
    theta_member,
    u_member,
    upsilon_member,
    xi_d,
)
from .spaces import (
    SeifertData,
    SimplicialComplex,
    brieskorn_invariants,
    brieskorn_omega,
    brieskorn_v1,
    reduced_homology_rank,
    toric_char_variety,
    toric_omega,
)

__all__ = [
    "Arrangement",
    "BoundExceeded",
    "CyclotomicScalar",
    "DimensionError",
    "FgAbGroup",
    "GroupWord",
    "Homomorphism",
    "Hypersurface",
    "InputError",
    "IntMatrix",
    "InvariantViolation",
    "Lattice",
    "LaurentPolynomial",
    "ObstructionReport",
    "Presentation",
    "SeifertData",
    "SimplicialComplex",
    "Subgroup",
    "TorsionCharacter",
    "TranslatedSubgroup",
    "Unsupported",
    "admissible_tau1",
    "brieskorn_invariants",
    "brieskorn_omega",
    "brieskorn_v1",
    "character_kernel",
    "coset_containment",
    "coset_intersection",
    "cyclic_exponent",
    "determinant_group",
    "enumerate_epis_mod_aut",
    "epsilon_of_cyclic_extension",
    "fiber_representatives",
    "fox_alexander_matrix",
    "gamma_count",
    "hermite_normal_form",
    "hypersurface_positive_dim",
    "maximal_translated_tori",
    "minors_gcd",
    "omega_describe",
    "omega_member",
    "pullback_diagnostics",
    "quotient_invariants",
    "reduced_homology_rank",
    "restrict_to_coset",
    "saturation",
    "sigma_member",
    "singular_set_probe",
    "smith_normal_form",
    "tau_d",
    "theta_member",
    "toric_char_variety",
    "toric_omega",
    "u_member",
    "upsilon_member",
    "v_of",
    "xi_d",
]

__version__ = "0.1.0"
