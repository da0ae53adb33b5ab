"""Finite PBZ*-lattices: validation, identities, congruences, ideals, centres and enumeration."""

from .algebra import (
    FiniteAlgebra,
    direct_product,
    from_dict,
    is_antiortholattice,
    is_bz_star,
    is_orthomodular,
    is_paraorthomodular,
    is_pbz_star,
    load,
    save,
    sharp_sets,
    to_dict,
    validate,
)
from .catalog import build
from .center import (
    center_boolean_algebra,
    commutation_report,
    decompose,
    foulis_holland_check,
    interval_algebras,
    is_central_C1C4,
)
from .classify import classify
from .congruences import (
    Congruence,
    all_congruences,
    factor_pairs,
    principal_congruence,
    quotient,
    structural_predicates,
)
from .enumeration import enumerate_algebras, enumerate_expansions, enumerate_lattices
from .errors import *  # noqa: F401,F403
from .ideals import (
    binary_discriminator_check,
    d_term_membership,
    is_congruence,
    is_p_ideal,
    is_weak_de_morgan,
    lattice_ideals,
    p_ideals_equal_ursini,
    reduced_iff_sk,
    rho,
    u_ideal_term_check,
    ursini_ideals,
)
from .suite import verify_theorem_suite
from .terms import check_identity, check_quasi_identity, named_identity, parse_identity, parse_term

__version__ = "0.1.0"
