"""Exact commutative algebra toolkit: Gröbner bases, Koszul complexes, linkage, blowup algebras."""

from ._backend import BACKEND
from .poly import NotHomogeneous, Polynomial, QuotientRingSpec, RingSpec, parse_poly, poly_arith
from .groebner import (
    Ideal,
    eliminate,
    groebner_basis,
    height,
    ideal_intersect,
    ideal_quotient,
    krull_dimension,
    min_gens_count,
    normal_form,
    saturate,
)
from .matrix import Matrix
from .modules import (
    FreeModule,
    ModuleElement,
    PresentedModule,
    Submodule,
    free_resolution,
    minimal_generators,
    module_gb,
    subquotient_homology,
    syzygies,
)
from .complexes import (
    ChainComplex,
    ChainMap,
    cone_comparison_maps,
    homotopy_defect,
    koszul_complex,
    lift_chain_map,
    mapping_cone,
    power_chain_map,
    resolve_complex,
    scalar_chain_map,
    syzygy_sequences,
    wedge_chain_map,
)

from .report import CheckReport
from .linkage import (
    canonical_module,
    find_regular_element,
    generic_link,
    is_almost_complete_intersection,
    is_d_sequence,
    is_quasi_gorenstein,
    link,
    verify_h1_isomorphism,
)
from .rees import (
    associated_graded_presentation,
    ext_rees_presentation,
    is_linear_type,
    m_complex,
    rees_presentation,
    regular_sequence_check,
    structure_prime_evidence,
    sym_of_conormal_presentation,
    sym_presentation,
    verify_dehomogenization,
    verify_m_complex,
    verify_structure_quotient,
)
from .cet import ce_check, certify_sop, monomial_check, variant_ce_check, variant_spec
from .jobs import load_job, run_job

__version__ = "0.1.0"
