"""Workbench for categories of maps between modules over quiver algebras.

The package computes with mod(Lambda) for a finite-dimensional quiver
algebra Lambda over a prime field, with the category of maps in
mod(Lambda) realized as modules over the triangular matrix algebra
[[Lambda, 0], [Lambda, Lambda]], and with finitely presented functors on
mod(Lambda).  On top of that sit Auslander-Reiten theory on both sides of
the cokernel functor, a relative exact structure on the maps category, and
checkers for tilting and approximation statements.
"""

from .algebra import (
    AlgebraPresentation,
    Quiver,
    Relation,
    algebra_from_spec,
    linear_quiver_algebra,
    triangular_matrix_algebra,
)
from .modules import (
    CertificationError,
    Module,
    ModuleHom,
    decompose,
    direct_sum,
    ext_dim,
    hom_basis,
    indecomposable_injective,
    indecomposable_projective,
    modules_isomorphic,
    simple_module,
    tau,
    tau_inverse,
)
from .maps import (
    MapMorphism,
    MapObject,
    ProjComplex,
    decompose_map_object,
    from_gamma_module,
    gamma_of,
    hom_maps,
    identity_object,
    is_S_exact,
    map_iso_between,
    minimize_presentation,
    relative_ext_dim,
    relative_syzygy,
    rpdim,
    source_only,
    target_only,
    theta_presentation,
    to_gamma_module,
)
from .ar import (
    ArQuiver,
    ShortExactSeq,
    almost_split_ending_at,
    almost_split_starting_at,
    check_ar_in_S,
    is_almost_split,
    knit_ar_quiver,
    maps_seq_from_gamma,
    s_theorem_hypothesis,
)
from .functors import (
    FpFunctor,
    FunctorRealization,
    certify_left_approx,
    certify_right_approx,
    check_classical_tilting,
    check_generalized_tilting,
    epimap_corpus,
    evaluate,
    functor_is_zero,
    functor_realization,
    functor_syzygy,
    functors_isomorphic,
    is_torsion_free,
    left_approx_epimaps,
    left_approx_monomaps,
    module_coresolution,
    monomap_corpus,
    pdim,
    phi_image_of_ar,
    realize_map_object,
    reconstruct_maps_approx_from_phi,
    relative_coresolution,
    representable_functor,
    right_approx_epimaps,
    right_approx_monomaps,
    simple_functor,
    theta_functor,
    tilting_report_json,
    torsion_radical,
    transport_approx_via_phi,
)
from .algfile import AlgebraFile, AlgFileError, load_algebra_file, parse_algebra_file

__all__ = [
    "AlgebraPresentation",
    "Quiver",
    "Relation",
    "algebra_from_spec",
    "linear_quiver_algebra",
    "triangular_matrix_algebra",
    "CertificationError",
    "Module",
    "ModuleHom",
    "decompose",
    "direct_sum",
    "ext_dim",
    "hom_basis",
    "indecomposable_injective",
    "indecomposable_projective",
    "modules_isomorphic",
    "simple_module",
    "tau",
    "tau_inverse",
    "MapMorphism",
    "MapObject",
    "ProjComplex",
    "decompose_map_object",
    "from_gamma_module",
    "gamma_of",
    "hom_maps",
    "identity_object",
    "is_S_exact",
    "map_iso_between",
    "minimize_presentation",
    "relative_ext_dim",
    "relative_syzygy",
    "rpdim",
    "source_only",
    "target_only",
    "theta_presentation",
    "to_gamma_module",
    "ArQuiver",
    "ShortExactSeq",
    "almost_split_ending_at",
    "almost_split_starting_at",
    "check_ar_in_S",
    "is_almost_split",
    "knit_ar_quiver",
    "maps_seq_from_gamma",
    "s_theorem_hypothesis",
    "FpFunctor",
    "FunctorRealization",
    "check_classical_tilting",
    "check_generalized_tilting",
    "epimap_corpus",
    "evaluate",
    "functor_realization",
    "functors_isomorphic",
    "is_torsion_free",
    "left_approx_epimaps",
    "left_approx_monomaps",
    "monomap_corpus",
    "pdim",
    "phi_image_of_ar",
    "realize_map_object",
    "reconstruct_maps_approx_from_phi",
    "representable_functor",
    "right_approx_epimaps",
    "right_approx_monomaps",
    "simple_functor",
    "theta_functor",
    "torsion_radical",
    "transport_approx_via_phi",
    "AlgebraFile",
    "AlgFileError",
    "load_algebra_file",
    "parse_algebra_file",
    "certify_left_approx",
    "certify_right_approx",
    "functor_is_zero",
    "functor_syzygy",
    "module_coresolution",
    "relative_coresolution",
    "tilting_report_json",
]
