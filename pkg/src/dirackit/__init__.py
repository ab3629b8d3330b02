"""Exact Dirac index computations for classical real reductive groups."""

from .errors import (ConfigurationError, DiracKitError, ResourceError, ShapeError,
                     SingularPointError, UsageError)
from .lattice import (RootDatum, Weight, WeylElement, build_root_datum, dominant_rep,
                      enumerate_weyl, inner, weyl_element)
from .realform import CartanClass, PairDatum, build_pair, cartan_classes, theta_action_on_weight
from .twisted_cartan import (involution_classes, sigma_stable_oracle,
                             twisted_cartan_classes_complex, twisted_cartan_classes_gl)
from .spin_characters import (CharacterPoly, VirtualKModule, decompose_into_ktypes, k_character,
                              prv_component, spin_character, spin_plus_minus,
                              spin_rho_multiplicity, tensor_decompose)
from .dirac_index import (InfinitesimalChar, StandardParamComplex, StandardParamReal,
                          d2_eigenvalue, elliptic_character, hd_multiplicity, index_standard_complex,
                          index_standard_real, index_virtual, twisted_index_standard_real,
                          vogan_check)
from .ep import ep_pair, ep_twisted, ext_std_vs_findim, hom_dim, ht_ep_vanishing

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError",
    "DiracKitError",
    "ResourceError",
    "ShapeError",
    "SingularPointError",
    "UsageError",
    "RootDatum",
    "Weight",
    "WeylElement",
    "build_root_datum",
    "dominant_rep",
    "enumerate_weyl",
    "inner",
    "weyl_element",
    "CartanClass",
    "PairDatum",
    "build_pair",
    "cartan_classes",
    "theta_action_on_weight",
    "involution_classes",
    "sigma_stable_oracle",
    "twisted_cartan_classes_complex",
    "twisted_cartan_classes_gl",
    "CharacterPoly",
    "VirtualKModule",
    "decompose_into_ktypes",
    "k_character",
    "prv_component",
    "spin_character",
    "spin_plus_minus",
    "spin_rho_multiplicity",
    "tensor_decompose",
    "InfinitesimalChar",
    "StandardParamComplex",
    "StandardParamReal",
    "d2_eigenvalue",
    "elliptic_character",
    "hd_multiplicity",
    "index_standard_complex",
    "index_standard_real",
    "index_virtual",
    "twisted_index_standard_real",
    "vogan_check",
    "ep_pair",
    "ep_twisted",
    "ext_std_vs_findim",
    "hom_dim",
    "ht_ep_vanishing",
]
