"""Finite groups, free resolutions, cohomology, cup products and Bocksteins."""

from .chainmap import (
    AlexanderWhitney,
    ChainMap,
    Diagonal,
    LiftedDiagonal,
    diagonal_approximation,
    lift_chain_map,
)
from .cohomology import (
    CohomologyElement,
    CohomologyGroup,
    bockstein,
    bockstein_inverse,
    cohomology,
    parse_coeffs,
)
from .cup import (
    CupPairing,
    abelianization_group,
    char_to_h2,
    cup_pairing_gram,
    cup_pairings_isomorphic,
    cup_product,
    ext_h1,
    free_product_cup_pairing,
)
from .groups import (
    FiniteGroup,
    abelianization,
    cyclic_group,
    derived_quotient,
    derived_series_term,
    derived_subgroup,
    dihedral_group,
    direct_product,
    group_from_tag,
    is_generalized_quaternion,
    parse_tag,
    quaternion_group,
    semidihedral_group,
    sylow2,
)
from .resolution import (
    FreeResolution,
    bar_resolution,
    contracting_homotopy_solve,
    periodic_resolution_cyclic,
    periodic_resolution_quaternion,
    resolution_from_json_obj,
    special_resolution,
    tensor_resolution,
)

__all__ = [
    "AlexanderWhitney", "ChainMap", "Diagonal", "LiftedDiagonal", "diagonal_approximation",
    "lift_chain_map", "CohomologyElement", "CohomologyGroup", "bockstein",
    "bockstein_inverse", "cohomology", "parse_coeffs", "CupPairing", "abelianization_group",
    "char_to_h2", "cup_pairing_gram", "cup_pairings_isomorphic", "cup_product", "ext_h1", "free_product_cup_pairing",
    "FiniteGroup", "abelianization", "cyclic_group", "derived_quotient",
    "derived_series_term", "derived_subgroup", "dihedral_group", "direct_product",
    "group_from_tag", "is_generalized_quaternion", "parse_tag", "quaternion_group",
    "semidihedral_group", "sylow2", "FreeResolution", "bar_resolution",
    "contracting_homotopy_solve", "periodic_resolution_cyclic",
    "periodic_resolution_quaternion", "resolution_from_json_obj", "special_resolution",
    "tensor_resolution",
]
