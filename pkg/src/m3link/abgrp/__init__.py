"""Finite abelian groups, their elements, homomorphisms and characters."""

from .core import (
    AbElement,
    AbHom,
    CokernelProjection,
    FiniteAbelianGroup,
    element_order,
    exponent,
    from_cokernel,
    Subgroup,
    direct_sum,
    normal_form,
    subgroup_generated,
)
from .enumerate import AUT_BOUND, Character, automorphisms, count_invertible_endomorphisms, dual_characters
from .qmodz import QmodZ

__all__ = [
    "AbElement", "AbHom", "CokernelProjection", "FiniteAbelianGroup", "element_order",
    "exponent", "from_cokernel", "normal_form", "Subgroup", "direct_sum", "subgroup_generated", "AUT_BOUND", "Character", "automorphisms",
    "count_invertible_endomorphisms", "dual_characters", "QmodZ",
]
