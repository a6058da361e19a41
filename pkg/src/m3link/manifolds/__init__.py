"""3-manifold descriptions, homology, linking forms and the catalog."""

from .catalog import (
    CatalogEntry,
    FreeProductHandle,
    catalog_entry,
    derived_quotient_catalog,
    filter_catalog,
    load_catalog,
)
from .description import ConnectedSum, LensSpace, ManifoldDescription, SpaceForm, Surgery, parse_spaceform_tag
from .fpgroup import FpGroup, abelianization, parse_word
from .invariants import (
    dynkin_d,
    first_homology,
    fundamental_group,
    lens_chain_link_matrix,
    lens_linking_closed_form,
    lens_linking_form,
    linking_form,
    negative_continued_fraction,
    plumbing_matrix,
)

__all__ = [
    "CatalogEntry", "FreeProductHandle", "catalog_entry", "derived_quotient_catalog",
    "filter_catalog", "load_catalog", "ConnectedSum", "LensSpace", "ManifoldDescription",
    "SpaceForm", "Surgery", "parse_spaceform_tag", "FpGroup", "abelianization", "parse_word",
    "dynkin_d", "first_homology", "fundamental_group", "lens_chain_link_matrix",
    "lens_linking_closed_form", "lens_linking_form", "linking_form",
    "negative_continued_fraction", "plumbing_matrix",
]
