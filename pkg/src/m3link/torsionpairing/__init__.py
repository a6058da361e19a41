"""Torsion linking-type pairings: construction, sums, isomorphism, witnesses."""

from .pairing import (
    PairingIsoReport,
    TorsionPairing,
    are_isomorphic,
    from_gram,
    from_linking_matrix,
    is_nondegenerate,
    order_realization_witness,
    orthogonal_sum,
    pairing_from_cup,
    random_nondegenerate,
)

__all__ = [
    "PairingIsoReport", "TorsionPairing", "are_isomorphic", "from_gram", "from_linking_matrix",
    "is_nondegenerate", "order_realization_witness", "orthogonal_sum", "pairing_from_cup",
    "random_nondegenerate",
]
