"""First homology, linking forms and fundamental groups of descriptions."""

import json
from functools import lru_cache
from importlib import resources

from ..abgrp import FiniteAbelianGroup, QmodZ, direct_sum
from ..errors import PositiveBettiNumber, UnsupportedVariant
from ..exactlin import Cokernel, IntMatrix, SingularMatrixError
from ..torsionpairing import TorsionPairing, from_gram, from_linking_matrix, orthogonal_sum
from .description import parse_spaceform_tag
from .fpgroup import FpGroup, cyclic_presentation, quaternion_presentation


def negative_continued_fraction(p, q):
    """``[a_1, ..., a_k]`` with ``p/q = a_1 - 1/(a_2 - 1/(...))`` and ``a_i >= 2``."""
    q %= p
    if q == 0:
        raise ValueError("q must be a unit mod p")
    out = []
    while q:
        a = -(-p // q)
        out.append(a)
        p, q = q, a * q - p
    return out


def lens_chain_link_matrix(p, q):
    """Tridiagonal linking matrix of the chain link realizing ``L(p, q)``.

    Diagonal ``a_i`` from the continued fraction of ``p/q``, off-diagonal
    ``-1``; its determinant is ``p``.
    """
    a = negative_continued_fraction(p, q)
    k = len(a)
    rows = [[0] * k for _ in range(k)]
    for i, v in enumerate(a):
        rows[i][i] = v
        if i + 1 < k:
            rows[i][i + 1] = rows[i + 1][i] = -1
    return IntMatrix.from_rows(rows, cols=k)


def lens_linking_closed_form(p, q):
    """``Z/p`` with ``<g, g> = -q'/p``, ``q q' ≡ 1 (mod p)``, ``0 < q' < p``."""
    qi = pow(q % p, -1, p)
    return from_gram(FiniteAbelianGroup([p]), [[QmodZ(-qi, p)]])


def dynkin_d(k):
    """Plumbing matrix on the ``D_k`` tree: diagonal ``-2``, edges ``+1``.

    Vertices ``0..k-3`` form a chain; ``k-2`` and ``k-1`` hang off ``k-3``.
    """
    if k < 4:
        raise ValueError("D_k needs k >= 4")
    rows = [[0] * k for _ in range(k)]
    for i in range(k):
        rows[i][i] = -2
    edges = [(i, i + 1) for i in range(k - 3)] + [(k - 3, k - 2), (k - 3, k - 1)]
    for i, j in edges:
        rows[i][j] = rows[j][i] = 1
    return IntMatrix.from_rows(rows, cols=k)


@lru_cache(maxsize=None)
def _plumbing_data():
    text = resources.files("m3link.data").joinpath("plumbing.json").read_text()
    return json.loads(text)


def plumbing_matrix(order):
    """Plumbing matrix whose boundary is ``S^3`` mod the quaternion group of ``order``.

    Orders 8 and 16 come from the shipped data file; other orders ``4n`` use
    the same ``D_{n+2}`` construction directly.
    """
    data = _plumbing_data()
    key = f"Q{order}"
    if key in data:
        return IntMatrix.from_rows(data[key]["matrix"])
    return dynkin_d(order // 4 + 2)


def first_homology(M):
    """``(torsion of H_1(M), b_1(M))``."""
    v = M.variant
    if v == "lens":
        return FiniteAbelianGroup([M.params[0]]), 0
    if v == "surgery":
        c = Cokernel(M.params)
        return FiniteAbelianGroup(c.invariant_factors, _checked=True), c.free_rank
    if v == "sum":
        parts = [first_homology(part) for part in M.params]
        S, _ = direct_sum([g for g, _ in parts])
        return S, sum(r for _, r in parts)
    kind, arg = parse_spaceform_tag(M.params)
    if kind == "lens":
        return FiniteAbelianGroup([arg[0]]), 0
    from ..groupcoh.cup import abelianization_group
    from ..groupcoh.groups import group_from_kind

    H1, _ = abelianization_group(group_from_kind(("quaternion", arg)))
    return H1, 0


def linking_form(M):
    """Linking pairing on the torsion of ``H_1(M)``; requires ``b_1 = 0``."""
    v = M.variant
    if v == "lens":
        p = lens_linking_form(*M.params)
    elif v == "surgery":
        try:
            p = from_linking_matrix(M.params)
        except SingularMatrixError as exc:
            raise PositiveBettiNumber("surgery matrix is singular: b_1 > 0") from exc
    elif v == "sum":
        p = TorsionPairing(FiniteAbelianGroup(), [])
        for part in M.params:
            p = orthogonal_sum(p, linking_form(part))
    else:
        kind, arg = parse_spaceform_tag(M.params)
        if kind == "lens":
            p = lens_linking_form(*arg)
        else:
            p = from_linking_matrix(plumbing_matrix(arg))
    return p.negate() if M.orientation < 0 else p


def lens_linking_form(p, q):
    return from_linking_matrix(lens_chain_link_matrix(p, q))


def fundamental_group(M):
    v = M.variant
    if v == "lens":
        return cyclic_presentation(M.params[0])
    if v == "sum":
        out = None
        for part in M.params:
            g = fundamental_group(part)
            out = g if out is None else out.free_product(g)
        return out if out is not None else FpGroup([], [])
    if v == "spaceform":
        kind, arg = parse_spaceform_tag(M.params)
        if kind == "lens":
            return cyclic_presentation(arg[0])
        return quaternion_presentation(arg)
    raise UnsupportedVariant("fundamental groups of general surgery presentations are not supported")
