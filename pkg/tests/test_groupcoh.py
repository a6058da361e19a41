from fractions import Fraction
from math import gcd
import random

import pytest
from hypothesis import given, strategies as st

from m3link.abgrp import FiniteAbelianGroup, QmodZ, dual_characters
from m3link.errors import BoundExceeded, ContextMismatch, HorizonError, InvalidTag, NoSolution, UnsupportedVariant
from m3link.groupcoh import (
    AlexanderWhitney,
    FiniteGroup,
    FreeResolution,
    bar_resolution,
    bockstein,
    bockstein_inverse,
    char_to_h2,
    cohomology,
    contracting_homotopy_solve,
    cup_pairing_gram,
    cup_pairings_isomorphic,
    cup_product,
    derived_subgroup,
    diagonal_approximation,
    ext_h1,
    free_product_cup_pairing,
    group_from_tag,
    is_generalized_quaternion,
    lift_chain_map,
    periodic_resolution_cyclic,
    periodic_resolution_quaternion,
    resolution_from_json_obj,
    special_resolution,
    sylow2,
    tensor_resolution,
)
from m3link.groupcoh.cohomology import bockstein_cochain
from m3link.groupcoh.cup import abelianization_group
from m3link.groupcoh.resolution import _table_homotopy

# groups with a shipped special resolution, as used by the catalog
SPECIAL_TAGS = ["Z/2", "Z/3", "Z/4", "Z/5", "Z/6", "Z/8", "Z/12", "product(Z/2,Z/2)",
                "product(Z/2,Z/4)", "product(Z/2,Z/3)", "product(Z/3,Z/3)", "Q8", "Q16"]
SMALL_TAGS = ["Z/2", "Z/3", "Z/4", "product(Z/2,Z/2)", "Q8"]


def special(tag, horizon=5):
    return special_resolution(group_from_tag(tag), horizon)


def h(tag, n, coeffs="Z", horizon=None):
    R = special(tag, horizon or max(5, n + 2))
    return cohomology(R, n, coeffs).group


def z_factors(R, n):
    return list(cohomology(R, n).group.factors)


# -- groups -----------------------------------------------------------------------


def test_group_from_tag_examples():
    assert group_from_tag("cyclic(1)").order == 1
    Q8 = group_from_tag("quaternion(8)")
    assert Q8.order == 8 and len(Q8.center()) == 2
    K = group_from_tag("product(cyclic(2),cyclic(2))")
    assert K.order == 4 and K.is_abelian()
    assert all(K.mul(g, g) == 0 for g in range(4))
    assert group_from_tag("quaternion(12)").order == 12
    with pytest.raises(InvalidTag):
        group_from_tag("frobenius(20)")
    with pytest.raises(InvalidTag):
        group_from_tag("quaternion(10)")
    with pytest.raises(ValueError):
        FiniteGroup([[0, 1], [0, 1]])


def test_group_json_roundtrip():
    G = group_from_tag("Q16")
    H = FiniteGroup.from_json_obj(G.to_json_obj())
    assert H.table == G.table and H.kind == G.kind


def test_derived_subgroup_examples():
    assert derived_subgroup(group_from_tag("product(Z/2,Z/4)"))[0].order == 1
    D, inc = derived_subgroup(group_from_tag("Q8"))
    Q8 = group_from_tag("Q8")
    assert D.order == 2 and set(inc) == set(Q8.center())
    assert derived_subgroup(group_from_tag("dihedral(8)"))[0].order == 2


def test_sylow2_examples():
    assert sylow2(group_from_tag("Z/15"))[0].order == 1
    S, _ = sylow2(group_from_tag("Q16"))
    assert S.order == 16 and is_generalized_quaternion(S)
    S, _ = sylow2(group_from_tag("product(Q8,Z/3)"))
    assert S.order == 8 and is_generalized_quaternion(S)
    with pytest.raises(BoundExceeded):
        sylow2(group_from_tag("Z/1024"))


# -- resolutions ------------------------------------------------------------------


def test_bar_resolution_examples():
    T = bar_resolution(group_from_tag("cyclic(1)"), 4)
    assert T.ranks == [1] * 5
    # exactness over Z forces the even boundaries to be the identity
    assert all(not T.boundary(n, {0: 1}) for n in (1, 3))
    assert T.verify() == []
    assert bar_resolution(group_from_tag("Z/2"), 5).ranks == [2 ** n for n in range(6)]
    R = bar_resolution(group_from_tag("Z/3"), 4)
    assert all(R.check_dd(n) == [] for n in range(1, 5))
    with pytest.raises(BoundExceeded):
        bar_resolution(group_from_tag("Q16"), 6)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_periodic_cyclic_exactness(n):
    R = periodic_resolution_cyclic(n, 6)
    assert R.ranks == [1] * 7
    assert R.verify() == []


def test_periodic_cyclic_cohomology_z2():
    R = periodic_resolution_cyclic(2, 6)
    assert [z_factors(R, n) for n in range(1, 6)] == [[], [2], [], [2], []]


def test_h1_vanishes():
    for tag in SPECIAL_TAGS:
        assert h(tag, 1).is_trivial()


def test_quaternion_resolutions():
    R = special("Q8")
    assert R.ranks == [1, 2, 2, 1, 1, 2]
    assert z_factors(R, 4) == [8]
    assert cohomology(R, 2).group == ext_h1(R.group) == FiniteAbelianGroup([2, 2])
    R16 = periodic_resolution_quaternion(16, 5)
    assert all(R16.check_dd(n) == [] for n in range(1, 6))
    assert R16.verify() == []


@pytest.mark.parametrize("tag", SPECIAL_TAGS)
def test_periodic_groups_have_cyclic_h4_of_order_g(tag):
    # groups with periodic cohomology: H^4 cyclic of order |G|
    G = group_from_tag(tag)
    if G.kind[0] == "product" and not FiniteAbelianGroup([f.order for f in G.factors]).is_cyclic():
        pytest.skip("not periodic")
    assert z_factors(special(tag), 4) == [G.order]


def test_tensor_resolution():
    G1 = group_from_tag("Z/2")
    T = tensor_resolution(special_resolution(group_from_tag("cyclic(1)"), 4),
                          periodic_resolution_cyclic(2, 4, G=G1), G=G1)
    assert [z_factors(T, n) for n in range(1, 4)] == [[], [2], []]
    V = special("product(Z/2,Z/2)")
    assert V.verify() == []
    assert cohomology(V, 2).group == ext_h1(V.group) == FiniteAbelianGroup([2, 2])


def test_contracting_homotopy_solve():
    R = bar_resolution(group_from_tag("Z/3"), 3)
    S = FreeResolution(R.group, R.ranks, R._boundary_gen, None, strategy="bar-solved")
    S._homotopy_fn = _table_homotopy(contracting_homotopy_solve(S))
    assert S.verify() == []
    C = periodic_resolution_cyclic(4, 4)
    C2 = FreeResolution(C.group, C.ranks, C._boundary_gen, None)
    C2._homotopy_fn = _table_homotopy(contracting_homotopy_solve(C2))
    assert C2.verify() == []
    T = group_from_tag("cyclic(1)")
    bad = FreeResolution(T, [1, 1, 1], lambda n, j: [], None)
    with pytest.raises(NoSolution, match="degree 1"):
        contracting_homotopy_solve(bad)


def test_resolution_json_roundtrip():
    R = special("Q8")
    S = resolution_from_json_obj(R.to_json_obj(homotopy=True))
    assert S.verify() == [] and z_factors(S, 4) == [8]


def test_homotopy_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("M3LINK_CACHE_DIR", str(tmp_path))
    R = periodic_resolution_quaternion(8, 5, G=group_from_tag("Q8"))
    assert list(tmp_path.glob("homotopy-*.json"))
    again = periodic_resolution_quaternion(8, 5, G=group_from_tag("Q8"))
    assert again.verify() == [] and z_factors(again, 4) == z_factors(R, 4)


# -- chain maps and diagonals -------------------------------------------------------


def test_self_lift_commutes():
    R = special("Q8")
    f = lift_chain_map(R, R, 4)
    assert f.verify() == []
    assert all(R.augmentation(img) == 1 for img in f.images[0])


@pytest.mark.parametrize("tag", ["Z/2", "Z/3", "product(Z/2,Z/2)"])
def test_lift_to_bar_induces_isomorphism_on_h2(tag):
    G = group_from_tag(tag)
    R, B = special_resolution(G, 4), bar_resolution(G, 4)
    f = lift_chain_map(R, B, 3)
    assert f.verify() == []
    HB, HR = cohomology(B, 2), cohomology(R, 2)
    images = {HR.project(f.pullback(2, HB.representative(x))) for x in HB.group.elements()}
    assert len(images) == HR.group.order == HB.group.order


def test_alexander_whitney_closed_form():
    G = group_from_tag("Z/3")
    B = bar_resolution(G, 3)
    D = diagonal_approximation(B, 2)
    assert isinstance(D, AlexanderWhitney)
    g1, g2 = 1, 2
    j = g1 * 3 + g2
    N = 3
    terms = D.terms(2, j)
    # [g1|g2] (x) [] + [g1] (x) g1[g2] + [] (x) [g1|g2]
    assert terms == [(0, 0, j * N, 1), (1, g1 * N, g2 * N + g1, 1), (2, j * N, 0, 1)]
    assert D.verify() == []


@pytest.mark.parametrize("tag", SPECIAL_TAGS)
def test_lifted_diagonals_commute(tag):
    R = special(tag)
    D = diagonal_approximation(R, 4)
    assert D.verify() == []


@pytest.mark.parametrize("n", [2, 3])
def test_cyclic_cup_square_generates_h4(n):
    for R in (periodic_resolution_cyclic(n, 5), bar_resolution(group_from_tag(f"Z/{n}"), 5)):
        x = cohomology(R, 2).generators()[0]
        sq = cup_product(x, x)
        assert sq.order() == n


# -- cohomology ------------------------------------------------------------------------


def test_cohomology_examples():
    assert h("Z/2", 2).factors == (2,)
    assert h("Q8", 4).factors == (8,)
    with pytest.raises(HorizonError):
        cohomology(special("Z/2", 3), 3)


@pytest.mark.parametrize("tag", ["Z/2", "Z/4", "Z/6", "product(Z/2,Z/2)", "Q8"])
@pytest.mark.parametrize("m", [2, 3, 4])
def test_mod_m_matches_universal_coefficients(tag, m):
    R = special(tag, 6)

    def uct(n):
        if n == 0:
            return [m]
        tens = [gcd(d, m) for d in cohomology(R, n).group.factors]
        tor = [gcd(d, m) for d in cohomology(R, n + 1).group.factors]
        return tens + tor

    for n in range(0, 4):
        assert cohomology(R, n, m).group == FiniteAbelianGroup(uct(n)), n


@pytest.mark.parametrize("tag", ["Z/4", "product(Z/2,Z/2)", "Q8"])
def test_qmodz_shifts_integral(tag):
    R = special(tag, 6)
    for n in range(1, 4):
        assert cohomology(R, n, "QmodZ").group == cohomology(R, n + 1).group


@pytest.mark.parametrize("tag", SPECIAL_TAGS)
def test_h2_matches_ext_of_h1(tag):
    G = group_from_tag(tag)
    H2 = cohomology(special(tag), 2).group
    assert H2 == ext_h1(G)
    H1, _ = abelianization_group(G)
    assert H2.order == len(dual_characters(H1))


@given(st.sampled_from(SMALL_TAGS), st.integers(0, 10**6))
def test_representative_independence(tag, seed):
    rng = random.Random(seed)
    R = special(tag)
    for n in (2, 3, 4):
        H = cohomology(R, n)
        prev = R.coboundary_matrix(n - 1)
        for x in H.group.elements():
            z = list(H.representative(x))
            u = [rng.randint(-3, 3) for _ in range(prev.cols)]
            z2 = [a + b for a, b in zip(z, prev.apply(u))]
            assert H.project(z2) == x


def test_char_to_h2_examples():
    R = special("Z/2")
    H1, _ = abelianization_group(R.group)
    chars = dual_characters(H1)
    zero = [c for c in chars if c.is_zero()][0]
    half = [c for c in chars if not c.is_zero()][0]
    assert char_to_h2(R, zero).is_zero()
    assert char_to_h2(R, half).order() == 2
    R8 = special("Q8")
    H1, _ = abelianization_group(R8.group)
    classes = {char_to_h2(R8, c).cls for c in dual_characters(H1)}
    assert len(classes) == 4


@pytest.mark.parametrize("tag", ["Z/4", "Z/6", "product(Z/2,Z/2)", "product(Z/2,Z/4)", "Q16"])
def test_char_to_h2_is_isomorphism(tag):
    R = special(tag)
    H1, _ = abelianization_group(R.group)
    chars = dual_characters(H1)
    cls = {c: char_to_h2(R, c) for c in chars}
    assert len({v.cls for v in cls.values()}) == cohomology(R, 2).group.order
    rng = random.Random(0)
    for _ in range(10):
        a, b = rng.choice(chars), rng.choice(chars)
        assert cls[a + b] == cls[a] + cls[b]


def test_bockstein_examples():
    R = special("Z/2")
    H1q = cohomology(R, 1, "QmodZ")
    assert bockstein(H1q.zero()).is_zero()
    x = H1q.element([Fraction(1, 2)])
    y = bockstein(x)
    assert y.order() == 2
    H1, coords = abelianization_group(R.group)
    half = [c for c in dual_characters(H1) if not c.is_zero()][0]
    assert y == char_to_h2(R, half)
    # β(x) viewed with Q/Z values vanishes, so a second Bockstein is zero
    z = cohomology(R, 2, "QmodZ").element([Fraction(v) for v in bockstein_cochain(R, 1, x.cochain)])
    assert z.is_zero() and bockstein(z).is_zero()


def test_bockstein_inverse_examples():
    R = special("Q8")
    assert bockstein_inverse(cohomology(R, 4).zero()).is_zero()
    for y in cohomology(R, 4).generators():
        assert bockstein(bockstein_inverse(y)) == y
    R4 = special("Z/4")
    H1, coords = abelianization_group(R4.group)
    quarter = [c for c in dual_characters(H1) if c(H1(*coords[1])) == QmodZ(1, 4)][0]
    y = char_to_h2(R4, quarter)
    x = bockstein_inverse(y)
    # the periodic resolution's degree-1 generator has boundary (t - 1) e_0 with t = element 1
    assert x.cochain == (Fraction(1, 4),)


@given(st.sampled_from(SPECIAL_TAGS), st.integers(0, 10**6))
def test_bockstein_linearity(tag, seed):
    rng = random.Random(seed)
    R = special(tag)
    H2 = cohomology(R, 2)
    a = H2.from_class(H2.group.random_element(rng))
    b = H2.from_class(H2.group.random_element(rng))
    lhs = bockstein_inverse(cup_product(a, b))
    rhs = cup_product(bockstein_inverse(a), b)
    assert lhs == rhs


# -- cup products ------------------------------------------------------------------------


def test_cup_product_examples():
    R = special("Z/2")
    x = cohomology(R, 2).generators()[0]
    assert cup_product(x, cohomology(R, 2).zero()).is_zero()
    assert cup_product(x, x).order() == 2
    B = bar_resolution(group_from_tag("Z/2"), 5)
    xb = cohomology(B, 2).generators()[0]
    assert cup_product(xb, xb) == cohomology(B, 4).generators()[0]
    Q8 = special("Q8")
    for a in cohomology(Q8, 2).elements():
        assert cup_product(a, a).is_zero()
    with pytest.raises(ContextMismatch):
        cup_product(x, xb)


@given(st.sampled_from(SMALL_TAGS + ["Q16", "product(Z/2,Z/3)"]), st.integers(0, 10**6))
def test_cup_bilinear_and_symmetric(tag, seed):
    rng = random.Random(seed)
    H2 = cohomology(special(tag), 2)
    a, b, c = (H2.from_class(H2.group.random_element(rng)) for _ in range(3))
    assert cup_product(a + b, c) == cup_product(a, c) + cup_product(b, c)
    assert cup_product(a, b) == cup_product(b, a)
    # class does not depend on the representing cocycle
    prev = H2.resolution.coboundary_matrix(1)
    shifted = H2.element([x + y for x, y in zip(a.cochain, prev.apply([rng.randint(-2, 2)
                                                                        for _ in range(prev.cols)]))])
    assert cup_product(shifted, b) == cup_product(a, b)


def test_cup_pairing_examples():
    z2 = cup_pairing_gram(special("Z/2"))
    assert (z2.h2.factors, z2.image.factors, z2.gram_ints()) == ((2,), (2,), [[1]])
    q16 = cup_pairing_gram(special("Q16"))
    assert any(not q16.gram[i][i].is_zero() for i in range(q16.h2.rank))
    v4 = cup_pairing_gram(special("product(Z/2,Z/2)"))
    assert not v4.cyclic and v4.image_rank >= 2
    for p in (z2, q16, v4):
        assert all(p.gram[i][j] == p.gram[j][i] for i in range(p.h2.rank) for j in range(p.h2.rank))
    with pytest.raises(ContextMismatch):
        cup_pairing_gram(special("Z/2", 4))


@pytest.mark.parametrize("tag", ["Z/2", "Z/3", "Z/4", "Z/5", "Z/6", "Z/7", "Z/8",
                                 "product(Z/2,Z/2)", "product(Z/2,Z/3)", "product(Z/2,Z/4)", "Q8"])
def test_resolution_independence(tag):
    G = group_from_tag(tag)
    a = cup_pairing_gram(bar_resolution(G, 5))
    b = cup_pairing_gram(special_resolution(G, 5))
    assert cup_pairings_isomorphic(a, b) is not None


def test_free_product_examples():
    p = free_product_cup_pairing(["Z/2", "Z/2"])
    x, y = p.block_generators
    assert p.h2.factors == (2, 2) and not p.cyclic and p.image_rank == 2
    assert p.block_products[0][1].is_zero()
    single = free_product_cup_pairing(["Z/5"])
    assert cup_pairings_isomorphic(single, cup_pairing_gram(special("Z/5"))) is not None
    p23 = free_product_cup_pairing(["Z/2", "Z/3"])
    assert p23.image.factors == (6,) and p23.cyclic
    assert p23.block_products[0][1].is_zero() and p23.block_products[1][0].is_zero()
    with pytest.raises(UnsupportedVariant):
        free_product_cup_pairing(["Q8", "Z/2"])
