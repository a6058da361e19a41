from collections import Counter
from fractions import Fraction
from math import gcd
from pathlib import Path
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from m3link.abgrp import FiniteAbelianGroup, QmodZ
from m3link.errors import PositiveBettiNumber, UnsupportedVariant
from m3link.exactlin import IntMatrix
from m3link.groupcoh import FiniteGroup, derived_quotient, group_from_tag
from m3link.groupcoh.cup import abelianization_group
from m3link.manifolds import (
    ConnectedSum,
    FpGroup,
    FreeProductHandle,
    LensSpace,
    ManifoldDescription,
    SpaceForm,
    Surgery,
    abelianization,
    catalog_entry,
    derived_quotient_catalog,
    first_homology,
    fundamental_group,
    lens_chain_link_matrix,
    lens_linking_closed_form,
    linking_form,
    load_catalog,
    negative_continued_fraction,
    plumbing_matrix,
)
from m3link.torsionpairing import are_isomorphic, is_nondegenerate, orthogonal_sum

ROOT = Path(__file__).resolve().parent.parent
lens_params = st.integers(2, 24).flatmap(
    lambda p: st.sampled_from([q for q in range(1, p) if gcd(p, q) == 1]).map(lambda q: (p, q)))


def evaluate_ncf(a):
    # a1 - 1/(a2 - 1/(...))
    x = Fraction(a[-1])
    for v in reversed(a[:-1]):
        x = v - 1 / x
    return x


@given(lens_params)
def test_continued_fraction_evaluates_back(pq):
    p, q = pq
    a = negative_continued_fraction(p, q)
    assert all(v >= 2 for v in a)
    assert evaluate_ncf(a) == Fraction(p, q)
    L = lens_chain_link_matrix(p, q)
    assert L.is_symmetric() and L.determinant() == p


def test_first_homology_examples():
    assert first_homology(LensSpace(2, 1)) == (FiniteAbelianGroup([2]), 0)
    assert first_homology(ConnectedSum([LensSpace(2, 1), LensSpace(2, 1)]))[0].factors == (2, 2)
    # exponent-sum cokernel of the Q8 presentation
    assert first_homology(SpaceForm("Q8"))[0] == abelianization(fundamental_group(SpaceForm("Q8")))[0]
    assert first_homology(SpaceForm("Q8"))[0].factors == (2, 2)
    assert first_homology(Surgery(IntMatrix.from_rows([[0, 0], [0, 3]]))) == (FiniteAbelianGroup([3]), 1)


def test_linking_form_examples():
    lf = linking_form(LensSpace(2, 1))
    assert lf.group.factors == (2,) and lf.gram[0][0] == QmodZ(1, 2)
    lf = linking_form(LensSpace(4, 1))
    assert lf.group.factors == (4,) and lf.gram[0][0] == QmodZ(3, 4)
    lf = linking_form(SpaceForm("Q8"))
    assert lf.group.factors == (2, 2)
    assert all(lf.value(x, x).is_zero() for x in lf.group.elements())
    with pytest.raises(PositiveBettiNumber):
        linking_form(Surgery(IntMatrix.from_rows([[0]])))


def test_q16_has_nonzero_self_linking():
    lf = linking_form(SpaceForm("Q16"))
    assert lf.group.factors == (2, 2)
    assert lf.self_pairings() == Counter({QmodZ(0): 2, QmodZ(1, 2): 2})


@pytest.mark.parametrize("order", [8, 12, 16, 20, 24])
def test_plumbing_matches_group_abelianization(order):
    # the D-type plumbing boundary has H_1 equal to the quaternion group's abelianization
    L = plumbing_matrix(order)
    H1, _ = abelianization_group(group_from_tag(f"Q{order}"))
    lf = linking_form(Surgery(L))
    assert lf.group == H1 and is_nondegenerate(lf)


@given(lens_params)
def test_lens_routes_agree(pq):
    assert are_isomorphic(linking_form(LensSpace(*pq)), lens_linking_closed_form(*pq)).isomorphic


@given(lens_params)
def test_orientation_negates(pq):
    M = LensSpace(*pq)
    assert linking_form(M.reversed()) == linking_form(M).negate()


@given(lens_params, lens_params)
def test_sum_is_orthogonal_sum(a, b):
    M = ConnectedSum([LensSpace(*a), LensSpace(*b)])
    lf = linking_form(M)
    ref = orthogonal_sum(linking_form(LensSpace(*a)), linking_form(LensSpace(*b)))
    if lf.group.order <= 256:
        assert are_isomorphic(lf, ref).isomorphic
    assert lf.group == first_homology(M)[0]
    assert is_nondegenerate(lf)


@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3), st.integers(-4, 4))
def test_surgery_linking_nondegenerate(entries, c):
    a, b, d = entries
    L = IntMatrix.from_rows([[a, b], [b, d + c]])
    if L.determinant() == 0:
        with pytest.raises(PositiveBettiNumber):
            linking_form(Surgery(L))
        return
    lf = linking_form(Surgery(L))
    assert is_nondegenerate(lf)
    assert lf.group == first_homology(Surgery(L))[0]


def test_fundamental_group_examples():
    assert str(fundamental_group(LensSpace(2, 1))) == "<x | x^2>"
    P = fundamental_group(ConnectedSum([LensSpace(2, 1), LensSpace(2, 1)]))
    assert len(P.generators) == 2 and abelianization(P) == (FiniteAbelianGroup([2, 2]), 0)
    Q16 = fundamental_group(SpaceForm("Q16"))
    assert abelianization(Q16)[0].factors == (2, 2)
    with pytest.raises(UnsupportedVariant):
        fundamental_group(Surgery(IntMatrix.from_rows([[2]])))


def test_abelianization_examples():
    assert abelianization(FpGroup(["x"], ["x^2"])) == (FiniteAbelianGroup([2]), 0)
    assert abelianization(FpGroup(["x", "y"], ["x^2", "y^2"]))[0].factors == (2, 2)
    assert abelianization(FpGroup(["x", "y"], ["x^2"])) == (FiniteAbelianGroup([2]), 1)


def test_quaternion_presentation_defines_the_group():
    # relators hold in the table group under x -> a, y -> b, and the two elements generate it
    G = group_from_tag("Q16")
    P = fundamental_group(SpaceForm("Q16"))
    for a in range(G.order):
        for b in range(G.order):
            if len(G.closure([a, b])) != G.order:
                continue
            imgs = [a, b]
            ok = True
            for rel in P.relators:
                acc = 0
                for idx, e in rel:
                    g = imgs[idx] if e > 0 else G.inverse[imgs[idx]]
                    for _ in range(abs(e)):
                        acc = G.mul(acc, g)
                ok = ok and acc == 0
            if ok:
                return
    pytest.fail("no generating pair satisfies the presentation")


def test_manifest_json():
    M = ManifoldDescription.from_json('{"variant":"lens","p":4,"q":1,"orientation":1}')
    assert M == LensSpace(4, 1)
    S = ConnectedSum([LensSpace(2, 1), SpaceForm("Q16")], orientation=-1)
    assert ManifoldDescription.from_json_obj(S.to_json_obj()) == S
    with pytest.raises(ValueError):
        LensSpace(4, 2)
    with pytest.raises(UnsupportedVariant):
        SpaceForm("D8")


def test_catalog_invariants():
    cat = load_catalog()
    ids = [e.id for e in cat]
    assert len(ids) == len(set(ids)) and ids == sorted(ids)
    for e in cat:
        if e.pi1_finite_order is not None:
            assert group_from_tag(e.known_group_tag).order == e.pi1_finite_order
        assert abelianization(e.pi1)[0] == first_homology(e.manifold)[0]
    fams = Counter(e.family for e in cat)
    assert fams["lens"] == sum(1 for p in range(2, 13) for q in range(1, p) if gcd(p, q) == 1)
    assert fams["spaceform"] == 2
    assert all(first_homology(e.manifold)[0].order <= 36 for e in cat if e.family == "sum")


def test_derived_quotient_catalog_examples():
    Q = derived_quotient_catalog(catalog_entry("spaceform-q8"), 2)
    assert isinstance(Q, FiniteGroup) and Q.order == 8
    assert derived_quotient_catalog(catalog_entry("lens-5-1"), 2).order == 5
    h = derived_quotient_catalog(catalog_entry("RP3#RP3"), 2)
    assert isinstance(h, FreeProductHandle) and h.infinite and h.factors == (2, 2)
    assert derived_quotient_catalog(catalog_entry("sum-2-1-3-1"), 1).order == 6
    # Q16'' is trivial, so depth 2 returns the whole group
    assert derived_quotient_catalog(catalog_entry("spaceform-q16"), 2).order == 16
    assert derived_quotient(group_from_tag("Q16"), 1)[0].order == 4


@pytest.mark.parametrize("script", ["build_catalog.py", "derive_plumbing.py"])
def test_shipped_data_is_reproducible(script):
    out = subprocess.run([sys.executable, str(ROOT / "scripts" / script), "--check"],
                         capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
