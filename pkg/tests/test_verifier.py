import json
from math import gcd

import pytest

from m3link.errors import HypothesisViolation
from m3link.groupcoh import group_from_tag
from m3link.manifolds import ConnectedSum, LensSpace, SpaceForm, Surgery, catalog_entry, load_catalog
from m3link.torsionpairing import from_gram, orthogonal_sum
from m3link.abgrp import FiniteAbelianGroup
from m3link.manifolds import linking_form
from m3link.verifier import (
    FAIL,
    PASS,
    UNSUPPORTED,
    QuotientSpec,
    check_features,
    check_reznikov,
    check_theorem1,
    counterexample_demo,
    run_catalog,
    run_entry,
)


def phi(m):
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def test_theorem1_l21():
    r = check_theorem1(QuotientSpec.from_entry(catalog_entry("lens-2-1"), 2))
    assert r.verdict == PASS and r.group_id == "Z/2"
    assert r.h2_pairing["C"] == "Z/2" and r.h2_pairing["gram"] == [[[1]]]
    assert r.linking["gram"] == [["1/2"]]


def test_theorem1_q8_zero_diagonal():
    r = check_theorem1(catalog_entry("spaceform-q8"))
    assert r.verdict == PASS
    g = r.h2_pairing["gram"]
    assert r.h2_pairing["H2"] == "Z/2+Z/2"
    assert g[0][0] == [0] and g[1][1] == [0] and g[0][1] != [0]


def test_theorem1_l51_sweep():
    r = check_theorem1(catalog_entry("lens-5-1"))
    assert r.verdict == PASS
    assert len(r.embedding_search) == phi(5) * 2
    assert {(k, s) for k, s, _ in r.embedding_search} == {(k, s) for k in range(1, 5) for s in (1, -1)}
    assert any(ok for *_, ok in r.embedding_search)
    out = r.to_json_obj()
    json.dumps(out)
    assert out["witness"]["m"] == 5


@pytest.mark.parametrize("eid", ["lens-7-2", "lens-12-5", "spaceform-q16"])
def test_sweep_is_exhaustive(eid):
    r = check_theorem1(catalog_entry(eid))
    m = int(r.h2_pairing["C"].split("/")[1])
    assert len(r.embedding_search) == phi(m) * 2
    assert r.verdict == PASS


def test_theorem1_non_cyclic_sum_fails():
    # Z/2 (+) Z/2 has a non-cyclic cup image
    r = check_theorem1(catalog_entry("sum-2-1-2-1"))
    assert r.verdict == FAIL and "not cyclic" in r.reason
    assert r.embedding_search == []


def test_depth_two_sum_uses_free_product():
    r = check_theorem1(QuotientSpec.from_entry(catalog_entry("sum-2-1-3-1"), 2))
    assert r.group_id == "Z/2 * Z/3"
    assert r.verdict == PASS


def test_features_examples():
    f = check_features(catalog_entry("lens-4-1"))
    assert f["nondegenerate"] and f["value_exponent"] == f["h2_exponent"] == f["h1_exponent"] == 4
    assert f["verdict"] == PASS and f["fundamental_class_order"] == UNSUPPORTED
    f = check_features(catalog_entry("lens-2-1"))
    assert f["value_exponent"] == f["h2_exponent"] == 2 and f["verdict"] == PASS


def test_features_trivial_h1_vacuous():
    spec = QuotientSpec("surgery-identity", Surgery([[1]]), 1, group_from_tag("cyclic(1)"))
    f = check_features(spec)
    assert f["verdict"] == PASS and f["h1_exponent"] == 1


def test_reznikov_examples():
    q8 = check_reznikov(catalog_entry("spaceform-q8"))
    assert q8["self_linkings"] == ["0"] and q8["prediction"] == "Q8"
    assert q8["actual"] == "Q8" and q8["verdict"] == PASS
    q16 = check_reznikov(SpaceForm("Q16"))
    assert "1/2" in q16["self_linkings"] and q16["prediction"] == "Q_{2^k}, k>3"
    assert q16["actual"] == "Q16" and q16["verdict"] == PASS
    with pytest.raises(HypothesisViolation):
        check_reznikov(LensSpace(4, 1))


def test_reznikov_infinite_quotient_is_unsupported():
    r = check_reznikov(catalog_entry("sum-2-1-2-1"))
    assert r["verdict"] == UNSUPPORTED and "infinite" in r["reason"]


def test_counterexample_demo():
    rep = counterexample_demo()
    assert rep.image_rank == 2 and not rep.cyclic and rep.conclusion_fails
    assert all(rep.relations.values())
    G = FiniteAbelianGroup([2, 2])
    assert rep.linking == from_gram(G, [["1/2", 0], [0, "1/2"]])
    l21 = linking_form(LensSpace(2, 1))
    assert rep.linking == orthogonal_sum(l21, l21)
    json.dumps(rep.to_json_obj())


def test_run_entry_bookkeeping():
    r = run_entry("spaceform-q16")
    assert r["checks"] == {"theorem1": PASS, "features": PASS, "reznikov": PASS}
    assert r["unexpected"] == []


def test_run_catalog_filter_lens():
    run = run_catalog("lens-1")
    ids = [e["id"] for e in run.entries]
    assert ids and all(i.startswith("lens-1") for i in ids) and ids == sorted(ids)
    assert run.exit_status == 0
    assert set(run.counts()["theorem1"]) == {PASS}


def test_run_catalog_empty_match():
    run = run_catalog("no-such-entry")
    assert run.entries == [] and run.exit_status == 0
    assert run.to_json_obj() == {"entries": [], "counts": {}, "failures": [],
                                 "unexpected": [], "exit_status": 0}


def test_run_catalog_parallel_matches_serial():
    a = run_catalog("lens-1", workers=1).to_json_obj()
    b = run_catalog("lens-1", workers=2).to_json_obj()
    strip = lambda o: [(e["id"], e["checks"]) for e in o["entries"]]
    assert strip(a) == strip(b)


def test_lens_catalog_theorem1_passes_at_depth_one():
    # abelian specs: G = H_1(M) for every lens space
    for e in load_catalog():
        if e.family == "lens":
            assert check_theorem1(QuotientSpec.from_entry(e, 1)).verdict == PASS, e.id


def test_theorem1_verdict_tracks_cyclic_h1():
    # lens spaces and space forms pass; a sum passes exactly when H_1 is cyclic
    from m3link.manifolds import first_homology

    for e in load_catalog():
        r = check_theorem1(e)
        H1, _ = first_homology(e.manifold)
        if e.family != "sum" or H1.is_cyclic():
            assert r.verdict == PASS, e.id
        else:
            assert r.verdict == FAIL and "not cyclic" in r.reason, e.id
            assert e.expected["theorem1"] == FAIL
