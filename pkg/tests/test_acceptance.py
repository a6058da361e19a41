"""Acceptance criteria, one test each.

Every test records a ``criterion N: PASS|FAIL ...`` line in ``RESULTS``;
conftest prints them at the end of the session.  Run directly with
``python3 tests/test_acceptance.py`` for the same report.
"""

import random
import sys
import time
from contextlib import contextmanager
from functools import lru_cache

import pytest

from m3link.abgrp import FiniteAbelianGroup
from m3link.groupcoh import (
    bar_resolution,
    bockstein,
    bockstein_inverse,
    cohomology,
    cup_pairing_gram,
    cup_pairings_isomorphic,
    cup_product,
    group_from_tag,
    lift_chain_map,
    periodic_resolution_quaternion,
    special_resolution,
)
from m3link.manifolds import (
    LensSpace,
    SpaceForm,
    catalog_entry,
    lens_linking_closed_form,
    lens_linking_form,
    linking_form,
    load_catalog,
)
from m3link.manifolds.catalog import FreeProductHandle
from m3link.torsionpairing import are_isomorphic, order_realization_witness, orthogonal_sum, random_nondegenerate
from m3link.verifier import PASS, QuotientSpec, check_reznikov, check_theorem1, counterexample_demo

RESULTS = {}


@contextmanager
def criterion(n, title, limit=None):
    t0 = time.perf_counter()
    try:
        yield
        dt = time.perf_counter() - t0
        if limit is not None:
            assert dt < limit, f"took {dt:.1f}s, limit {limit}s"
    except BaseException as exc:
        dt = time.perf_counter() - t0
        first = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        RESULTS[n] = f"criterion {n}: FAIL  {title} ({dt:.2f}s) -- {first}"
        raise
    RESULTS[n] = f"criterion {n}: PASS  {title} ({dt:.2f}s)"


@lru_cache(maxsize=None)
def catalog_groups():
    """Distinct finite quotient groups the catalog checks run against."""
    seen = {}
    for e in load_catalog():
        G = QuotientSpec.from_entry(e).group
        if not isinstance(G, FreeProductHandle):
            seen.setdefault(G.name, G)
    return list(seen.values())


def abelian_groups_up_to(n):
    out = []

    def grow(factors, prod):
        if factors:
            out.append(list(factors))
        last = factors[-1] if factors else 1
        d = last if factors else 2
        while prod * d <= n:
            if d % last == 0:
                grow(factors + [d], prod * d)
            d += 1

    grow([], 1)
    return out


def test_criterion_1_q8_squares_vanish():
    with criterion(1, "alpha^2 = 0 for all alpha in H^2(Q8), periodic and bar", limit=60):
        Q8 = group_from_tag("Q8")
        for R in (periodic_resolution_quaternion(8, 5, G=Q8), bar_resolution(Q8, 5)):
            H2 = cohomology(R, 2)
            assert H2.group == FiniteAbelianGroup([2, 2])
            for a in H2.elements():
                assert cup_product(a, a).is_zero(), f"{R.name}: {a} squares to nonzero"


def test_criterion_2_q16_nontrivial_square():
    with criterion(2, "some alpha in H^2(Q16) has alpha^2 != 0", limit=120):
        R = periodic_resolution_quaternion(16, 5, G=group_from_tag("Q16"))
        squares = [cup_product(a, a) for a in cohomology(R, 2).elements()]
        assert any(not s.is_zero() for s in squares)


def test_criterion_3_full_catalog():
    with criterion(3, "cyclic cup image matches the linking form on every catalog entry", limit=600):
        catalog = load_catalog()
        assert len(catalog) == 120
        failed = []
        for e in catalog:
            r = check_theorem1(e)
            if r.verdict != PASS:
                failed.append((e.id, r.verdict, r.reason))
        assert not failed, (f"{len(failed)} of {len(catalog)} entries not PASS, e.g. "
                            + "; ".join(f"{i} {v}: {why}" for i, v, why in failed[:3]))


def test_criterion_4_counterexample():
    with criterion(4, "RP3#RP3 cup image rank 2 and relations xy, 2x, 2y", limit=1):
        rep = counterexample_demo()
        assert rep.image_rank == 2 and not rep.cyclic
        for rel in ("xy", "2x", "2y", "x2,y2 independent"):
            assert rep.relations[rel], rel


def test_criterion_5_reznikov():
    with criterion(5, "Q8 and Q16 Sylow-2 predictions confirmed", limit=120):
        q8 = check_reznikov(SpaceForm("Q8"))
        assert q8["self_linkings"] == ["0"] and q8["prediction"] == "Q8" and q8["actual"] == "Q8"
        q16 = check_reznikov(SpaceForm("Q16"))
        assert q16["prediction"] == "Q_{2^k}, k>3" and q16["actual"] == "Q16"
        assert q8["verdict"] == q16["verdict"] == PASS


def test_criterion_6_order_realization():
    with criterion(6, "witness realizes ord(a) on 200 random pairings, |G| <= 32", limit=120):
        groups = abelian_groups_up_to(32)
        failures = []
        for seed in range(200):
            G = FiniteAbelianGroup(random.Random(seed).choice(groups))
            p = random_nondegenerate(G, seed)
            for a in G.elements():
                if a.is_zero():
                    continue
                b = order_realization_witness(p, a)
                if p.value(a, b).order() != a.order():
                    failures.append((seed, G, a))
        assert not failures, f"{len(failures)} failures, first {failures[0]}"


def test_criterion_7_bar_vs_special():
    with criterion(7, "bar and special cup pairings isomorphic", limit=300):
        for tag in ("Z/2", "Z/3", "Z/4", "product(Z/2,Z/2)", "Q8"):
            G = group_from_tag(tag)
            a = cup_pairing_gram(bar_resolution(G, 5))
            b = cup_pairing_gram(special_resolution(G, 5))
            assert cup_pairings_isomorphic(a, b) is not None, tag


def test_criterion_8_structural_invariants():
    with criterion(8, "resolutions exact, chain maps commute, Bockstein identities"):
        rng = random.Random(8)
        violations = []
        resolutions = [special_resolution(G, 5) for G in catalog_groups()]
        resolutions += [bar_resolution(group_from_tag(t), 4)
                        for t in ("Z/2", "Z/3", "Z/4", "product(Z/2,Z/2)", "Q8")]
        for R in resolutions:
            violations += [(R.name, v) for v in R.verify()]
        for R in resolutions[:len(catalog_groups())]:
            f = lift_chain_map(R, R, 4)
            violations += [(R.name, "self-map", v) for v in f.verify()]
            if R.group.order <= 16:
                B = bar_resolution(R.group, 3, bound=1 << 16)
                violations += [(R.name, "to-bar", v) for v in lift_chain_map(R, B, 3).verify()]
            H2, H4 = cohomology(R, 2), cohomology(R, 4)
            for _ in range(6):
                a = H2.from_class(H2.group.random_element(rng))
                b = H2.from_class(H2.group.random_element(rng))
                if bockstein_inverse(cup_product(a, b)) != cup_product(bockstein_inverse(a), b):
                    violations.append((R.name, "bockstein-linearity", a.cls, b.cls))
            for y in H4.generators():
                if bockstein(bockstein_inverse(y)) != y:
                    violations.append((R.name, "beta-inverse", y.cls))
        assert not violations, f"{len(violations)} violations, first {violations[0]}"


def test_criterion_9_linking_routes():
    with criterion(9, "lens routes agree; sum form is the orthogonal sum"):
        catalog = load_catalog()
        for e in catalog:
            M = e.manifold
            if M.variant == "lens":
                p, q = M.params
                chain, closed = lens_linking_form(p, q), lens_linking_closed_form(p, q)
                assert (are_isomorphic(chain, closed).isomorphic
                        or are_isomorphic(chain.negate(), closed).isomorphic), e.id
            elif M.variant == "sum":
                parts = [linking_form(x) for x in M.params]
                acc = parts[0]
                for x in parts[1:]:
                    acc = orthogonal_sum(acc, x)
                assert linking_form(M) == acc, e.id


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
