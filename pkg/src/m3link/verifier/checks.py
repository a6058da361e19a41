"""Checks tying manifold linking forms to cup pairings of derived quotients."""

import time
from dataclasses import dataclass, field
from math import gcd

from ..abgrp import QmodZ
from ..errors import BoundExceeded, HypothesisViolation, UnsupportedVariant
from ..groupcoh.cup import cup_pairing_gram, free_product_cup_pairing
from ..groupcoh.groups import is_generalized_quaternion, sylow2
from ..groupcoh.resolution import special_resolution
from ..manifolds.catalog import CatalogEntry, FreeProductHandle, derived_quotient_catalog, load_catalog
from ..manifolds.description import ConnectedSum, LensSpace
from ..manifolds.invariants import first_homology, linking_form
from ..torsionpairing import are_isomorphic, orthogonal_sum, pairing_from_cup

PASS, FAIL, UNSUPPORTED = "PASS", "FAIL", "UNSUPPORTED"


@dataclass
class QuotientSpec:
    """A manifold with the quotient ``pi1 -> pi1 / pi1^(n)`` it is checked against.

    The map is the canonical derived-quotient projection, so its kernel is
    the n-th derived subgroup by construction.
    """

    entry_id: str
    manifold: object
    n: int
    group: object

    @classmethod
    def from_entry(cls, entry, n=None):
        n = entry.theorem_depth if n is None else n
        return cls(entry.id, entry.manifold, n, derived_quotient_catalog(entry, n))

    @property
    def group_id(self):
        return str(self.group) if isinstance(self.group, FreeProductHandle) else self.group.name


@dataclass
class TheoremReport:
    manifold_id: str
    group_id: str
    h2_pairing: dict
    linking: dict
    embedding_search: list = field(default_factory=list)
    verdict: str = UNSUPPORTED
    witness: dict = None
    reason: str = ""

    def to_json_obj(self):
        return {
            "check": "theorem1", "manifold": self.manifold_id, "group": self.group_id,
            "h2_pairing": self.h2_pairing, "linking": self.linking,
            "embedding_search": [{"k": k, "orientation": s, "isomorphic": ok}
                                 for k, s, ok in self.embedding_search],
            "verdict": self.verdict, "witness": self.witness, "reason": self.reason,
        }


def _pairing_summary(cup):
    return {"H2": str(cup.h2), "H4": str(cup.h4), "C": str(cup.image),
            "cyclic": cup.cyclic, "nondegenerate": cup.nondegenerate,
            "gram": [[list(x.coords) for x in row] for row in cup.gram]}


def _linking_summary(lf):
    return {"group": str(lf.group), "gram": [[str(v) for v in row] for row in lf.gram]}


def _resolve(spec):
    if isinstance(spec, CatalogEntry):
        return QuotientSpec.from_entry(spec)
    return spec


def _cup_for(spec):
    G = spec.group
    if isinstance(G, FreeProductHandle):
        return free_product_cup_pairing(G.tags)
    return cup_pairing_gram(special_resolution(G, 5))


def check_theorem1(spec):
    """Sweep embeddings ``1 -> k/m`` of a cyclic cup image and both orientations."""
    spec = _resolve(spec)
    lf = linking_form(spec.manifold)
    report = TheoremReport(spec.entry_id, spec.group_id, {}, _linking_summary(lf))
    try:
        cup = _cup_for(spec)
    except (UnsupportedVariant, BoundExceeded) as exc:
        report.reason = str(exc)
        return report
    report.h2_pairing = _pairing_summary(cup)
    if not cup.cyclic:
        report.verdict = FAIL
        report.reason = f"cup image {cup.image} is not cyclic"
        return report
    if not cup.nondegenerate:
        report.verdict = FAIL
        report.reason = "cup pairing into C is degenerate"
        return report
    m = cup.image.order
    found = None
    for k in range(1, m + 1):
        if gcd(k, m) != 1:
            continue
        for s in (1, -1):
            res = are_isomorphic(pairing_from_cup(cup, k % m, s), lf)
            report.embedding_search.append((k % m, s, res.isomorphic))
            if res.isomorphic and found is None:
                found = (k % m, s, res.witness)
    if found is None:
        report.verdict = FAIL
        report.reason = "no embedding and orientation matches the linking form"
        return report
    k, s, phi = found
    report.verdict = PASS
    report.witness = {"k": k, "m": m, "orientation": s,
                      "isomorphism": [list(x.coords) for x in phi.images]}
    return report


def _max_order(elems):
    return max((x.order() for x in elems), default=1)


def check_features(spec):
    """Non-degeneracy of the cup pairing and the exponent consequence."""
    spec = _resolve(spec)
    H1, b1 = first_homology(spec.manifold)
    out = {"check": "features", "manifold": spec.entry_id, "group": spec.group_id,
           "fundamental_class_order": UNSUPPORTED}
    try:
        cup = _cup_for(spec)
    except (UnsupportedVariant, BoundExceeded) as exc:
        out.update(verdict=UNSUPPORTED, reason=str(exc))
        return out
    elems = list(cup.h2.elements())
    if cup.cyclic and not cup.image.is_trivial():
        p = pairing_from_cup(cup, 1, 1)
        value_exp = max((p.value(u, v).order() for u in elems for v in elems), default=1)
    else:
        value_exp = _max_order(cup.pair(u, v) for u in elems for v in elems)
    exp_h2, exp_h1 = cup.h2.exponent(), H1.exponent()
    out.update(nondegenerate=cup.nondegenerate, value_exponent=value_exp,
               h2_exponent=exp_h2, h1_exponent=exp_h1, h1_free_rank=b1)
    ok = cup.nondegenerate and value_exp == exp_h2 == exp_h1 and b1 == 0
    out["verdict"] = PASS if ok else FAIL
    return out


def _entry_for(M):
    if isinstance(M, CatalogEntry):
        return M
    for e in load_catalog():
        if e.manifold == M:
            return e
    raise UnsupportedVariant("manifold is not in the catalog")


def check_reznikov(M):
    """Predict the Sylow-2 subgroup of ``pi1 / pi1''`` from self-linkings when ``H_1 = (Z/2)^2``."""
    entry = M if isinstance(M, CatalogEntry) else None
    manifold = entry.manifold if entry else M
    H1, b1 = first_homology(manifold)
    if b1 or list(H1.factors) != [2, 2]:
        raise HypothesisViolation(f"needs H_1 = Z/2+Z/2, got {H1} with free rank {b1}")
    lf = linking_form(manifold)
    self_links = sorted({str(lf.value(x, x)) for x in lf.group.elements() if not x.is_zero()})
    predict_q8 = self_links == ["0"]
    out = {"check": "reznikov", "manifold": entry.id if entry else manifold.label(),
           "self_linkings": self_links,
           "prediction": "Q8" if predict_q8 else "Q_{2^k}, k>3"}
    try:
        entry = entry or _entry_for(manifold)
        Q = derived_quotient_catalog(entry, 2)
    except UnsupportedVariant as exc:
        out.update(actual=None, verdict=UNSUPPORTED, reason=str(exc))
        return out
    if isinstance(Q, FreeProductHandle):
        out.update(actual=None, verdict=UNSUPPORTED,
                   reason=f"derived quotient {Q} is infinite")
        return out
    S, _ = sylow2(Q)
    quat = is_generalized_quaternion(S)
    out["actual"] = f"Q{S.order}" if quat else f"{S.name} (order {S.order})"
    if predict_q8:
        ok = quat and S.order == 8
    else:
        ok = quat and S.order >= 16
    out["verdict"] = PASS if ok else FAIL
    return out


@dataclass
class CounterexampleReport:
    linking: object
    cup: object
    image_rank: int
    cyclic: bool
    relations: dict
    conclusion_fails: bool

    def to_json_obj(self):
        return {"check": "counterexample", "manifold": "RP3#RP3",
                "linking": _linking_summary(self.linking),
                "h2_pairing": _pairing_summary(self.cup), "image_rank": self.image_rank,
                "cyclic": self.cyclic, "relations": self.relations,
                "conclusion_fails": self.conclusion_fails}


def counterexample_demo():
    """RP3#RP3: infinite ``pi1 / pi1''`` and a non-cyclic cup image."""
    M = ConnectedSum([LensSpace(2, 1), LensSpace(2, 1)])
    lf = linking_form(M)
    cup = free_product_cup_pairing(["Z/2", "Z/2"])
    x, y = cup.block_generators
    bp = cup.block_products
    # degree-2 relations: the cross product and the orders of the generators
    relations = {
        "xy": bp[0][1].is_zero() and bp[1][0].is_zero(),
        "2x": (2 * x).is_zero(),
        "2y": (2 * y).is_zero(),
        "x2,y2 independent": not bp[0][0].is_zero() and not bp[1][1].is_zero()
        and bp[0][0] != bp[1][1],
    }
    return CounterexampleReport(lf, cup, cup.image.rank, cup.cyclic, relations,
                                not cup.cyclic)


def _expected_reference_linking(entry):
    # connected sums: the sum's linking form against the orthogonal sum of its pieces
    M = entry.manifold
    if M.variant != "sum":
        return None
    forms = [linking_form(p) for p in M.params]
    acc = forms[0]
    for f in forms[1:]:
        acc = orthogonal_sum(acc, f)
    return acc


def run_entry(entry):
    """All applicable checks for one catalog entry, with expectation bookkeeping."""
    if isinstance(entry, str):
        from ..manifolds.catalog import catalog_entry
        entry = catalog_entry(entry)
    t0 = time.perf_counter()
    checks = {}
    try:
        spec = QuotientSpec.from_entry(entry)
    except (UnsupportedVariant, BoundExceeded) as exc:
        checks["theorem1"] = {"verdict": UNSUPPORTED, "reason": str(exc)}
    else:
        checks["theorem1"] = check_theorem1(spec).to_json_obj()
        checks["features"] = check_features(spec)
    H1, b1 = first_homology(entry.manifold)
    if not b1 and list(H1.factors) == [2, 2]:
        checks["reznikov"] = check_reznikov(entry)
    unexpected = []
    for name, rep in checks.items():
        want = entry.expected.get(name)
        if want is not None and rep["verdict"] != want:
            unexpected.append(name)
    return {"id": entry.id, "name": entry.name, "family": entry.family,
            "checks": {k: v["verdict"] for k, v in checks.items()},
            "expected": {k: entry.expected.get(k) for k in checks},
            "unexpected": unexpected, "reports": checks,
            "seconds": round(time.perf_counter() - t0, 3)}


@dataclass
class CatalogRun:
    entries: list

    @property
    def failures(self):
        """Entries where a check that was expected to pass did not."""
        return [e for e in self.entries
                if any(e["expected"].get(c) == PASS and e["checks"][c] != PASS
                       for c in e["checks"])]

    @property
    def unexpected(self):
        return [e for e in self.entries if e["unexpected"]]

    def counts(self):
        out = {}
        for e in self.entries:
            for c, v in e["checks"].items():
                out.setdefault(c, {}).setdefault(v, 0)
                out[c][v] += 1
        return out

    @property
    def exit_status(self):
        return 1 if self.failures or self.unexpected else 0

    def to_json_obj(self, full=False):
        ents = self.entries if full else [{k: v for k, v in e.items() if k != "reports"}
                                          for e in self.entries]
        return {"entries": ents, "counts": self.counts(),
                "failures": [e["id"] for e in self.failures],
                "unexpected": [e["id"] for e in self.unexpected],
                "exit_status": self.exit_status}


def run_catalog(filter=None, workers=1):
    """Run every applicable check on catalog entries whose id contains ``filter``.

    With ``workers > 1`` entries run in a process pool; the report is sorted
    by entry id either way.
    """
    entries = [e for e in load_catalog() if not filter or filter in e.id]
    if workers > 1 and len(entries) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_entry, [e.id for e in entries]))
    else:
        results = [run_entry(e) for e in entries]
    results.sort(key=lambda r: r["id"])
    return CatalogRun(results)
