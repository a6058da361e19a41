"""The shipped manifold catalog and derived-quotient handles.

Schema of ``data/catalog.json`` (one object per entry, sorted by ``id``)::

    id                 unique string; CLI refers to entries as catalog:<id>
    name               human label, e.g. "RP3#RP3"
    family             "lens" | "sum" | "spaceform"
    manifold           manifest object (see ManifoldDescription.from_json_obj)
    pi1                {"generators": [...], "relators": ["x^2", ...]}
    pi1_finite_order   integer or null (infinite fundamental group)
    known_group_tag    group tag of pi1 when finite, else null
    derived_stable     whether the derived series of pi1 stabilizes
    theorem_depth      derived depth n used by the theorem harness (1 or 2)
    expected           {"theorem1": verdict, "features": verdict,
                        "reznikov": verdict or null}
    notes              free text
"""

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from ..errors import UnsupportedVariant
from .description import ManifoldDescription
from .fpgroup import FpGroup
from .invariants import first_homology


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    name: str
    family: str
    manifold: ManifoldDescription
    pi1: FpGroup = field(compare=False)
    pi1_finite_order: int = None
    known_group_tag: str = None
    derived_stable: bool = True
    theorem_depth: int = 2
    expected: dict = field(default_factory=dict, compare=False, hash=False)
    notes: str = ""

    def to_json_obj(self):
        return {
            "id": self.id, "name": self.name, "family": self.family,
            "manifold": self.manifold.to_json_obj(), "pi1": self.pi1.to_json_obj(),
            "pi1_finite_order": self.pi1_finite_order,
            "known_group_tag": self.known_group_tag,
            "derived_stable": self.derived_stable, "theorem_depth": self.theorem_depth,
            "expected": self.expected, "notes": self.notes,
        }

    @classmethod
    def from_json_obj(cls, obj):
        return cls(
            id=obj["id"], name=obj["name"], family=obj["family"],
            manifold=ManifoldDescription.from_json_obj(obj["manifold"]),
            pi1=FpGroup.from_json_obj(obj["pi1"]),
            pi1_finite_order=obj.get("pi1_finite_order"),
            known_group_tag=obj.get("known_group_tag"),
            derived_stable=obj.get("derived_stable", True),
            theorem_depth=obj.get("theorem_depth", 2),
            expected=obj.get("expected", {}), notes=obj.get("notes", ""),
        )


@lru_cache(maxsize=None)
def load_catalog():
    text = resources.files("m3link.data").joinpath("catalog.json").read_text()
    return tuple(CatalogEntry.from_json_obj(o) for o in json.loads(text))


def catalog_entry(entry_id):
    for e in load_catalog():
        if e.id == entry_id or e.name == entry_id:
            return e
    raise KeyError(f"no catalog entry {entry_id!r}")


def filter_catalog(substring=None):
    return [e for e in load_catalog() if not substring or substring in e.id]


@dataclass(frozen=True)
class FreeProductHandle:
    """Symbolic ``Z/a * Z/b * ...``; infinite, usable only by the free-product rule."""

    factors: tuple
    infinite: bool = True

    @property
    def tags(self):
        return [f"Z/{n}" for n in self.factors]

    def __str__(self):
        return " * ".join(self.tags)


def derived_quotient_catalog(entry, n):
    """``pi1 / pi1^(n)`` for a catalog entry: a finite group or a free-product handle."""
    from ..groupcoh.groups import derived_quotient, group_from_tag

    if n not in (1, 2):
        raise ValueError("derived depth must be 1 or 2")
    if entry.known_group_tag:
        G = group_from_tag(entry.known_group_tag)
        Q, _ = derived_quotient(G, n)
        if Q.order == G.order:
            return G
        return Q
    M = entry.manifold
    if M.variant == "sum" and all(p.variant == "lens" for p in M.params):
        orders = [p.params[0] for p in M.params]
        if n == 1:
            H1, _ = first_homology(M)
            tags = [f"Z/{o}" for o in orders]
            tag = tags[0] if len(tags) == 1 else "product(" + ",".join(tags) + ")"
            G = group_from_tag(tag)
            if G.order != H1.order:
                raise UnsupportedVariant("abelian quotient mismatch")
            return G
        return FreeProductHandle(tuple(orders))
    raise UnsupportedVariant(f"derived quotients of {entry.id} are not supported")
