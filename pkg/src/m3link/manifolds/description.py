"""Symbolic descriptions of closed oriented 3-manifolds."""

import json
import re
from dataclasses import dataclass, field, replace
from math import gcd

from ..errors import UnsupportedVariant
from ..exactlin import IntMatrix

VARIANTS = ("lens", "surgery", "sum", "spaceform")


@dataclass(frozen=True)
class ManifoldDescription:
    """One of four variants, with an orientation sign.

    ``params`` holds ``(p, q)`` for lens spaces, an :class:`IntMatrix` for
    surgery, a tuple of parts for sums, and the tag string for space forms.
    """

    variant: str
    params: object
    orientation: int = 1
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise UnsupportedVariant(f"unknown variant {self.variant!r}")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        if self.variant == "lens":
            p, q = self.params
            if p < 2 or gcd(p, q) != 1:
                raise ValueError(f"lens space needs p >= 2 and gcd(p, q) = 1, got ({p}, {q})")
        elif self.variant == "surgery":
            if not self.params.is_symmetric():
                raise ValueError("surgery linking matrix must be symmetric")
        elif self.variant == "spaceform":
            parse_spaceform_tag(self.params)

    def reversed(self):
        return replace(self, orientation=-self.orientation)

    def label(self):
        if self.name:
            return self.name
        s = "-" if self.orientation < 0 else ""
        if self.variant == "lens":
            return f"{s}L({self.params[0]},{self.params[1]})"
        if self.variant == "surgery":
            return f"{s}Surgery({self.params.to_rows()})"
        if self.variant == "sum":
            body = " # ".join(part.label() for part in self.params)
            return f"{s}({body})" if s else body
        return f"{s}S3/{self.params}"

    def to_json_obj(self):
        out = {"variant": self.variant}
        if self.variant == "lens":
            out["p"], out["q"] = self.params
        elif self.variant == "surgery":
            out["matrix"] = self.params.to_rows()
        elif self.variant == "sum":
            out["parts"] = [part.to_json_obj() for part in self.params]
        else:
            out["tag"] = self.params
        out["orientation"] = self.orientation
        return out

    @classmethod
    def from_json_obj(cls, obj):
        try:
            return cls._from_json_obj(obj)
        except KeyError as exc:
            raise ValueError(f"manifest is missing field {exc.args[0]!r}") from None

    @classmethod
    def _from_json_obj(cls, obj):
        v = obj.get("variant")
        o = int(obj.get("orientation", 1))
        if v == "lens":
            return LensSpace(int(obj["p"]), int(obj["q"]), o)
        if v == "surgery":
            m = obj["matrix"]
            if isinstance(m, dict):
                M = IntMatrix.from_json_obj(m)
            else:
                M = IntMatrix.from_rows(m, cols=len(m[0]) if m else 0)
            return Surgery(M, o)
        if v == "sum":
            return ConnectedSum([cls.from_json_obj(p) for p in obj["parts"]], o)
        if v == "spaceform":
            return SpaceForm(obj["tag"], o)
        raise UnsupportedVariant(f"unknown manifest variant {v!r}")

    @classmethod
    def from_json(cls, text):
        return cls.from_json_obj(json.loads(text))


def LensSpace(p, q, orientation=1):
    return ManifoldDescription("lens", (int(p), int(q) % int(p)), orientation)


def Surgery(matrix, orientation=1):
    if not isinstance(matrix, IntMatrix):
        matrix = IntMatrix.from_rows([list(r) for r in matrix], cols=len(matrix))
    return ManifoldDescription("surgery", matrix, orientation)


def ConnectedSum(parts, orientation=1):
    return ManifoldDescription("sum", tuple(parts), orientation)


def SpaceForm(tag, orientation=1):
    return ManifoldDescription("spaceform", str(tag), orientation)


def parse_spaceform_tag(tag):
    """``Q8``, ``Q16``, ``Q4n(n)`` or ``Lens(p,q)`` to ``("quaternion", 4n)`` / ``("lens", (p, q))``."""
    t = str(tag).replace(" ", "")
    if t == "Q8":
        return ("quaternion", 8)
    if t == "Q16":
        return ("quaternion", 16)
    m = re.fullmatch(r"Q4n\((\d+)\)", t)
    if m and int(m.group(1)) >= 2:
        return ("quaternion", 4 * int(m.group(1)))
    m = re.fullmatch(r"Lens\((\d+),(-?\d+)\)", t)
    if m:
        p, q = int(m.group(1)), int(m.group(2))
        if p >= 2 and gcd(p, q) == 1:
            return ("lens", (p, q % p))
    raise UnsupportedVariant(f"unsupported space-form tag {tag!r}")
