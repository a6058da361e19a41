"""Finitely presented groups (presentations only; no coset enumeration)."""

import re

from ..abgrp import FiniteAbelianGroup
from ..exactlin import Cokernel, IntMatrix


def reduce_word(word):
    out = []
    for g, e in word:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return out


class FpGroup:
    """Generators by name; relators as reduced words of ``(index, ±1)`` letters."""

    def __init__(self, generators, relators):
        self.generators = list(generators)
        rels = []
        for r in relators:
            w = parse_word(r, self.generators) if isinstance(r, str) else list(r)
            for g, e in w:
                if not 0 <= g < len(self.generators) or e not in (1, -1):
                    raise ValueError(f"bad letter {(g, e)} in relator")
            rels.append(reduce_word(w))
        self.relators = rels

    def exponent_sum_matrix(self):
        """Rows are generators, columns relators."""
        cols = []
        for r in self.relators:
            v = [0] * len(self.generators)
            for g, e in r:
                v[g] += e
            cols.append(v)
        rows = [[c[i] for c in cols] for i in range(len(self.generators))]
        return IntMatrix.from_rows(rows, cols=len(cols)) if rows \
            else IntMatrix.zeros(0, len(cols))

    def free_product(self, other):
        n = len(self.generators)
        gens = self.generators + other.generators
        if len(set(gens)) != len(gens):
            gens = [f"{g}{i + 1}" for i, g in enumerate(gens)]
        rels = self.relators + [[(g + n, e) for g, e in r] for r in other.relators]
        return FpGroup(gens, rels)

    def word_str(self, w):
        parts = []
        i = 0
        while i < len(w):
            g, e = w[i]
            k = 1
            while i + k < len(w) and w[i + k] == (g, e):
                k += 1
            name = self.generators[g]
            exp = e * k
            parts.append(name if exp == 1 else f"{name}^{exp}")
            i += k
        return " ".join(parts) if parts else "1"

    def __str__(self):
        rels = ", ".join(self.word_str(r) for r in self.relators)
        return f"<{', '.join(self.generators)} | {rels}>"

    __repr__ = __str__

    def __eq__(self, other):
        return (isinstance(other, FpGroup) and self.generators == other.generators
                and self.relators == other.relators)

    def to_json_obj(self):
        return {"generators": self.generators,
                "relators": [self.word_str(r) for r in self.relators]}

    @classmethod
    def from_json_obj(cls, obj):
        return cls(obj["generators"], obj["relators"])


def parse_word(text, generators):
    """Parse ``"x^2 y^-1 x"`` into letters."""
    idx = {g: i for i, g in enumerate(generators)}
    out = []
    for name, exp in re.findall(r"([A-Za-z_]\w*)(?:\^(-?\d+))?", text):
        if name not in idx:
            raise ValueError(f"unknown generator {name!r}")
        k = int(exp) if exp else 1
        out.extend([(idx[name], 1 if k > 0 else -1)] * abs(k))
    return out


def abelianization(P):
    """``(torsion of P^ab, free rank)`` from the exponent-sum matrix."""
    coker = Cokernel(P.exponent_sum_matrix())
    return FiniteAbelianGroup(coker.invariant_factors, _checked=True), coker.free_rank


def cyclic_presentation(p, name="x"):
    return FpGroup([name], [[(0, 1)] * p])


def quaternion_presentation(order):
    """``<x, y | x^n y^-2, y^-1 x y x>`` for the quaternion group of order ``4n``."""
    n = order // 4
    return FpGroup(["x", "y"], [[(0, 1)] * n + [(1, -1), (1, -1)],
                                [(1, -1), (0, 1), (1, 1), (0, 1)]])
