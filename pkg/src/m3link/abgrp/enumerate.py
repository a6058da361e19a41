"""Brute-force enumeration: automorphisms and characters of small groups."""

from itertools import product

from ..errors import BoundExceeded
from .core import AbElement, AbHom
from .qmodz import QmodZ

AUT_BOUND = 256


class Character:
    """A homomorphism ``G -> Q/Z``: generator ``i`` goes to ``coeffs[i] / d_i``."""

    def __init__(self, group, coeffs):
        self.group = group
        self.coeffs = tuple(int(c) % d for c, d in zip(coeffs, group.factors))

    def __call__(self, x):
        total = QmodZ(0)
        for c, a, d in zip(self.coeffs, x.coords, self.group.factors):
            total = total + QmodZ(c * a, d)
        return total

    def is_zero(self):
        return not any(self.coeffs)

    def __add__(self, other):
        return Character(self.group, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __eq__(self, other):
        return isinstance(other, Character) and (self.group, self.coeffs) == (other.group, other.coeffs)

    def __hash__(self):
        return hash((self.group, self.coeffs))

    def __repr__(self):
        vals = ", ".join(str(QmodZ(c, d)) for c, d in zip(self.coeffs, self.group.factors))
        return f"Character({vals})"


def _check_bound(G, bound):
    if G.order > bound:
        raise BoundExceeded(f"group order {G.order} exceeds bound {bound}")


def dual_characters(G, bound=AUT_BOUND):
    """All ``|G|`` characters of ``G``."""
    _check_bound(G, bound)
    return [Character(G, c) for c in product(*[range(d) for d in G.factors])]


def automorphisms(G, bound=AUT_BOUND):
    """Yield every automorphism of ``G`` exactly once.

    Generator ``i`` must go to an element of order exactly ``d_i`` whose
    cyclic span meets the span of earlier images trivially; these two
    conditions together force bijectivity.
    """
    _check_bound(G, bound)
    by_order = {}
    for x in G.elements():
        by_order.setdefault(x.order(), []).append(x)
    candidates = [by_order.get(d, []) for d in G.factors]
    k = G.rank

    def extend(i, chosen, span):
        if i == k:
            yield AbHom(G, G, list(chosen))
            return
        d = G.factors[i]
        for x in candidates[i]:
            multiples = [m * x for m in range(1, d)]
            if any(m in span for m in multiples):
                continue
            new_span = {s + m * x for s in span for m in range(d)}
            chosen.append(x)
            yield from extend(i + 1, chosen, new_span)
            chosen.pop()

    yield from extend(0, [], {G.zero()})


def count_invertible_endomorphisms(G):
    """Independent count: all endomorphism matrices, tested for bijectivity."""
    choices = []
    for d in G.factors:
        choices.append([x for x in G.elements() if (d * x).is_zero()])
    n = 0
    for imgs in product(*choices):
        if AbHom(G, G, list(imgs)).image_size() == G.order:
            n += 1
    return n
