"""Symmetric Q/Z-valued bilinear pairings on finite abelian groups."""

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from ..abgrp import AUT_BOUND, AbElement, AbHom, FiniteAbelianGroup, QmodZ, automorphisms, normal_form
from ..errors import BoundExceeded, DegeneratePairing, GenerationFailure, GroupMismatch, MalformedGram, NoSolution
from ..exactlin import Cokernel, IntMatrix, SingularMatrixError, lattice_kernel, rational_inverse, smith_normal_form


class TorsionPairing:
    """A symmetric bilinear form ``G x G -> Q/Z`` given on generators.

    Build instances with :func:`from_gram` (validating) or
    :func:`from_linking_matrix`.
    """

    def __init__(self, group, gram):
        self.group = group
        self.gram = tuple(tuple(QmodZ(v) for v in row) for row in gram)

    def value(self, a, b):
        if a.parent != self.group or b.parent != self.group:
            raise GroupMismatch("elements are not in the pairing's group")
        total = QmodZ(0)
        for i, x in enumerate(a.coords):
            if not x:
                continue
            for j, y in enumerate(b.coords):
                if y:
                    total = total + (x * y) * self.gram[i][j]
        return total

    __call__ = value

    def negate(self):
        return TorsionPairing(self.group, [[-v for v in row] for row in self.gram])

    def scale(self, k):
        return TorsionPairing(self.group, [[k * v for v in row] for row in self.gram])

    def is_nondegenerate(self):
        return is_nondegenerate(self)

    def self_pairings(self):
        """Multiset of ``p(x, x)`` over all elements."""
        return Counter(self.value(x, x) for x in self.group.elements())

    def values(self):
        return {self.value(x, y) for x in self.group.elements() for y in self.group.elements()}

    def pullback(self, phi):
        """``(a, b) -> p(φa, φb)`` for a hom ``φ`` into this pairing's group."""
        imgs = phi.images
        return TorsionPairing(phi.source, [[self.value(u, v) for v in imgs] for u in imgs])

    def __eq__(self, other):
        return (isinstance(other, TorsionPairing) and self.group == other.group
                and self.gram == other.gram)

    def __hash__(self):
        return hash((self.group, self.gram))

    def __repr__(self):
        rows = "; ".join(" ".join(str(v) for v in row) for row in self.gram)
        return f"TorsionPairing({self.group}, [{rows}])"

    def to_json_obj(self):
        return {"group": self.group.to_json_obj(),
                "gram": [[str(v) for v in row] for row in self.gram]}

    @classmethod
    def from_json_obj(cls, obj):
        return from_gram(FiniteAbelianGroup.from_json_obj(obj["group"]), obj["gram"])


def from_gram(G, M):
    """Validated pairing with ``value(e_i, e_j) = M[i][j]``."""
    k = G.rank
    if len(M) != k or any(len(row) != k for row in M):
        raise MalformedGram(f"gram must be {k}x{k}")
    vals = [[QmodZ(v) for v in row] for row in M]
    for i in range(k):
        for j in range(k):
            if vals[i][j] != vals[j][i]:
                raise MalformedGram(f"gram not symmetric at ({i}, {j})")
            if (G.factors[i] * vals[i][j]):
                raise MalformedGram(
                    f"cell ({i}, {j}): {G.factors[i]} * {vals[i][j]} != 0 in Q/Z")
    return TorsionPairing(G, vals)


def from_linking_matrix(L):
    """Pairing ``(x, y) -> -x^T L^{-1} y`` on ``coker L``."""
    if not L.is_symmetric():
        raise MalformedGram("linking matrix is not symmetric")
    inv = rational_inverse(L)  # raises SingularMatrixError when det = 0
    coker = Cokernel(L)
    G = FiniteAbelianGroup(coker.invariant_factors, _checked=True)
    lifts = [coker.generator(i) for i in range(G.rank)]
    n = L.rows
    rows = inv.to_rows()
    gram = []
    for x in lifts:
        lx = [sum(Fraction(x[a]) * rows[a][b] for a in range(n)) for b in range(n)]
        gram.append([QmodZ(-sum(lx[b] * y[b] for b in range(n))) for y in lifts])
    return from_gram(G, gram)


def orthogonal_sum(p1, p2):
    """Block-diagonal sum, renormalized to invariant-factor form."""
    orders = list(p1.group.factors) + list(p2.group.factors)
    k1 = p1.group.rank
    block = []
    for i in range(len(orders)):
        row = []
        for j in range(len(orders)):
            if i < k1 and j < k1:
                row.append(p1.gram[i][j])
            elif i >= k1 and j >= k1:
                row.append(p2.gram[i - k1][j - k1])
            else:
                row.append(QmodZ(0))
        block.append(row)
    if not orders:
        return TorsionPairing(FiniteAbelianGroup(), [])
    S, _, back = normal_form(orders)
    gram = []
    for u in back:
        row = []
        for v in back:
            acc = QmodZ(0)
            for i, a in enumerate(u):
                for j, b in enumerate(v):
                    if a and b:
                        acc = acc + (a * b) * block[i][j]
            row.append(acc)
        gram.append(row)
    return from_gram(S, gram)


def is_nondegenerate(p):
    """Injectivity of ``a -> p(a, -)``, via the lattice of adjoint-kernel vectors.

    With ``e`` the exponent and ``A = e * gram`` (integral), the kernel lattice
    ``{a : A^T a ≡ 0 mod e}`` contains ``diag(d) Z^k``; the adjoint is
    injective exactly when the two lattices have the same index in ``Z^k``.
    """
    G = p.group
    k = G.rank
    if k == 0:
        return True
    e = G.exponent()
    A = [[int(v.value * e) for v in row] for row in p.gram]
    At = IntMatrix.from_rows([[A[i][j] for i in range(k)] for j in range(k)], cols=k)
    big = At.hstack(IntMatrix.diagonal([e] * k))
    span = [v[:k] for v in lattice_kernel(big)]
    S = IntMatrix.from_rows([list(c) for c in zip(*span)], cols=len(span))
    diag = smith_normal_form(S).diagonal
    index = 1
    for d in diag:
        index *= d
    return len(diag) == k and index == G.order


@dataclass
class PairingIsoReport:
    isomorphic: bool
    witness: AbHom = None
    invariants_compared: list = field(default_factory=list)

    def __bool__(self):
        return self.isomorphic


def _multiset_str(c):
    return sorted((str(k), v) for k, v in c.items())


def are_isomorphic(p1, p2, bound=AUT_BOUND):
    """Search for ``φ`` with ``p2(φa, φb) = p1(a, b)``.

    Quick invariants are compared first; the automorphism search runs only
    when they agree.
    """
    G1, G2 = p1.group, p2.group
    inv = [("group", str(G1), str(G2))]
    if G1 != G2:
        return PairingIsoReport(False, None, inv)
    if G1.order > bound:
        raise BoundExceeded(f"group order {G1.order} exceeds bound {bound}")
    s1, s2 = p1.self_pairings(), p2.self_pairings()
    inv.append(("self-pairing multiset", _multiset_str(s1), _multiset_str(s2)))
    if s1 != s2:
        return PairingIsoReport(False, None, inv)
    if p1 == p2:
        return PairingIsoReport(True, AbHom.identity(G1), inv)
    gens = G1.gens()
    for phi in automorphisms(G1, bound):
        imgs = phi.images
        if all(p2.value(imgs[i], imgs[j]) == p1.gram[i][j]
               for i in range(len(gens)) for j in range(i, len(gens))):
            return PairingIsoReport(True, phi, inv)
    return PairingIsoReport(False, None, inv)


def _prime_factors(n):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _p_part(n, p):
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def order_realization_witness(p, a):
    """Some ``b`` with ``ord(p(a, b)) = ord(a)``.

    For each prime ``ℓ`` dividing ``ord(a)`` a generator ``e_j`` whose value
    ``p(a, e_j)`` carries the full ``ℓ``-part is rescaled so that value has
    ``ℓ``-power order; the rescaled pieces have pairwise coprime value
    orders, so their sum realizes ``ord(a)``.
    """
    if a.parent != p.group:
        raise GroupMismatch("element not in the pairing's group")
    if a.is_zero():
        raise ValueError("witness requested for the zero element")
    if not is_nondegenerate(p):
        raise DegeneratePairing("order realization needs a non-degenerate pairing")
    n = a.order()
    for e in p.group.gens():
        if p.value(a, e).order() == n:
            return e
    b = p.group.zero()
    for ell in _prime_factors(n):
        want = _p_part(n, ell)
        piece = None
        for e in p.group.gens():
            m = p.value(a, e).order()
            if _p_part(m, ell) == want:
                piece = (m // want) * e
                break
        if piece is None:
            raise NoSolution(f"no generator realizes the {ell}-part of ord(a) = {n}; "
                             "pairing cannot be non-degenerate")
        b = b + piece
    if p.value(a, b).order() != n:
        raise NoSolution(f"witness construction failed for {a}")
    return b


def random_nondegenerate(G, seed, attempts=1000, bound=AUT_BOUND):
    """Deterministic (in ``seed``) random non-degenerate pairing on ``G``."""
    if G.order > bound:
        raise BoundExceeded(f"group order {G.order} exceeds bound {bound}")
    rng = random.Random(seed)
    k = G.rank
    d = G.factors
    for _ in range(attempts):
        gram = [[QmodZ(0)] * k for _ in range(k)]
        for i in range(k):
            for j in range(i, k):
                g = gcd(d[i], d[j])
                v = QmodZ(rng.randrange(g), g)
                gram[i][j] = gram[j][i] = v
        p = TorsionPairing(G, gram)
        if is_nondegenerate(p):
            return p
    raise GenerationFailure(f"no non-degenerate pairing on {G} after {attempts} attempts")


def pairing_from_cup(cup, k, sign):
    """Q/Z pairing on ``H^2`` from a cyclic cup image ``C = Z/m`` and ``1 -> k/m``."""
    m = cup.image.order
    ints = cup.gram_ints()
    gram = [[QmodZ(sign * k * v, m) for v in row] for row in ints]
    return from_gram(cup.h2, gram)
