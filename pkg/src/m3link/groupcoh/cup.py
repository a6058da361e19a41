"""Cup products, the degree-2 cup pairing, and character classes."""

from dataclasses import dataclass, field
from fractions import Fraction

from ..abgrp import AbElement, FiniteAbelianGroup, automorphisms, direct_sum, subgroup_generated
from ..errors import ContextMismatch, UnsupportedVariant
from .chainmap import diagonal_approximation, lift_chain_map
from .cohomology import CohomologyElement, cohomology, frac_mod1


def cup_cochain(R, p, f, q, g):
    """Cochain ``(f ⌣ g)(e_j) = Σ c f(a) g(b)`` over ``Δ(e_j)`` in ``F_p ⊗ F_q``."""
    D = diagonal_approximation(R, p + q)
    N = R.group.order
    out = []
    for j in range(R.ranks[p + q]):
        s = 0
        for a, b, c in D.component(p + q, j, p):
            fa = f[a // N]
            if fa:
                s += c * fa * g[b // N]
        out.append(s)
    return out


def cup_product(x, y):
    """Cup product of two cohomology elements on the same resolution.

    Integral times integral is integral; a Q/Z class times an integral class
    is a Q/Z class.
    """
    if not isinstance(x, CohomologyElement) or not isinstance(y, CohomologyElement):
        raise ContextMismatch("cup_product takes cohomology elements")
    R = x.resolution
    if y.resolution is not R:
        raise ContextMismatch("classes live on different resolutions")
    if y.coeffs != "Z":
        raise ContextMismatch("right factor must be integral")
    p, q = x.degree, y.degree
    z = cup_cochain(R, p, x.cochain, q, y.cochain)
    if x.coeffs == "Z":
        return cohomology(R, p + q, "Z").element(z)
    if x.coeffs == "QmodZ":
        return cohomology(R, p + q, "QmodZ").element([frac_mod1(v) for v in z])
    return cohomology(R, p + q, x.coeffs).element(z)


@dataclass
class CupPairing:
    """The pairing ``H^2 x H^2 -> C <= H^4`` given by cup product."""

    h2: FiniteAbelianGroup
    h4: FiniteAbelianGroup
    image: FiniteAbelianGroup
    image_generators: list
    gram: list
    cyclic: bool
    nondegenerate: bool
    products: list = field(repr=False, default=None)
    source: str = ""

    @property
    def image_rank(self):
        return self.image.rank

    def gram_ints(self):
        """Gram entries as integers mod ``|C|`` (cyclic image only)."""
        if not self.cyclic:
            raise ValueError("image is not cyclic")
        if self.image.is_trivial():
            return [[0] * self.h2.rank for _ in range(self.h2.rank)]
        return [[x.coords[0] for x in row] for row in self.gram]

    def pair(self, u, v):
        """``u ⌣ v`` in ``C`` for ``u, v`` in ``H^2``."""
        acc = self.image.zero()
        for i, a in enumerate(u.coords):
            for j, b in enumerate(v.coords):
                if a and b:
                    acc = acc + (a * b) * self.gram[i][j]
        return acc

    def to_json_obj(self):
        return {
            "h2": self.h2.to_json_obj(), "h4": self.h4.to_json_obj(),
            "image": self.image.to_json_obj(),
            "image_generators": [list(g.coords) for g in self.image_generators],
            "gram": [[list(x.coords) for x in row] for row in self.gram],
            "cyclic": self.cyclic, "nondegenerate": self.nondegenerate,
            "source": self.source,
        }


def cup_pairings_isomorphic(p1, p2):
    """Automorphisms ``(φ, ψ)`` of ``H^2`` and ``C`` carrying one gram to the other, or ``None``.

    Compares the pairings ``H^2 x H^2 -> C`` as abstract bilinear maps; the
    ambient ``H^4`` only has to match as a group.
    """
    if p1.h2 != p2.h2 or p1.image != p2.image or p1.h4 != p2.h4:
        return None
    k = p1.h2.rank
    psis = list(automorphisms(p1.image))
    for phi in automorphisms(p1.h2):
        imgs = phi.images
        target = [[p2.pair(imgs[i], imgs[j]) for j in range(k)] for i in range(k)]
        for psi in psis:
            if all(psi(p1.gram[i][j]) == target[i][j] for i in range(k) for j in range(k)):
                return phi, psi
    return None


def _assemble(h2, h4, products, source):
    sub = subgroup_generated(h4, [x for row in products for x in row])
    C = sub.group
    gram = [[sub.coordinates(x) for x in row] for row in products]
    incl = sub.inclusion()
    pairing = CupPairing(h2, h4, C, list(incl.images), gram, C.is_cyclic(), True,
                         products, source)
    pairing.nondegenerate = _is_nondegenerate(pairing)
    return pairing


def _is_nondegenerate(pairing):
    # every nonzero u pairs nontrivially with some generator
    gens = pairing.h2.gens()
    for u in pairing.h2.elements():
        if u.is_zero():
            continue
        if all(pairing.pair(u, v).is_zero() for v in gens):
            return False
    return True


def cup_pairing_gram(R):
    """All cup products of ``H^2`` generators on resolution ``R``."""
    if R.horizon < 5:
        raise ContextMismatch("cup pairing needs a resolution of horizon >= 5")
    H2 = cohomology(R, 2)
    H4 = cohomology(R, 4)
    gens = H2.generators()
    products = [[cup_product(a, b).cls for b in gens] for a in gens]
    return _assemble(H2.group, H4.group, products, R.name)


def free_product_cup_pairing(tags):
    """Cup pairing of a free product of finite cyclic groups.

    Cohomology in positive degrees is the direct sum over the factors, with
    every product of classes from different factors zero.
    """
    from .groups import group_from_tag
    from .resolution import special_resolution

    factors = []
    for tag in tags:
        G = group_from_tag(tag)
        if not (G.kind and G.kind[0] == "cyclic"):
            raise UnsupportedVariant(f"free-product factor {tag!r} is not finite cyclic")
        factors.append(cup_pairing_gram(special_resolution(G, 5)))
    h2, emb2 = direct_sum([f.h2 for f in factors])
    h4, emb4 = direct_sum([f.h4 for f in factors])
    # generators of the summands, transported into the normalized sums
    blocks = []
    for i, f in enumerate(factors):
        for u in f.h2.gens():
            blocks.append((i, u))
    k = len(blocks)
    block_products = [[h4.zero() for _ in range(k)] for _ in range(k)]
    for s, (i, u) in enumerate(blocks):
        for t, (j, v) in enumerate(blocks):
            if i == j:
                inc = subgroup_inclusion(factors[i])
                block_products[s][t] = emb4(i, inc(factors[i].pair(u, v)))
    # re-express in the normalized H^2 basis via the back-transport
    back = _basis_change(h2, [emb2(i, u) for i, u in blocks])
    products = []
    for a in range(h2.rank):
        row = []
        for b in range(h2.rank):
            acc = h4.zero()
            for s, cs in enumerate(back[a]):
                for t, ct in enumerate(back[b]):
                    if cs and ct:
                        acc = acc + (cs * ct) * block_products[s][t]
            row.append(acc)
        products.append(row)
    out = _assemble(h2, h4, products, "free product " + " * ".join(map(str, tags)))
    out.summands = factors
    out.block_generators = [emb2(i, u) for i, u in blocks]
    out.block_products = block_products
    return out


def subgroup_inclusion(pairing):
    imgs = pairing.image_generators

    def inc(x):
        acc = pairing.h4.zero()
        for c, g in zip(x.coords, imgs):
            acc = acc + c * g
        return acc

    return inc


def _basis_change(G, images):
    """Integer coefficients writing each standard generator of ``G`` in ``images``."""
    sub = subgroup_generated(G, images)
    if sub.order != G.order:
        raise ValueError("images do not generate the group")
    out = []
    for e in G.gens():
        sol = sub._solve(sub._M, list(e.coords))
        out.append(sol[:len(images)])
    return out


# -- characters to degree-two classes ---------------------------------------------


def character_bar_cocycle(G, chi, ab_coords):
    """Integral bar 2-cocycle ``q(g) + q(h) - q(gh)`` for a lift ``q`` of ``χ∘ab``."""
    N = G.order
    lift = [chi(AbElement(chi.group, ab_coords[g])).value for g in range(N)]
    t = G.table
    out = []
    for g in range(N):
        for h in range(N):
            v = lift[g] + lift[h] - lift[t[g][h]]
            if Fraction(v).denominator != 1:
                raise ValueError("character lift is not a homomorphism mod 1")
            out.append(int(v))
    return out


def abelianization_group(G):
    """``(H_1(G) as FiniteAbelianGroup, coordinates of each element)``."""
    from .groups import abelianization

    cache = G.__dict__.setdefault("_ab", None)
    if cache is None:
        factors, coords = abelianization(G)
        cache = (FiniteAbelianGroup(factors, _checked=True), coords)
        G._ab = cache
    return cache


def char_to_h2(R, chi):
    """Class in ``H^2(G; Z)`` of the character ``χ`` of ``H_1(G)``."""
    from .resolution import bar_resolution

    G = R.group
    H1, coords = abelianization_group(G)
    if chi.group != H1:
        raise ContextMismatch(f"character of {chi.group}, expected one of {H1}")
    f = character_bar_cocycle(G, chi, coords)
    if R.strategy == "bar":
        return cohomology(R, 2).element(f)
    cache = R.__dict__.setdefault("_to_bar", {})
    if "phi" not in cache:
        B = bar_resolution(G, 3, bound=max(1 << 18, G.order ** 4))
        cache["phi"] = lift_chain_map(R, B, 2)
    return cohomology(R, 2).element(cache["phi"].pullback(2, f))


def ext_h1(G):
    """``Ext(H_1(G), Z)`` computed from invariant factors alone (isomorphic to ``H_1``)."""
    H1, _ = abelianization_group(G)
    return FiniteAbelianGroup(list(H1.factors), _checked=True)
