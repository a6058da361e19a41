"""Finite abelian groups in invariant-factor form."""

import random
from itertools import product
from math import gcd, prod

from ..errors import GroupMismatch
from ..exactlin import Cokernel, IntMatrix


def _lcm(a, b):
    return a * b // gcd(a, b)


def normal_form(orders):
    """Normalize ``Z/o_1 + ... + Z/o_k`` to invariant-factor form.

    Returns ``(G, forward, back)``: ``forward[i]`` is the coordinate vector in
    ``G`` of the old generator ``i``; ``back[k]`` expresses the new generator
    ``k`` as integer coefficients on the old generators.
    """
    orders = [int(o) for o in orders]
    if any(o < 1 for o in orders):
        raise ValueError(f"orders must be positive: {orders}")
    k = len(orders)
    coker = Cokernel(IntMatrix.diagonal(orders, k, k))
    if coker.free_rank:
        raise ValueError("zero order denotes an infinite factor")
    G = FiniteAbelianGroup(coker.invariant_factors, _checked=True)
    forward = []
    for i in range(k):
        e = [0] * k
        e[i] = 1
        forward.append(coker.project_torsion(e))
    back = [[v % o for v, o in zip(coker.generator(j), orders)] for j in range(G.rank)]
    return G, forward, back


class FiniteAbelianGroup:
    """``Z/d_1 + ... + Z/d_k`` with ``d_i >= 2`` and ``d_i | d_{i+1}``.

    Any list of positive orders is accepted and normalized; ``[]`` is trivial.
    """

    def __init__(self, factors=(), _checked=False):
        factors = [int(d) for d in factors]
        if not _checked:
            ok = all(d >= 2 for d in factors) and all(
                b % a == 0 for a, b in zip(factors, factors[1:]))
            if not ok:
                factors = normal_form(factors)[0].factors
        self.factors = tuple(factors)

    @classmethod
    def cyclic(cls, n):
        return cls([n])

    @property
    def invariant_factors(self):
        return list(self.factors)

    @property
    def rank(self):
        return len(self.factors)

    @property
    def order(self):
        return prod(self.factors)

    def __len__(self):
        return self.order

    def exponent(self):
        return self.factors[-1] if self.factors else 1

    def is_trivial(self):
        return not self.factors

    def is_cyclic(self):
        return len(self.factors) <= 1

    def zero(self):
        return AbElement(self, [0] * self.rank)

    def element(self, coords):
        return AbElement(self, coords)

    def __call__(self, *coords):
        if len(coords) == 1 and isinstance(coords[0], (list, tuple)):
            coords = coords[0]
        return AbElement(self, coords)

    def gens(self):
        out = []
        for i in range(self.rank):
            e = [0] * self.rank
            e[i] = 1
            out.append(AbElement(self, e))
        return out

    def elements(self):
        for c in product(*[range(d) for d in self.factors]):
            yield AbElement(self, c)

    def random_element(self, rng=None):
        rng = rng or random
        return AbElement(self, [rng.randrange(d) for d in self.factors])

    def primary_factors(self):
        """Prime-power orders of the primary decomposition (a view)."""
        out = []
        for d in self.factors:
            p = 2
            while d > 1:
                if d % p == 0:
                    q = 1
                    while d % p == 0:
                        d //= p
                        q *= p
                    out.append(q)
                p += 1
        return sorted(out)

    def __eq__(self, other):
        return isinstance(other, FiniteAbelianGroup) and self.factors == other.factors

    def __hash__(self):
        return hash(("FAG", self.factors))

    def __repr__(self):
        return f"FiniteAbelianGroup({list(self.factors)})"

    def __str__(self):
        if not self.factors:
            return "0"
        return "+".join(f"Z/{d}" for d in self.factors)

    def to_json_obj(self):
        return {"factors": list(self.factors)}

    @classmethod
    def from_json_obj(cls, obj):
        return cls(obj["factors"])


class AbElement:
    """Element of a :class:`FiniteAbelianGroup`; coordinates reduced mod ``d_i``."""

    __slots__ = ("parent", "coords")

    def __init__(self, parent, coords):
        coords = tuple(coords)
        if len(coords) != parent.rank:
            raise GroupMismatch(f"{len(coords)} coordinates for a rank-{parent.rank} group")
        self.parent = parent
        self.coords = tuple(int(c) % d for c, d in zip(coords, parent.factors))

    def _same(self, other):
        if not isinstance(other, AbElement) or other.parent != self.parent:
            raise GroupMismatch("elements live in different groups")

    def __add__(self, other):
        self._same(other)
        return AbElement(self.parent, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._same(other)
        return AbElement(self.parent, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return AbElement(self.parent, [-a for a in self.coords])

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return AbElement(self.parent, [k * a for a in self.coords])

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, AbElement) and other.parent == self.parent
                and other.coords == self.coords)

    def __hash__(self):
        return hash((self.parent.factors, self.coords))

    def __bool__(self):
        return any(self.coords)

    def is_zero(self):
        return not any(self.coords)

    def order(self):
        n = 1
        for c, d in zip(self.coords, self.parent.factors):
            n = _lcm(n, d // gcd(c, d))
        return n

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self):
        return f"{self.parent}{list(self.coords)}"


def element_order(g):
    return g.order()


def exponent(G):
    return G.exponent()


class AbHom:
    """Homomorphism given by the images of the source generators."""

    def __init__(self, source, target, images):
        self.source = source
        self.target = target
        imgs = [im if isinstance(im, AbElement) else AbElement(target, im) for im in images]
        if len(imgs) != source.rank:
            raise GroupMismatch("need one image per source generator")
        for im, d in zip(imgs, source.factors):
            if im.parent != target:
                raise GroupMismatch("image outside target group")
            if (d * im):
                raise ValueError(f"image {im} does not have order dividing {d}")
        self.images = tuple(imgs)

    @classmethod
    def identity(cls, G):
        return cls(G, G, G.gens())

    @property
    def matrix(self):
        """Column ``i`` is the image of generator ``i``."""
        return [list(im.coords) for im in self.images]

    def __call__(self, x):
        if x.parent != self.source:
            raise GroupMismatch("argument outside source group")
        out = self.target.zero()
        for c, im in zip(x.coords, self.images):
            if c:
                out = out + c * im
        return out

    def compose(self, other):
        """``self ∘ other``."""
        return AbHom(other.source, self.target, [self(im) for im in other.images])

    def image_size(self):
        seen = {self.target.zero()}
        frontier = list(seen)
        while frontier:
            nxt = []
            for x in frontier:
                for im in self.images:
                    y = x + im
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return len(seen)

    def is_isomorphism(self):
        return (self.source.order == self.target.order
                and self.image_size() == self.target.order)

    def __eq__(self, other):
        return (isinstance(other, AbHom) and self.source == other.source
                and self.target == other.target and self.images == other.images)

    def __hash__(self):
        return hash((self.source, self.target, self.images))

    def __repr__(self):
        return f"AbHom({self.source} -> {self.target}, {self.matrix})"


class CokernelProjection:
    """The quotient map ``Z^n -> coker(A)``, torsion coordinates only."""

    def __init__(self, coker, group):
        self.cokernel = coker
        self.group = group

    def __call__(self, vec):
        return AbElement(self.group, self.cokernel.project_torsion(list(vec)))

    def free_part(self, vec):
        return self.cokernel.project(list(vec))[1]

    def lift(self, x):
        return self.cokernel.lift(list(x.coords))


def from_cokernel(A):
    """``(torsion of coker A, projection, free rank)``."""
    coker = Cokernel(A)
    G = FiniteAbelianGroup(coker.invariant_factors, _checked=True)
    return G, CokernelProjection(coker, G), coker.free_rank


class Subgroup:
    """Subgroup ``C`` of ``G`` generated by a list of elements.

    ``C`` is presented abstractly in invariant-factor form; ``coordinates``
    maps members of ``G`` lying in ``C`` to elements of ``C``.
    """

    def __init__(self, ambient, generators):
        from ..exactlin import lattice_kernel, solve_integer

        self.ambient = ambient
        self.generators = list(generators)
        k = len(self.generators)
        r = ambient.rank
        # columns: generators, then the relations d_l e_l of the ambient group
        cols = [list(g.coords) for g in self.generators]
        for l, d in enumerate(ambient.factors):
            e = [0] * r
            e[l] = d
            cols.append(e)
        self._M = IntMatrix.from_rows([list(row) for row in zip(*cols)], cols=len(cols)) \
            if r else IntMatrix.zeros(0, len(cols))
        rels = [v[:k] for v in lattice_kernel(self._M)]
        R = IntMatrix.from_rows([list(row) for row in zip(*rels)], cols=len(rels)) \
            if rels and k else IntMatrix.zeros(k, len(rels))
        self._coker = Cokernel(R)
        if self._coker.free_rank:
            raise ValueError("generated subgroup is infinite")
        self.group = FiniteAbelianGroup(self._coker.invariant_factors, _checked=True)
        self._solve = solve_integer
        self._k = k

    @property
    def order(self):
        return self.group.order

    def coordinates(self, x):
        if x.parent != self.ambient:
            raise GroupMismatch("element outside ambient group")
        sol = self._solve(self._M, list(x.coords))
        if sol is None:
            raise ValueError(f"{x} is not in the subgroup")
        return AbElement(self.group, self._coker.project_torsion(sol[:self._k]))

    def contains(self, x):
        return self._solve(self._M, list(x.coords)) is not None

    def inclusion(self):
        imgs = []
        for j in range(self.group.rank):
            x = self._coker.generator(j)
            acc = self.ambient.zero()
            for c, g in zip(x, self.generators):
                acc = acc + c * g
            imgs.append(acc)
        return AbHom(self.group, self.ambient, imgs)


def subgroup_generated(G, elements):
    return Subgroup(G, elements)


def direct_sum(groups):
    """Normalized direct sum with its coordinate transport.

    Returns ``(S, embed)`` where ``embed(i, x)`` sends ``x`` in ``groups[i]``
    into ``S``.
    """
    orders = [d for G in groups for d in G.factors]
    S, forward, _ = normal_form(orders) if orders else (FiniteAbelianGroup(), [], [])
    offsets = []
    o = 0
    for G in groups:
        offsets.append(o)
        o += G.rank

    def embed(i, x):
        acc = S.zero()
        for c, col in zip(x.coords, forward[offsets[i]:offsets[i] + groups[i].rank]):
            acc = acc + c * AbElement(S, col)
        return acc

    return S, embed
