"""Finite groups as multiplication tables.

Elements are ``0..n-1`` with ``0`` the identity.  Groups built from tags keep
a structural ``kind`` so the special-resolution factory can recognise them.
"""

import re
from math import gcd

from ..errors import BoundExceeded, InvalidTag


class FiniteGroup:
    """A finite group given by its Cayley table.

    ``kind`` is one of ``("cyclic", n)``, ``("quaternion", order)``,
    ``("dihedral", order)``, ``("semidihedral", order)``,
    ``("product", (kind1, kind2, ...))`` or ``None`` for table-only groups.
    """

    def __init__(self, table, name="G", kind=None, generators=None, check=True):
        self.table = [list(r) for r in table]
        self.order = len(self.table)
        self.name = name
        self.kind = kind
        self.generators = list(generators) if generators is not None else None
        if check:
            self._check()
        e = 0
        self.inverse = [0] * self.order
        for g in range(self.order):
            row = self.table[g]
            self.inverse[g] = row.index(e)

    def _check(self):
        n = self.order
        t = self.table
        if n == 0:
            raise ValueError("empty group")
        for g in range(n):
            if t[0][g] != g or t[g][0] != g:
                raise ValueError("element 0 is not the identity")
            if sorted(t[g]) != list(range(n)):
                raise ValueError(f"row {g} is not a permutation")
        for a in range(n):
            ta = t[a]
            for b in range(n):
                tab = t[ta[b]]
                tb = t[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise ValueError("table is not associative")

    @classmethod
    def from_table(cls, table, name="G"):
        return cls(table, name=name)

    def __len__(self):
        return self.order

    def to_json_obj(self):
        return {"name": self.name, "tag": format_tag(self.kind) if self.kind else None,
                "table": self.table, "generators": self.generators}

    @classmethod
    def from_json_obj(cls, obj):
        kind = parse_tag(obj["tag"]) if obj.get("tag") else None
        return cls(obj["table"], name=obj.get("name", "G"), kind=kind,
                   generators=obj.get("generators"))

    def __repr__(self):
        return f"<FiniteGroup {self.name} order={self.order}>"

    def mul(self, a, b):
        return self.table[a][b]

    def power(self, g, k):
        if k < 0:
            g, k = self.inverse[g], -k
        out = 0
        for _ in range(k):
            out = self.table[out][g]
        return out

    def element_order(self, g):
        k, x = 1, g
        while x != 0:
            x = self.table[x][g]
            k += 1
        return k

    def commutator(self, a, b):
        t, inv = self.table, self.inverse
        return t[t[t[inv[a]][inv[b]]][a]][b]

    def is_abelian(self):
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def closure(self, gens):
        """Sorted elements of the subgroup generated by ``gens``."""
        seen = {0}
        frontier = [0]
        gens = [g for g in gens if g != 0]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)

    def generating_set(self, elements=None):
        """A small generating set for the subgroup on ``elements`` (default: all)."""
        pool = range(self.order) if elements is None else elements
        gens, span = [], {0}
        target = self.order if elements is None else len(elements)
        for g in sorted(pool, key=lambda x: -self.element_order(x)):
            if len(span) == target:
                break
            if g not in span:
                gens.append(g)
                span = set(self.closure(gens))
        return gens

    def subgroup(self, elements, name=None):
        """Return ``(H, inclusion)`` for a subgroup given by its element list."""
        elements = sorted(elements)
        if elements[0] != 0:
            raise ValueError("subgroup must contain the identity")
        pos = {g: i for i, g in enumerate(elements)}
        table = [[pos[self.table[a][b]] for b in elements] for a in elements]
        return FiniteGroup(table, name=name or f"sub({self.name})", check=False), elements

    def is_normal(self, elements):
        s = set(elements)
        t, inv = self.table, self.inverse
        return all(t[t[g][h]][inv[g]] in s for g in range(self.order) for h in elements)

    def quotient(self, normal, name=None):
        """Return ``(G/N, projection)`` with projection a list indexed by elements."""
        normal = sorted(normal)
        proj = [-1] * self.order
        reps = []
        for g in range(self.order):
            if proj[g] >= 0:
                continue
            idx = len(reps)
            reps.append(g)
            for h in normal:
                proj[self.table[g][h]] = idx
        table = [[proj[self.table[a][b]] for b in reps] for a in reps]
        return FiniteGroup(table, name=name or f"{self.name}/N", check=False), proj

    def center(self):
        t = self.table
        return [z for z in range(self.order) if all(t[z][g] == t[g][z] for g in range(self.order))]

    def involutions(self):
        return [g for g in range(1, self.order) if self.table[g][g] == 0]

    def is_cyclic(self):
        return any(self.element_order(g) == self.order for g in range(self.order))


# -- constructors ------------------------------------------------------------


def cyclic_group(n):
    if n < 1:
        raise InvalidTag(f"cyclic({n})")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(table, name=f"Z/{n}", kind=("cyclic", n),
                       generators=[1 % n] if n > 1 else [], check=False)


def _metacyclic(m, r, s, name, kind):
    # elements x^a y^b (a < m, b < 2) indexed a + m*b; y x y^-1 = x^r, y^2 = x^s
    n = 2 * m
    table = [[0] * n for _ in range(n)]
    for i in range(n):
        a, b = i % m, i // m
        for j in range(n):
            c, d = j % m, j // m
            e = (a + (pow(r, b, m) * c)) % m
            f = b + d
            if f == 2:
                e, f = (e + s) % m, 0
            table[i][j] = e + m * f
    return FiniteGroup(table, name=name, kind=kind, generators=[1 % m, m], check=False)


def quaternion_group(order):
    if order < 8 or order % 4:
        raise InvalidTag(f"quaternion({order})")
    m = order // 2
    return _metacyclic(m, m - 1, m // 2, f"Q{order}", ("quaternion", order))


def dihedral_group(order):
    if order < 4 or order % 2:
        raise InvalidTag(f"dihedral({order})")
    m = order // 2
    return _metacyclic(m, m - 1, 0, f"D{order}", ("dihedral", order))


def semidihedral_group(order):
    if order < 16 or order & (order - 1):
        raise InvalidTag(f"semidihedral({order})")
    m = order // 2
    return _metacyclic(m, m // 2 - 1, 0, f"SD{order}", ("semidihedral", order))


def direct_product(g1, g2):
    """``g1 x g2`` with element ``(a, b)`` at index ``a * |g2| + b``."""
    n1, n2 = g1.order, g2.order
    t1, t2 = g1.table, g2.table
    table = [[t1[i // n2][j // n2] * n2 + t2[i % n2][j % n2] for j in range(n1 * n2)]
             for i in range(n1 * n2)]
    G = FiniteGroup(table, name=f"{g1.name}x{g2.name}",
                    kind=("product", (g1.kind, g2.kind)), check=False)
    G.factors = (g1, g2)
    return G


_ALIASES = {
    "Q8": "quaternion(8)", "Q16": "quaternion(16)", "Q32": "quaternion(32)",
    "V4": "product(cyclic(2),cyclic(2))", "D8": "dihedral(8)",
}


def _split_args(body):
    parts, depth, cur = [], 0, ""
    for ch in body:
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    if cur:
        parts.append(cur)
    return [p.strip() for p in parts]


def parse_tag(tag):
    """Normalize a tag string into a nested tuple description."""
    tag = tag.strip().replace(" ", "")
    tag = _ALIASES.get(tag, tag)
    m = re.fullmatch(r"Z/(\d+)", tag)
    if m:
        return ("cyclic", int(m.group(1)))
    m = re.fullmatch(r"Q(\d+)", tag)
    if m:
        return ("quaternion", int(m.group(1)))
    m = re.fullmatch(r"(\w+)\((.*)\)", tag)
    if not m:
        raise InvalidTag(tag)
    head, body = m.group(1), m.group(2)
    if head in ("cyclic", "quaternion", "dihedral", "semidihedral"):
        try:
            return (head, int(body))
        except ValueError:
            raise InvalidTag(tag) from None
    if head == "product":
        args = _split_args(body)
        if len(args) < 1:
            raise InvalidTag(tag)
        return ("product", tuple(parse_tag(a) for a in args))
    raise InvalidTag(tag)


def format_tag(kind):
    head, arg = kind
    if head == "product":
        return "product(" + ",".join(format_tag(k) for k in arg) + ")"
    return f"{head}({arg})"


def group_from_kind(kind):
    head, arg = kind
    if head == "cyclic":
        return cyclic_group(arg)
    if head == "quaternion":
        return quaternion_group(arg)
    if head == "dihedral":
        return dihedral_group(arg)
    if head == "semidihedral":
        return semidihedral_group(arg)
    if head == "product":
        factors = [group_from_kind(k) for k in arg]
        if len(factors) == 1:
            return factors[0]
        # right-nested binary products keep the tensor-resolution factory simple
        g = factors[-1]
        for f in reversed(factors[:-1]):
            g = direct_product(f, g)
        return g
    raise InvalidTag(str(kind))


def group_from_tag(tag):
    """Build a :class:`FiniteGroup` from a tag string or a raw table."""
    if isinstance(tag, FiniteGroup):
        return tag
    if isinstance(tag, (list, tuple)) and tag and isinstance(tag[0], (list, tuple)):
        return FiniteGroup.from_table(tag)
    if isinstance(tag, tuple):
        return group_from_kind(tag)
    return group_from_kind(parse_tag(tag))


# -- subgroups ---------------------------------------------------------------


def derived_subgroup(G):
    """Return ``([G, G], inclusion)``."""
    comms = {G.commutator(a, b) for a in range(G.order) for b in range(G.order)}
    elems = G.closure(sorted(comms))
    H, inc = G.subgroup(elems, name=f"[{G.name},{G.name}]")
    return H, inc


def derived_series_term(G, n):
    """Elements of the ``n``-th derived subgroup, as a list of G-elements."""
    elems = list(range(G.order))
    for _ in range(n):
        comms = {G.commutator(a, b) for a in elems for b in elems}
        elems = G.closure(sorted(comms))
    return elems


def derived_quotient(G, n):
    """Return ``(G / G^(n), projection)``."""
    N = derived_series_term(G, n)
    return G.quotient(N, name=f"{G.name}/{G.name}^({n})")


def sylow2(G, bound=512):
    """Return ``(S, inclusion)`` for a Sylow 2-subgroup of ``G``."""
    if G.order > bound:
        raise BoundExceeded(f"|G| = {G.order} exceeds Sylow search bound {bound}")
    target = 1
    while G.order % (2 * target) == 0:
        target *= 2
    P = [0]
    t, inv = G.table, G.inverse
    while len(P) < target:
        pset = set(P)
        for g in range(G.order):
            if g in pset or t[g][g] not in pset:
                continue
            if all(t[t[g][h]][inv[g]] in pset for h in P):
                P = G.closure(P + [g])
                break
        else:
            raise RuntimeError("Sylow search stalled")
    S, inc = G.subgroup(P, name=f"Syl2({G.name})")
    return S, inc


def abelianization(G):
    """Return ``(factors, coords)``: invariant factors of ``G/[G,G]`` and,
    for each element, its coordinate vector in that invariant-factor group."""
    from ..exactlin import IntMatrix, smith_normal_form

    K = derived_series_term(G, 1)
    Q, proj = G.quotient(K)
    gens = Q.generating_set()
    k = len(gens)
    # breadth-first spanning tree over the generators; edges give relations
    vec = {0: (0,) * k}
    order = [0]
    for x in order:
        for i, g in enumerate(gens):
            y = Q.table[x][g]
            if y not in vec:
                v = list(vec[x])
                v[i] += 1
                vec[y] = tuple(v)
                order.append(y)
    rels = []
    for x in range(Q.order):
        for i, g in enumerate(gens):
            y = Q.table[x][g]
            r = [a - b for a, b in zip(vec[x], vec[y])]
            r[i] += 1
            if any(r):
                rels.append(r)
    A = IntMatrix.from_rows([list(c) for c in zip(*rels)], cols=len(rels)) if rels \
        else IntMatrix.zeros(k, 0)
    snf = smith_normal_form(A)
    tors = [i for i, d in enumerate(snf.diagonal) if d != 1]
    factors = [snf.diagonal[i] for i in tors]
    qcoords = {}
    for x in range(Q.order):
        y = snf.apply_u(list(vec[x]))
        qcoords[x] = tuple(y[i] % d for i, d in zip(tors, factors))
    return factors, [qcoords[proj[g]] for g in range(G.order)]


def is_generalized_quaternion(G):
    """2-group, non-cyclic, with a unique involution."""
    n = G.order
    return n >= 8 and n & (n - 1) == 0 and len(G.involutions()) == 1 and not G.is_cyclic()


def two_part(n):
    return n & -n


def coprime(a, b):
    return gcd(a, b) == 1
