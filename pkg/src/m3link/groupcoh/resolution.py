"""Free resolutions of Z over Z[G] with explicit contracting homotopies.

A free module ``F_n = Z[G]^{r_n}`` has Z-basis ``g e_j`` stored at flat index
``j * |G| + g``; module elements are ``{index: coeff}`` dicts.  ``∂_n`` is
determined by the images of the generators ``e_j`` and extended
equivariantly.  ``h_n : F_n -> F_{n+1}`` is Z-linear only and satisfies

    ∂_1 h_0 = 1 - ηε           (degree 0)
    ∂_{n+1} h_n + h_{n-1} ∂_n = 1    (n >= 1)
"""

from ..errors import BoundExceeded, HorizonError, NoSolution
from ..exactlin import IntMatrix, smith_normal_form, solve_integer

BAR_BOUND = 1 << 18


def add_into(acc, elem, scale=1):
    for k, v in elem.items():
        nv = acc.get(k, 0) + scale * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)
    return acc


class GroupRingMatrix:
    """A Z[G]-linear map ``Z[G]^source -> Z[G]^target``.

    ``columns[j]`` is the image of the ``j``-th source generator as a list of
    ``(target generator, group element, coefficient)``.
    """

    def __init__(self, group, source_rank, target_rank, columns):
        self.group = group
        self.source_rank = source_rank
        self.target_rank = target_rank
        self.columns = columns

    def entry(self, i, j):
        out = {}
        for t, g, c in self.columns[j]:
            if t == i:
                out[g] = out.get(g, 0) + c
        return {g: c for g, c in out.items() if c}

    def augmented(self):
        """Integer matrix of ``ε`` applied entrywise (target x source)."""
        data = {}
        for j, col in enumerate(self.columns):
            for i, _, c in col:
                row = data.setdefault(i, {})
                row[j] = row.get(j, 0) + c
        return IntMatrix.from_dict_rows(self.target_rank, self.source_rank, data)

    def to_json_obj(self):
        return {"source": self.source_rank, "target": self.target_rank,
                "columns": [[[i, g, c] for i, g, c in col] for col in self.columns]}


class FreeResolution:
    """Resolution ``F_N -> ... -> F_0 -> Z`` of a finite group, with homotopy.

    ``boundary_gen(n, j)`` returns the image of generator ``j`` of ``F_n``;
    ``homotopy_fn(n, index)`` returns ``h_n`` of a Z-basis element, or is
    ``None`` until :func:`contracting_homotopy_solve` supplies one.
    """

    def __init__(self, group, ranks, boundary_gen, homotopy_fn=None,
                 name="R", strategy="custom"):
        self.group = group
        self.ranks = list(ranks)
        self.horizon = len(ranks) - 1
        self.name = name
        self.strategy = strategy
        self._boundary_gen = boundary_gen
        self._bcache = {}
        self._homotopy_fn = homotopy_fn
        self._zcache = {}

    def __repr__(self):
        return f"<FreeResolution {self.name} of {self.group.name} ranks={self.ranks}>"

    @property
    def has_homotopy(self):
        return self._homotopy_fn is not None

    def _check_degree(self, n, top=None):
        top = self.horizon if top is None else top
        if not 0 <= n <= top:
            raise HorizonError(f"degree {n} outside resolution horizon {top}")

    def boundary_of_generator(self, n, j):
        if n < 1:
            raise HorizonError("no boundary out of degree 0")
        self._check_degree(n)
        key = (n, j)
        col = self._bcache.get(key)
        if col is None:
            col = self._boundary_gen(n, j)
            self._bcache[key] = col
        return col

    def boundary_matrix(self, n):
        """``∂_n`` as a :class:`GroupRingMatrix`."""
        cols = [self.boundary_of_generator(n, j) for j in range(self.ranks[n])]
        return GroupRingMatrix(self.group, self.ranks[n], self.ranks[n - 1], cols)

    def boundary(self, n, elem):
        """``∂_n`` of a module element."""
        N = self.group.order
        t = self.group.table
        out = {}
        for idx, c in elem.items():
            j, g = divmod(idx, N)
            tg = t[g]
            for i, h, a in self.boundary_of_generator(n, j):
                k = i * N + tg[h]
                nv = out.get(k, 0) + c * a
                if nv:
                    out[k] = nv
                else:
                    del out[k]
        return out

    def homotopy(self, n, elem):
        """``h_n`` of a module element (Z-linear)."""
        self._check_degree(n, self.horizon - 1)
        if self._homotopy_fn is None:
            raise NoSolution(f"{self.name} has no contracting homotopy")
        out = {}
        for idx, c in elem.items():
            add_into(out, self._homotopy_fn(n, idx), c)
        return out

    def act(self, g, elem):
        N = self.group.order
        tg = self.group.table[g]
        return {(idx // N) * N + tg[idx % N]: c for idx, c in elem.items()}

    def augmentation(self, elem):
        return sum(elem.values())

    def coboundary_matrix(self, n):
        """Integer matrix of ``δ^n : Hom(F_n, Z) -> Hom(F_{n+1}, Z)``."""
        self._check_degree(n + 1)
        key = ("cob", n)
        if key not in self._zcache:
            self._zcache[key] = self.boundary_matrix(n + 1).augmented().transpose()
        return self._zcache[key]

    def z_boundary_matrix(self, n):
        """``∂_n`` on the underlying free abelian groups."""
        key = ("zb", n)
        if key not in self._zcache:
            N = self.group.order
            data = {}
            for j in range(self.ranks[n]):
                for g in range(N):
                    for k, c in self.boundary(n, {j * N + g: 1}).items():
                        data.setdefault(k, {})[j * N + g] = c
            self._zcache[key] = IntMatrix.from_dict_rows(self.ranks[n - 1] * N,
                                                         self.ranks[n] * N, data)
        return self._zcache[key]

    def to_json_obj(self, homotopy=False):
        """Boundaries as group-ring columns; optionally the Z-basis homotopy too."""
        obj = {"group": self.group.to_json_obj(), "name": self.name,
               "strategy": self.strategy, "ranks": self.ranks,
               "boundaries": [self.boundary_matrix(n).to_json_obj()["columns"]
                              for n in range(1, self.horizon + 1)]}
        if homotopy and self.has_homotopy:
            N = self.group.order
            obj["homotopy"] = [[sorted(self.homotopy(n, {i: 1}).items())
                                for i in range(self.ranks[n] * N)]
                               for n in range(self.horizon)]
        return obj

    # -- structural checks -------------------------------------------------

    def check_dd(self, n):
        """Generators of ``F_n`` violating ``∂∂ = 0`` (empty list when exact)."""
        bad = []
        for j in range(self.ranks[n]):
            b = self.boundary(n, {j * self.group.order: 1})
            if n >= 2 and self.boundary(n - 1, b):
                bad.append(j)
            elif n == 1 and self.augmentation(b):
                bad.append(j)
        return bad

    def check_homotopy(self, n):
        """Z-basis indices of ``F_n`` violating the contracting-homotopy identity."""
        N = self.group.order
        bad = []
        for idx in range(self.ranks[n] * N):
            e = {idx: 1}
            lhs = self.boundary(n + 1, self.homotopy(n, e))
            if n >= 1:
                add_into(lhs, self.homotopy(n - 1, self.boundary(n, e)))
            else:
                add_into(lhs, {0: 1})
            if lhs != e:
                bad.append(idx)
        return bad

    def verify(self):
        """Return a list of ``(kind, degree, offenders)`` violations."""
        out = []
        for n in range(1, self.horizon + 1):
            bad = self.check_dd(n)
            if bad:
                out.append(("dd", n, bad))
        if self.has_homotopy:
            for n in range(self.horizon):
                bad = self.check_homotopy(n)
                if bad:
                    out.append(("homotopy", n, bad))
        return out


# -- bar resolution ----------------------------------------------------------


def bar_resolution(G, n_max, bound=BAR_BOUND):
    """Unnormalized bar resolution: ``F_n`` free on ``[g_1|...|g_n]``.

    Generator ``[g_1|...|g_n]`` has index ``sum g_k N^(n-k)``.
    """
    N = G.order
    if N ** (n_max + 1) > bound:
        raise BoundExceeded(f"|G|^(n_max+1) = {N ** (n_max + 1)} exceeds bar bound {bound}")
    t = G.table

    def digits(j, n):
        out = [0] * n
        for k in range(n - 1, -1, -1):
            j, out[k] = divmod(j, N)
        return out

    def index(ds):
        j = 0
        for d in ds:
            j = j * N + d
        return j

    def boundary_gen(n, j):
        gs = digits(j, n)
        out = [(index(gs[1:]), gs[0], 1)]
        for i in range(n - 1):
            merged = gs[:i] + [t[gs[i]][gs[i + 1]]] + gs[i + 2:]
            out.append((index(merged), 0, -1 if i % 2 == 0 else 1))
        out.append((index(gs[:-1]), 0, (-1) ** n))
        return out

    def homotopy_fn(n, idx):
        j, g = divmod(idx, N)
        return {(g * N ** n + j) * N: 1}

    R = FreeResolution(G, [N ** k for k in range(n_max + 1)], boundary_gen,
                       homotopy_fn, name=f"bar({G.name})", strategy="bar")
    R.bar_digits = digits
    R.bar_index = index
    return R


# -- periodic resolutions ----------------------------------------------------


def periodic_resolution_cyclic(n, n_max, G=None):
    """Period-2 resolution of ``Z/n`` with generator ``t`` = element 1.

    ``∂`` alternates ``t - 1`` (odd degrees) and the norm element (even).
    """
    from .groups import cyclic_group

    if n < 2:
        raise ValueError("periodic cyclic resolution needs n >= 2")
    G = G or cyclic_group(n)
    t = 1

    def boundary_gen(k, j):
        if k % 2:
            return [(0, t, 1), (0, 0, -1)]
        return [(0, g, 1) for g in range(n)]

    def homotopy_fn(k, idx):
        i = idx
        if k % 2 == 0:
            return {g: 1 for g in range(i)}
        return {0: 1} if i == n - 1 else {}

    return FreeResolution(G, [1] * (n_max + 1), boundary_gen, homotopy_fn,
                          name=f"periodic({G.name})", strategy="periodic-cyclic")


def fox_derivative(G, word, images, gen):
    """Fox derivative of ``word`` (list of ``(generator, ±1)``) as ``{g: c}``."""
    t, inv = G.table, G.inverse
    out = {}
    prefix = 0
    for s, e in word:
        g = images[s]
        if e > 0:
            if s == gen:
                out[prefix] = out.get(prefix, 0) + 1
            prefix = t[prefix][g]
        else:
            prefix = t[prefix][inv[g]]
            if s == gen:
                out[prefix] = out.get(prefix, 0) - 1
    return {g: c for g, c in out.items() if c}


def _quaternion_boundary3(G, m):
    # ∂_3(e) = (x^-1 - 1) ρ_1 + (y x - 1) ρ_2 with x = element 1, y = element m;
    # generates ker ∂_2 as a module (exactness is re-checked by the homotopy solve)
    t, inv = G.table, G.inverse
    x, y = 1, m
    return [(0, inv[x], 1), (0, 0, -1), (1, t[y][x], 1), (1, 0, -1)]


def periodic_resolution_quaternion(order, n_max, G=None, cache=True):
    """Period-4 resolution of the generalized quaternion group of given order.

    Uses the presentation ``<x, y | x^(m/2) y^-2, y x y^-1 x>`` (``m = order/2``)
    with ranks ``1, 2, 2, 1, 1, 2, 2, 1, ...``; the homotopy is solved.
    """
    from .groups import quaternion_group

    if order not in (8, 16, 32):
        raise ValueError("quaternion order must be 8, 16 or 32")
    G = G or quaternion_group(order)
    m = order // 2
    x, y = 1, m
    X, Y = 0, 1
    rel1 = [(X, 1)] * (m // 2) + [(Y, -1), (Y, -1)]
    rel2 = [(Y, 1), (X, 1), (Y, -1), (X, 1)]
    images = {X: x, Y: y}
    d1 = [[(0, x, 1), (0, 0, -1)], [(0, y, 1), (0, 0, -1)]]
    d2 = []
    for rel in (rel1, rel2):
        col = []
        for s in (X, Y):
            for g, c in fox_derivative(G, rel, images, s).items():
                col.append((s, g, c))
        d2.append(col)
    d3 = [_quaternion_boundary3(G, m)]
    d4 = [[(0, g, 1) for g in range(order)]]

    def boundary_gen(n, j):
        k = n % 4
        return (d4, d1, d2, d3)[k][j]

    base = [1, 2, 2, 1]
    ranks = [1] + [base[k % 4] for k in range(1, n_max + 1)]
    R = FreeResolution(G, ranks, boundary_gen, None,
                       name=f"periodic({G.name})", strategy="periodic-quaternion")
    from . import cache as _cache
    h = _cache.load_homotopy(R) if cache else None
    if h is None:
        h = contracting_homotopy_solve(R)
        if cache:
            _cache.store_homotopy(R, h)
    R._homotopy_fn = _table_homotopy(h)
    return R


def _table_homotopy(h):
    def fn(n, idx):
        return h[n][idx]
    return fn


def contracting_homotopy_solve(R):
    """Solve ``∂h + h∂ = 1 - ηε`` degreewise over Z; returns ``h[n][index]``.

    Raises :class:`NoSolution` naming the first degree where the complex
    fails to be exact.
    """
    N = R.group.order
    h = []
    for n in range(R.horizon):
        B = R.z_boundary_matrix(n + 1)
        snf = smith_normal_form(B)
        hn = []
        for idx in range(R.ranks[n] * N):
            target = {idx: 1}
            if n == 0:
                add_into(target, {0: 1}, -1)
            else:
                prev = {}
                for k, c in R.boundary(n, {idx: 1}).items():
                    add_into(prev, h[n - 1][k], c)
                add_into(target, prev, -1)
            rhs = [0] * (R.ranks[n] * N)
            for k, c in target.items():
                rhs[k] = c
            sol = solve_integer(B, rhs, snf=snf)
            if sol is None:
                raise NoSolution(f"complex is not exact at degree {n}")
            hn.append({k: v for k, v in enumerate(sol) if v})
        h.append(hn)
    return h


def resolution_from_json_obj(obj, solve=False):
    """Rebuild a resolution; a missing homotopy is solved for when ``solve`` is set."""
    from .groups import FiniteGroup

    G = FiniteGroup.from_json_obj(obj["group"])
    cols = [None] + [[[tuple(t) for t in col] for col in deg] for deg in obj["boundaries"]]

    def boundary_gen(n, j):
        return cols[n][j]

    fn = None
    if "homotopy" in obj:
        fn = _table_homotopy([[{k: v for k, v in pairs} for pairs in hn]
                              for hn in obj["homotopy"]])
    R = FreeResolution(G, obj["ranks"], boundary_gen, fn, name=obj.get("name", "R"),
                       strategy=obj.get("strategy", "custom"))
    if fn is None and solve:
        R._homotopy_fn = _table_homotopy(contracting_homotopy_solve(R))
    return R


# -- tensor products ---------------------------------------------------------


def tensor_resolution(R1, R2, G=None):
    """Resolution of ``G1 x G2`` from resolutions of the factors.

    Generators of degree ``n`` are pairs ``(a, b)`` of generators with
    ``deg a + deg b = n``; the homotopy is ``h1 ⊗ 1 + ηε ⊗ h2``.
    """
    from .groups import direct_product

    G1, G2 = R1.group, R2.group
    G = G or direct_product(G1, G2)
    N1, N2 = G1.order, G2.order
    n_max = min(R1.horizon, R2.horizon)
    layout = []
    pos = []
    for n in range(n_max + 1):
        gens = [(p, a, b) for p in range(n + 1)
                for a in range(R1.ranks[p]) for b in range(R2.ranks[n - p])]
        layout.append(gens)
        pos.append({g: i for i, g in enumerate(gens)})

    def boundary_gen(n, j):
        p, a, b = layout[n][j]
        out = []
        if p >= 1:
            for i, g, c in R1.boundary_of_generator(p, a):
                out.append((pos[n - 1][(p - 1, i, b)], g * N2, c))
        if n - p >= 1:
            sign = -1 if p % 2 else 1
            for i, g, c in R2.boundary_of_generator(n - p, b):
                out.append((pos[n - 1][(p, a, i)], g, sign * c))
        return out

    def homotopy_fn(n, idx):
        j, g = divmod(idx, N1 * N2)
        p, a, b = layout[n][j]
        g1, g2 = divmod(g, N2)
        out = {}
        if p < R1.horizon:
            for k, c in R1.homotopy(p, {a * N1 + g1: 1}).items():
                a2, h1 = divmod(k, N1)
                key = pos[n + 1][(p + 1, a2, b)] * N1 * N2 + h1 * N2 + g2
                out[key] = out.get(key, 0) + c
        if p == 0 and n < R2.horizon:
            for k, c in R2.homotopy(n, {b * N2 + g2: 1}).items():
                b2, h2 = divmod(k, N2)
                key = pos[n + 1][(0, 0, b2)] * N1 * N2 + h2
                out[key] = out.get(key, 0) + c
        return {k: v for k, v in out.items() if v}

    ranks = [len(l) for l in layout]
    R = FreeResolution(G, ranks, boundary_gen, homotopy_fn,
                       name=f"({R1.name})⊗({R2.name})", strategy="tensor")
    R.layout = layout
    return R


def trivial_resolution(G, n_max):
    """The resolution ``Z <- Z <-0- Z <-1- Z ...`` of the trivial group."""
    def boundary_gen(n, j):
        return [] if n % 2 else [(0, 0, 1)]

    def homotopy_fn(n, idx):
        return {0: 1} if n % 2 else {}

    return FreeResolution(G, [1] * (n_max + 1), boundary_gen, homotopy_fn,
                          name=f"periodic({G.name})", strategy="trivial")


def special_resolution(G, n_max):
    """Small resolution chosen from the group's structural tag.

    Falls back to the bar resolution for groups without a shipped special
    resolution.
    """
    from .groups import group_from_kind

    kind = G.kind
    if kind is None:
        return bar_resolution(G, n_max)
    head, arg = kind
    if head == "cyclic":
        if arg == 1:
            return trivial_resolution(G, n_max)
        return periodic_resolution_cyclic(arg, n_max, G=G)
    if head == "quaternion" and arg in (8, 16, 32):
        return periodic_resolution_quaternion(arg, n_max, G=G)
    if head == "product" and hasattr(G, "factors"):
        f1, f2 = G.factors
        return tensor_resolution(special_resolution(f1, n_max),
                                 special_resolution(f2, n_max), G=G)
    return bar_resolution(G, n_max)
