"""Chain maps between resolutions and diagonal approximations.

Both are built by the comparison recursion: a generator's image is the
target homotopy applied to the image of its boundary.
"""

import threading

from ..errors import ContextMismatch, HorizonError
from .resolution import add_into


class ChainMap:
    """Equivariant chain map ``source -> target`` lifting ``Z -> Z``.

    ``images[n][j]`` is the image of generator ``j`` of ``F_n`` as a target
    module element.  ``hom`` maps source group elements to target group
    elements (identity when both resolve the same group).
    """

    def __init__(self, source, target, images, hom=None):
        self.source = source
        self.target = target
        self.images = images
        self.hom = hom

    @property
    def degree_max(self):
        return len(self.images) - 1

    def apply(self, n, elem):
        N = self.source.group.order
        out = {}
        for idx, c in elem.items():
            j, g = divmod(idx, N)
            img = self.images[n][j]
            if g:
                img = self.target.act(self.hom[g] if self.hom else g, img)
            add_into(out, img, c)
        return out

    def pullback(self, n, cochain):
        """``f ∘ φ_n`` for a target cochain ``f`` (values on generators)."""
        N = self.target.group.order
        out = []
        for img in self.images[n]:
            out.append(sum(c * cochain[k // N] for k, c in img.items()))
        return out

    def check_commutes(self, n):
        """Source generators where ``∂φ_n != φ_{n-1}∂`` (or ``ε`` fails at 0)."""
        N = self.source.group.order
        bad = []
        for j in range(self.source.ranks[n]):
            if n == 0:
                if self.target.augmentation(self.images[0][j]) != 1:
                    bad.append(j)
                continue
            lhs = self.target.boundary(n, self.images[n][j])
            rhs = self.apply(n - 1, self.source.boundary(n, {j * N: 1}))
            if lhs != rhs:
                bad.append(j)
        return bad

    def verify(self):
        return [(n, bad) for n in range(self.degree_max + 1) if (bad := self.check_commutes(n))]


def lift_chain_map(source, target, degree_max, hom=None):
    """Lift the identity of ``Z`` to a chain map through ``degree_max``.

    ``hom``, when given, is a list sending source group elements to target
    group elements; the map is then equivariant along it.
    """
    if not target.has_homotopy:
        raise ContextMismatch("target resolution has no contracting homotopy")
    if degree_max > min(source.horizon, target.horizon):
        raise HorizonError("degree beyond a resolution horizon")
    if hom is None and source.group.order != target.group.order:
        raise ContextMismatch("different groups need an explicit homomorphism")
    f = ChainMap(source, target, [[{0: 1} for _ in range(source.ranks[0])]], hom)
    N = source.group.order
    for n in range(1, degree_max + 1):
        row = []
        for j in range(source.ranks[n]):
            x = f.apply(n - 1, source.boundary(n, {j * N: 1}))
            row.append(target.homotopy(n - 1, x))
        f.images.append(row)
    return f


# -- diagonals -------------------------------------------------------------------


class Diagonal:
    """Diagonal approximation ``R -> R ⊗ R`` with ``G`` acting diagonally.

    ``terms(n, j)`` lists ``(p, a, b, c)``: coefficient ``c`` on the basis
    tensor ``a ⊗ b`` with ``a`` a Z-basis index of ``F_p`` and ``b`` one of
    ``F_{n-p}``.
    """

    def __init__(self, R, degree_max):
        self.resolution = R
        self.degree_max = degree_max
        self._terms = {}
        self._lock = threading.Lock()

    def terms(self, n, j):
        raise NotImplementedError

    def component(self, n, j, p):
        return [(a, b, c) for q, a, b, c in self.terms(n, j) if q == p]

    def apply_tensor(self, n, idx):
        """Diagonal of a Z-basis element as ``{(p, a, b): c}``."""
        R = self.resolution
        N = R.group.order
        j, g = divmod(idx, N)
        t = R.group.table[g]
        out = {}
        for p, a, b, c in self.terms(n, j):
            key = (p, (a // N) * N + t[a % N], (b // N) * N + t[b % N])
            nv = out.get(key, 0) + c
            if nv:
                out[key] = nv
            else:
                del out[key]
        return out

    def check_commutes(self, n):
        """Generators where ``∂Δ != Δ∂`` in ``R ⊗ R``."""
        R = self.resolution
        N = R.group.order
        bad = []
        for j in range(R.ranks[n]):
            if n == 0:
                continue
            lhs = tensor_boundary(R, n, {(p, a, b): c for p, a, b, c in self.terms(n, j)})
            rhs = {}
            for idx, c in R.boundary(n, {j * N: 1}).items():
                add_into(rhs, self.apply_tensor(n - 1, idx), c)
            if lhs != rhs:
                bad.append(j)
        return bad

    def verify(self):
        return [(n, bad) for n in range(1, self.degree_max + 1) if (bad := self.check_commutes(n))]


class AlexanderWhitney(Diagonal):
    """Front-face/back-face diagonal on the bar resolution."""

    def terms(self, n, j):
        key = (n, j)
        if key not in self._terms:
            R = self.resolution
            N = R.group.order
            t = R.group.table
            gs = R.bar_digits(j, n) if n else []
            out = []
            prefix = 0
            for p in range(n + 1):
                a = R.bar_index(gs[:p]) * N
                b = R.bar_index(gs[p:]) * N + prefix
                out.append((p, a, b, 1))
                if p < n:
                    prefix = t[prefix][gs[p]]
            self._terms[key] = out
        return self._terms[key]


class LiftedDiagonal(Diagonal):
    """Diagonal obtained by lifting through the tensor-square homotopy."""

    def terms(self, n, j):
        key = (n, j)
        with self._lock:
            cached = self._terms.get(key)
        if cached is not None:
            return cached
        R = self.resolution
        N = R.group.order
        if n == 0:
            out = [(0, 0, 0, 1)]
        else:
            x = {}
            for idx, c in R.boundary(n, {j * N: 1}).items():
                add_into(x, self.apply_tensor(n - 1, idx), c)
            h = tensor_homotopy(R, n - 1, x)
            out = sorted((p, a, b, c) for (p, a, b), c in h.items())
        with self._lock:
            self._terms.setdefault(key, out)
        return out


def tensor_boundary(R, n, x):
    """``∂(a ⊗ b) = ∂a ⊗ b + (-1)^p a ⊗ ∂b`` on ``(R ⊗ R)_n``."""
    out = {}
    for (p, a, b), c in x.items():
        q = n - p
        if p >= 1:
            for k, v in R.boundary(p, {a: 1}).items():
                add_into(out, {(p - 1, k, b): v}, c)
        if q >= 1:
            s = -c if p % 2 else c
            for k, v in R.boundary(q, {b: 1}).items():
                add_into(out, {(p, a, k): v}, s)
    return out


def tensor_homotopy(R, n, x):
    """``H = h ⊗ 1 + ηε ⊗ h`` on ``(R ⊗ R)_n``, Z-linear."""
    out = {}
    for (p, a, b), c in x.items():
        q = n - p
        for k, v in R.homotopy(p, {a: 1}).items():
            add_into(out, {(p + 1, k, b): v}, c)
        if p == 0:
            for k, v in R.homotopy(q, {b: 1}).items():
                add_into(out, {(0, 0, k): v}, c)
    return out


def diagonal_approximation(R, degree_max):
    """Cached diagonal of ``R``: Alexander-Whitney on bar, lifted otherwise."""
    cache = R.__dict__.setdefault("_diagonals", {})
    kind = "aw" if R.strategy == "bar" else "lift"
    if kind not in cache:
        if kind == "aw":
            cache[kind] = AlexanderWhitney(R, R.horizon)
        else:
            if not R.has_homotopy:
                raise ContextMismatch("lifting a diagonal needs a contracting homotopy")
            cache[kind] = LiftedDiagonal(R, R.horizon)
    if degree_max > R.horizon:
        raise HorizonError("diagonal degree beyond resolution horizon")
    return cache[kind]
