"""Cohomology of a finite group from a free resolution.

Cochains ``Hom_G(F_n, A)`` are vectors indexed by the generators of ``F_n``;
``δ^n`` is the transposed augmented boundary.  Three coefficient systems:

* ``"Z"``: ``H^n`` for ``n >= 1`` is the torsion of ``coker δ^{n-1}``; the
  kernel of ``δ^n`` is saturated, so no second Smith form is needed.
* ``m`` (an integer, or ``"Z/m"``): computed on the lattice of cochains that
  are cocycles modulo ``m``.
* ``"QmodZ"``: for ``n >= 1`` presented through the Bockstein isomorphism
  onto ``H^{n+1}(G; Z)``; cochains hold :class:`Fraction` values in ``[0, 1)``.
"""

import threading
from fractions import Fraction

from ..abgrp import AbElement, FiniteAbelianGroup, QmodZ
from ..errors import ContextMismatch, HorizonError, NoSolution
from ..exactlin import Cokernel, IntMatrix, lattice_kernel, smith_normal_form, solve_integer

_lock = threading.Lock()


def parse_coeffs(coeffs):
    if coeffs in (None, "Z", "z", 0):
        return "Z"
    if coeffs in ("QmodZ", "qz", "Q/Z", "QZ"):
        return "QmodZ"
    if isinstance(coeffs, str) and coeffs.upper().startswith("Z/"):
        coeffs = coeffs[2:]
    if isinstance(coeffs, str) and coeffs.isdigit():
        coeffs = int(coeffs)
    if isinstance(coeffs, int) and coeffs >= 2:
        return coeffs
    raise ValueError(f"unknown coefficients {coeffs!r}")


def frac_mod1(v):
    v = Fraction(v)
    return v - (v.numerator // v.denominator)


class CohomologyGroup:
    """``H^n(G; A)`` computed on a resolution ``R``."""

    def __init__(self, R, n, coeffs="Z"):
        coeffs = parse_coeffs(coeffs)
        if n < 0:
            raise HorizonError("negative degree")
        if n + 1 > R.horizon:
            raise HorizonError(f"H^{n} needs horizon >= {n + 1}, resolution has {R.horizon}")
        self.resolution = R
        self.degree = n
        self.coeffs = coeffs
        self.free_rank = 0
        self.rank = R.ranks[n]
        if coeffs == "Z":
            self._init_z()
        elif coeffs == "QmodZ":
            if n == 0:
                raise HorizonError("H^0(G; Q/Z) = Q/Z is not finite")
            if n + 2 > R.horizon:
                raise HorizonError(f"H^{n}(G; Q/Z) needs horizon >= {n + 2}")
            self._shadow = cohomology(R, n + 1, "Z")
            self.group = self._shadow.group
        else:
            self._init_mod(coeffs)

    def __repr__(self):
        return f"H^{self.degree}({self.resolution.group.name}; {self.coeffs}) = {self.group}"

    # -- integral ----------------------------------------------------------

    def _init_z(self):
        R, n = self.resolution, self.degree
        if n == 0:
            # H^0 = kernel of δ^0; never torsion
            self.group = FiniteAbelianGroup()
            self.free_rank = len(lattice_kernel(R.coboundary_matrix(0)))
            self._coker = None
            return
        # H^n of a finite group is finite for n >= 1, so the free rank is 0
        self._coker = Cokernel(R.coboundary_matrix(n - 1))
        self.group = FiniteAbelianGroup(self._coker.invariant_factors, _checked=True)

    # -- modulo m ------------------------------------------------------------

    def _init_mod(self, m):
        R, n = self.resolution, self.degree
        r = R.ranks[n]
        d_next = R.coboundary_matrix(n)
        # lattice of integer cochains whose coboundary vanishes mod m
        big = d_next.hstack(IntMatrix.diagonal([m] * d_next.rows))
        span = [v[:r] for v in lattice_kernel(big)]
        S = IntMatrix.from_rows([list(c) for c in zip(*span)], cols=len(span))
        snf = smith_normal_form(S)
        if snf.rank != r:
            raise NoSolution("mod-m cocycle lattice is not of full rank")
        self._lat = snf
        # relations: coboundaries and m * (all cochains), in lattice coordinates
        gens = []
        if n >= 1:
            prev = R.coboundary_matrix(n - 1)
            for j in range(prev.cols):
                gens.append(prev.column(j))
        for i in range(r):
            e = [0] * r
            e[i] = m
            gens.append(e)
        cols = [self._lattice_coords(g) for g in gens]
        C = IntMatrix.from_rows([list(c) for c in zip(*cols)], cols=len(cols))
        self._coker = Cokernel(C)
        self.group = FiniteAbelianGroup(self._coker.invariant_factors, _checked=True)

    def _lattice_coords(self, vec):
        y = self._lat.apply_u(list(vec))
        out = []
        for i, d in enumerate(self._lat.diagonal):
            q, rem = divmod(y[i], d)
            if rem:
                raise ValueError("vector outside the cocycle lattice")
            out.append(q)
        return out

    def _from_lattice_coords(self, c):
        y = [0] * self.rank
        for i, d in enumerate(self._lat.diagonal):
            y[i] = c[i] * d
        return self._lat.apply_u_inverse(y)

    # -- interface -----------------------------------------------------------

    def coboundary(self, cochain):
        """``δ`` of a cochain (integers or fractions), unreduced."""
        return self.resolution.coboundary_matrix(self.degree).apply(list(cochain))

    def is_cocycle(self, cochain):
        d = self.coboundary(cochain)
        if self.coeffs == "Z":
            return not any(d)
        if self.coeffs == "QmodZ":
            return all(Fraction(v).denominator == 1 for v in d)
        return all(v % self.coeffs == 0 for v in d)

    def normalize(self, cochain):
        if len(cochain) != self.rank:
            raise ValueError(f"cochain of length {len(cochain)}, expected {self.rank}")
        if self.coeffs == "Z":
            return tuple(int(v) for v in cochain)
        if self.coeffs == "QmodZ":
            return tuple(frac_mod1(QmodZ(v).value if isinstance(v, QmodZ) else v)
                         for v in cochain)
        return tuple(int(v) % self.coeffs for v in cochain)

    def project(self, cochain, check=True):
        """Class of a cocycle as an element of :attr:`group`."""
        z = self.normalize(cochain)
        if check and not self.is_cocycle(z):
            raise ValueError(f"not a cocycle in degree {self.degree}")
        if self.coeffs == "Z":
            if self._coker is None:
                return self.group.zero()
            return AbElement(self.group, self._coker.project_torsion(list(z)))
        if self.coeffs == "QmodZ":
            return self._shadow.project(bockstein_cochain(self.resolution, self.degree, z),
                                        check=False)
        return AbElement(self.group, self._coker.project_torsion(self._lattice_coords(z)))

    def representative(self, x):
        """A cocycle representing the class ``x``."""
        if not isinstance(x, AbElement):
            x = self.group(x)
        if x.parent != self.group:
            raise ContextMismatch("class from a different cohomology group")
        if self.coeffs == "Z":
            if self._coker is None:
                return (0,) * self.rank
            return tuple(self._coker.lift(list(x.coords)))
        if self.coeffs == "QmodZ":
            y = self._shadow.representative(x)
            return bockstein_inverse_cochain(self.resolution, self.degree + 1, y, x.order())
        c = self._coker.lift(list(x.coords))
        return self.normalize(self._from_lattice_coords(c))

    def element(self, cochain, check=True):
        z = self.normalize(cochain)
        return CohomologyElement(self, z, self.project(z, check=check))

    def from_class(self, x):
        if not isinstance(x, AbElement):
            x = self.group(x)
        return CohomologyElement(self, self.representative(x), x)

    def zero(self):
        return self.from_class(self.group.zero())

    def generators(self):
        return [self.from_class(g) for g in self.group.gens()]

    def elements(self):
        for x in self.group.elements():
            yield self.from_class(x)


class CohomologyElement:
    """A cocycle together with its class in a :class:`CohomologyGroup`."""

    __slots__ = ("parent", "cochain", "cls")

    def __init__(self, parent, cochain, cls):
        self.parent = parent
        self.cochain = cochain
        self.cls = cls

    @property
    def degree(self):
        return self.parent.degree

    @property
    def coeffs(self):
        return self.parent.coeffs

    @property
    def resolution(self):
        return self.parent.resolution

    def _check(self, other):
        if not isinstance(other, CohomologyElement) or other.parent is not self.parent:
            raise ContextMismatch("elements of different cohomology groups")

    def __add__(self, other):
        self._check(other)
        z = self.parent.normalize([a + b for a, b in zip(self.cochain, other.cochain)])
        return CohomologyElement(self.parent, z, self.cls + other.cls)

    def __neg__(self):
        z = self.parent.normalize([-a for a in self.cochain])
        return CohomologyElement(self.parent, z, -self.cls)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        z = self.parent.normalize([k * a for a in self.cochain])
        return CohomologyElement(self.parent, z, k * self.cls)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, CohomologyElement) and other.parent is self.parent
                and other.cls == self.cls)

    def __hash__(self):
        return hash((id(self.parent), self.cls))

    def is_zero(self):
        return self.cls.is_zero()

    def order(self):
        return self.cls.order()

    def __repr__(self):
        return f"<class {list(self.cls.coords)} in {self.parent!r}>"


def cohomology(R, n, coeffs="Z"):
    """Cached :class:`CohomologyGroup` ``H^n`` of ``R``'s group."""
    key = (n, parse_coeffs(coeffs))
    with _lock:
        cache = R.__dict__.setdefault("_cohomology", {})
    if key not in cache:
        H = CohomologyGroup(R, n, key[1])
        with _lock:
            cache.setdefault(key, H)
    return cache[key]


# -- Bockstein -----------------------------------------------------------------


def bockstein_cochain(R, n, cochain):
    """Integral ``(n+1)``-cochain ``δ(lift)`` of a Q/Z ``n``-cocycle."""
    lifted = [frac_mod1(v) for v in cochain]
    out = R.coboundary_matrix(n).apply(lifted)
    for v in out:
        if Fraction(v).denominator != 1:
            raise ValueError("cochain is not a Q/Z cocycle")
    return tuple(int(v) for v in out)


def bockstein_inverse_cochain(R, n, cocycle, order):
    """A Q/Z ``(n-1)``-cochain whose Bockstein is ``cocycle``.

    ``order`` annihilates the class, so ``order * cocycle = δu`` is solvable.
    """
    target = [order * v for v in cocycle]
    snf = cohomology(R, n, "Z")._coker.snf
    u = solve_integer(R.coboundary_matrix(n - 1), target, snf=snf)
    if u is None:
        raise NoSolution(f"Bockstein inverse: {order} * cocycle is not a coboundary")
    return tuple(frac_mod1(Fraction(v, order)) for v in u)


def bockstein(x):
    """``β : H^n(G; Q/Z) -> H^{n+1}(G; Z)``."""
    if x.coeffs != "QmodZ":
        raise ContextMismatch("Bockstein takes a Q/Z class")
    R, n = x.resolution, x.degree
    target = cohomology(R, n + 1, "Z")
    return target.element(bockstein_cochain(R, n, x.cochain))


def bockstein_inverse(y):
    """``β^{-1} : H^n(G; Z) -> H^{n-1}(G; Q/Z)`` for ``n >= 2``."""
    if y.coeffs != "Z":
        raise ContextMismatch("Bockstein inverse takes an integral class")
    if y.degree < 2:
        raise HorizonError("Bockstein inverse is defined from degree 2")
    R, n = y.resolution, y.degree
    src = cohomology(R, n - 1, "QmodZ")
    z = bockstein_inverse_cochain(R, n, y.cochain, y.order())
    return CohomologyElement(src, z, y.cls)
