"""Smith normal form and the integer linear algebra built on it."""

from fractions import Fraction
from math import gcd

from . import kernels
from .matrix import IntMatrix, RatMatrix


class SingularMatrixError(ValueError):
    pass


def xgcd(a, b):
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


class SmithDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form.

    The transforms are kept as an operation log so large sparse inputs never
    materialize dense ``U``/``V``; use :meth:`apply_u` and friends for vectors.
    The matrix attributes ``U``, ``D``, ``V`` are built on first access.
    """

    def __init__(self, shape, diagonal, ops, row_perm, col_perm):
        self.shape = shape
        self.diagonal = diagonal
        self.rank = len(diagonal)
        self._row_ops = [op for op in ops if op[0] in (0, 2)]
        self._col_ops = [op for op in ops if op[0] in (1, 3)]
        self.row_perm = row_perm
        self.col_perm = col_perm
        self._row_pos = {r: i for i, r in enumerate(row_perm)}
        self._cache = {}

    def apply_u(self, vec):
        z = list(vec)
        kernels.replay_rows(self._row_ops, z)
        return [z[r] for r in self.row_perm]

    def apply_u_inverse(self, vec):
        z = [0] * self.shape[0]
        for i, r in enumerate(self.row_perm):
            z[r] = vec[i]
        return kernels.replay_rows_inverse(self._row_ops, z)

    def apply_v(self, vec):
        z = [0] * self.shape[1]
        for i, c in enumerate(self.col_perm):
            z[c] = vec[i]
        return kernels.replay_cols(self._col_ops, z)

    def u_inverse_column(self, i):
        e = [0] * self.shape[0]
        e[i] = 1
        return self.apply_u_inverse(e)

    def _columns(self, n, fn):
        data = {}
        for j in range(n):
            e = [0] * n
            e[j] = 1
            for i, v in enumerate(fn(e)):
                if v:
                    data.setdefault(i, {})[j] = v
        return IntMatrix.from_dict_rows(n, n, data)

    @property
    def U(self):
        if "U" not in self._cache:
            self._cache["U"] = self._columns(self.shape[0], self.apply_u)
        return self._cache["U"]

    @property
    def V(self):
        if "V" not in self._cache:
            self._cache["V"] = self._columns(self.shape[1], self.apply_v)
        return self._cache["V"]

    @property
    def U_inverse(self):
        if "Ui" not in self._cache:
            self._cache["Ui"] = self._columns(self.shape[0], self.apply_u_inverse)
        return self._cache["Ui"]

    @property
    def D(self):
        return IntMatrix.diagonal(self.diagonal, *self.shape)

    def invariant_factors(self):
        return [d for d in self.diagonal if d != 1]


def smith_normal_form(A):
    """Smith decomposition of an :class:`IntMatrix` (any shape, total)."""
    m, n = A.shape
    ops, pivots = kernels.eliminate(A.row_dicts(), n)
    piv = [list(p) for p in pivots]
    units = [p for p in piv if p[2] == 1]
    rest = [p for p in piv if p[2] != 1]
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            r1, c1, a = rest[i]
            r2, c2, b = rest[j]
            if b % a == 0:
                continue
            g, x, y = xgcd(a, b)
            ops.append((0, r2, [(r1, -1)]))
            ops.append((3, c1, c2, x, -(b // g), y, a // g))
            ops.append((0, r1, [(r2, y * b // g)]))
            rest[i][2] = g
            rest[j][2] = a * b // g
    rest.sort(key=lambda p: p[2])
    ordered = units + rest
    prow = {p[0] for p in ordered}
    pcol = {p[1] for p in ordered}
    row_perm = [p[0] for p in ordered] + [r for r in range(m) if r not in prow]
    col_perm = [p[1] for p in ordered] + [c for c in range(n) if c not in pcol]
    return SmithDecomposition((m, n), [p[2] for p in ordered], ops, row_perm, col_perm)


def solve_integer(A, b, snf=None):
    """Some integer ``x`` with ``A @ x == b``, or ``None`` if none exists."""
    if len(b) != A.rows:
        raise ValueError("dimension mismatch")
    snf = snf or smith_normal_form(A)
    y = snf.apply_u(b)
    sol = [0] * A.cols
    for i, d in enumerate(snf.diagonal):
        if y[i] % d:
            return None
        sol[i] = y[i] // d
    if any(y[snf.rank:]):
        return None
    return snf.apply_v(sol)


class Cokernel:
    """``coker(A) = Z^rows / im(A)`` as ``(+) Z/d_i (+) Z^free_rank``."""

    def __init__(self, A, snf=None):
        self.matrix = A
        self.snf = snf or smith_normal_form(A)
        diag = self.snf.diagonal
        self._torsion_pos = [i for i, d in enumerate(diag) if d != 1]
        self.invariant_factors = [diag[i] for i in self._torsion_pos]
        self._free_pos = list(range(self.snf.rank, A.rows))
        self.free_rank = len(self._free_pos)

    def project(self, vec):
        """Coordinates ``(torsion residues, free integers)`` of an ambient vector."""
        y = self.snf.apply_u(vec)
        tors = [y[i] % d for i, d in zip(self._torsion_pos, self.invariant_factors)]
        free = [y[i] for i in self._free_pos]
        return tors, free

    def project_torsion(self, vec):
        return self.project(vec)[0]

    def lift(self, torsion, free=()):
        """An ambient vector projecting to the given coordinates."""
        y = [0] * self.matrix.rows
        for i, v in zip(self._torsion_pos, torsion):
            y[i] = v
        for i, v in zip(self._free_pos, free):
            y[i] = v
        return self.snf.apply_u_inverse(y)

    def generator(self, k):
        """Ambient lift of the ``k``-th torsion generator."""
        e = [0] * len(self.invariant_factors)
        e[k] = 1
        return self.lift(e)


def cokernel_presentation(A):
    return Cokernel(A)


def rational_inverse(A):
    """Exact inverse of a square nonsingular integer matrix as a RatMatrix."""
    if A.rows != A.cols:
        raise SingularMatrixError("non-square matrix")
    n = A.rows
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A.to_rows())]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise SingularMatrixError("determinant is zero")
        a[k], a[piv] = a[piv], a[k]
        inv = 1 / a[k][k]
        a[k] = [v * inv for v in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return RatMatrix([row[n:] for row in a], cols=n)


def lattice_kernel(A):
    """Integer basis (list of vectors) of ``{x : A @ x == 0}``."""
    snf = smith_normal_form(A)
    basis = []
    for i in range(snf.rank, A.cols):
        e = [0] * A.cols
        e[i] = 1
        basis.append(snf.apply_v(e))
    return basis


def content(vec):
    g = 0
    for v in vec:
        g = gcd(g, v)
    return g
