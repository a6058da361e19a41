"""Exact integer and rational matrices.

IntMatrix keeps a dense list-of-lists when the matrix is small and a
dict-of-rows sparse store otherwise.  Both compare equal entrywise, and
neither is ever mutated after construction.
"""

from fractions import Fraction
import json

DENSE_LIMIT = 10_000


class IntMatrix:
    """Immutable arbitrary-precision integer matrix."""

    __slots__ = ("rows", "cols", "_dense", "_sparse")

    def __init__(self, rows, cols, dense=None, sparse=None):
        self.rows = rows
        self.cols = cols
        self._dense = dense
        self._sparse = sparse

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_rows(cls, data, cols=None):
        data = [[int(v) for v in row] for row in data]
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != cols:
                raise ValueError("ragged rows")
        if rows * cols < DENSE_LIMIT:
            return cls(rows, cols, dense=data)
        sparse = {}
        for i, row in enumerate(data):
            r = {j: v for j, v in enumerate(row) if v}
            if r:
                sparse[i] = r
        return cls(rows, cols, sparse=sparse)

    @classmethod
    def from_dict_rows(cls, rows, cols, data):
        """Build from ``{i: {j: v}}``; zero values are dropped."""
        clean = {}
        for i, r in data.items():
            if not 0 <= i < rows:
                raise IndexError(f"row {i} out of range")
            rr = {}
            for j, v in r.items():
                if not 0 <= j < cols:
                    raise IndexError(f"column {j} out of range")
                if v:
                    rr[j] = int(v)
            if rr:
                clean[i] = rr
        if rows * cols < DENSE_LIMIT:
            dense = [[0] * cols for _ in range(rows)]
            for i, r in clean.items():
                for j, v in r.items():
                    dense[i][j] = v
            return cls(rows, cols, dense=dense)
        return cls(rows, cols, sparse=clean)

    @classmethod
    def from_triplets(cls, rows, cols, triplets):
        data = {}
        for i, j, v in triplets:
            row = data.setdefault(i, {})
            row[j] = row.get(j, 0) + int(v)
        return cls.from_dict_rows(rows, cols, data)

    @classmethod
    def zeros(cls, rows, cols):
        return cls.from_dict_rows(rows, cols, {})

    @classmethod
    def identity(cls, n):
        return cls.from_dict_rows(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def diagonal(cls, values, rows=None, cols=None):
        n = len(values)
        rows = n if rows is None else rows
        cols = n if cols is None else cols
        return cls.from_dict_rows(rows, cols, {i: {i: v} for i, v in enumerate(values)})

    # -- access ---------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def is_sparse(self):
        return self._sparse is not None

    def __getitem__(self, key):
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols} matrix")
        if self._dense is not None:
            return self._dense[i][j]
        return self._sparse.get(i, {}).get(j, 0)

    def row_dicts(self):
        """Fresh ``[{col: value}]`` copy, one dict per row (zeros omitted)."""
        if self._dense is not None:
            return [{j: v for j, v in enumerate(row) if v} for row in self._dense]
        out = [dict() for _ in range(self.rows)]
        for i, r in self._sparse.items():
            out[i] = dict(r)
        return out

    def triplets(self):
        """Coordinate-sorted ``(i, j, v)`` for all nonzero entries."""
        out = []
        if self._dense is not None:
            for i, row in enumerate(self._dense):
                for j, v in enumerate(row):
                    if v:
                        out.append((i, j, v))
            return out
        for i in sorted(self._sparse):
            r = self._sparse[i]
            for j in sorted(r):
                out.append((i, j, r[j]))
        return out

    def to_rows(self):
        if self._dense is not None:
            return [list(r) for r in self._dense]
        out = [[0] * self.cols for _ in range(self.rows)]
        for i, r in self._sparse.items():
            for j, v in r.items():
                out[i][j] = v
        return out

    @property
    def nnz(self):
        return len(self.triplets()) if self._dense is not None else sum(
            len(r) for r in self._sparse.values())

    def column(self, j):
        return [self[i, j] for i in range(self.rows)]

    # -- algebra --------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.triplets() == other.triplets()

    def __hash__(self):
        return hash((self.shape, tuple(self.triplets())))

    def transpose(self):
        data = {}
        for i, j, v in self.triplets():
            data.setdefault(j, {})[i] = v
        return IntMatrix.from_dict_rows(self.cols, self.rows, data)

    T = property(transpose)

    def __neg__(self):
        return IntMatrix.from_triplets(self.rows, self.cols,
                                       [(i, j, -v) for i, j, v in self.triplets()])

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix.from_triplets(self.rows, self.cols,
                                       self.triplets() + other.triplets())

    def __sub__(self, other):
        return self + (-other)

    def apply(self, vec):
        """Matrix-vector product with an integer sequence."""
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        out = [0] * self.rows
        if self._dense is not None:
            for i, row in enumerate(self._dense):
                out[i] = sum(a * b for a, b in zip(row, vec) if a)
        else:
            for i, r in self._sparse.items():
                out[i] = sum(v * vec[j] for j, v in r.items())
        return out

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            left = self.row_dicts()
            right = other.row_dicts()
            data = {}
            for i, r in enumerate(left):
                acc = {}
                for k, a in r.items():
                    for j, b in right[k].items():
                        acc[j] = acc.get(j, 0) + a * b
                if acc:
                    data[i] = acc
            return IntMatrix.from_dict_rows(self.rows, other.cols, data)
        return self.apply(list(other))

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        trip = self.triplets() + [(i, j + self.cols, v) for i, j, v in other.triplets()]
        return IntMatrix.from_triplets(self.rows, self.cols + other.cols, trip)

    def determinant(self):
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_rows()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for r in range(k + 1, n):
                    if a[r][k]:
                        a[k], a[r] = a[r], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_symmetric(self):
        return self.rows == self.cols and self == self.transpose()

    # -- serialization --------------------------------------------------

    def to_json_obj(self):
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[i, j, str(v)] for i, j, v in self.triplets()]}

    def to_json(self):
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj):
        return cls.from_triplets(obj["rows"], obj["cols"],
                                 [(int(i), int(j), int(v)) for i, j, v in obj["entries"]])

    @classmethod
    def from_json(cls, text):
        return cls.from_json_obj(json.loads(text))

    def __repr__(self):
        if self.rows * self.cols <= 64:
            return f"IntMatrix({self.to_rows()})"
        kind = "sparse" if self.is_sparse else "dense"
        return f"<IntMatrix {self.rows}x{self.cols} {kind} nnz={self.nnz}>"


class RatMatrix:
    """Dense exact rational matrix; entries are reduced ``Fraction`` objects."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data, cols=None):
        self._data = [[Fraction(v) for v in row] for row in data]
        self.rows = len(self._data)
        self.cols = cols if cols is not None else (len(self._data[0]) if self._data else 0)

    @classmethod
    def from_int(cls, m):
        return cls(m.to_rows(), cols=m.cols)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, key):
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols} matrix")
        return self._data[i][j]

    def to_rows(self):
        return [list(r) for r in self._data]

    def __eq__(self, other):
        if isinstance(other, IntMatrix):
            other = RatMatrix.from_int(other)
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            other = RatMatrix.from_int(other)
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        b = other._data
        out = [[sum((row[k] * b[k][j] for k in range(self.cols)), Fraction(0))
                for j in range(other.cols)] for row in self._data]
        return RatMatrix(out, cols=other.cols)

    def __rmatmul__(self, other):
        return RatMatrix.from_int(other) @ self

    def __mul__(self, scalar):
        return RatMatrix([[v * scalar for v in row] for row in self._data], cols=self.cols)

    __rmul__ = __mul__

    def is_integral(self):
        return all(v.denominator == 1 for row in self._data for v in row)

    def to_int(self):
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return IntMatrix.from_rows([[int(v) for v in row] for row in self._data], cols=self.cols)

    def __repr__(self):
        return f"RatMatrix({[[str(v) for v in row] for row in self._data]})"
