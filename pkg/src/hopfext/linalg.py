"""Exact linear algebra over Q and F_p.

Everything downstream (graded algebras, Galois maps, resolutions, Ext) is
phrased in terms of the operations here: kernels, solves, membership tests
and quotient spaces, all with canonical reduced-echelon bases so that equal
subspaces have identical stored representations.

Values are immutable after construction and safe to share across threads;
all operations are pure.
"""

from . import backend
from .errors import DimensionError, FieldMismatchError


def _check_same_field(a, b):
    if a.field is not b.field:
        raise FieldMismatchError(f"mixed field tags {a.field} and {b.field}")


def _rref(field, rows):
    """Row-reduce a mutable list of lists in place; returns pivot columns."""
    if not rows or not rows[0]:
        return []
    if field.p is None:
        return backend.rref_q(rows)
    return backend.rref_fp(rows, field.p)


class Matrix:
    """Dense matrix with exact entries. Treat instances as immutable."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field, rows, ncols=None):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            if any(len(r) != self.ncols for r in self.rows):
                raise DimensionError("ragged rows")
        else:
            self.ncols = 0 if ncols is None else ncols

    @classmethod
    def identity(cls, field, n):
        zero, one = field.zero(), field.one()
        return cls(field, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field, nrows, ncols):
        zero = field.zero()
        return cls(field, [[zero] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def from_columns(cls, field, cols, nrows=None):
        if not cols:
            return cls.zeros(field, nrows or 0, 0)
        n = len(cols[0]) if nrows is None else nrows
        return cls(field, [[col[i] for col in cols] for i in range(n)], ncols=len(cols))

    def column(self, j):
        return [r[j] for r in self.rows]

    def entry(self, i, j):
        return self.rows[i][j]

    def copy_rows(self):
        return [list(r) for r in self.rows]

    def transpose(self):
        return Matrix(self.field, [[self.rows[i][j] for i in range(self.nrows)]
                                   for j in range(self.ncols)], ncols=self.nrows)

    def __matmul__(self, other):
        _check_same_field(self, other)
        if self.ncols != other.nrows:
            raise DimensionError(f"matmul shape {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        if self.nrows == 0 or other.ncols == 0 or self.ncols == 0:
            return Matrix.zeros(self.field, self.nrows, other.ncols)
        if self.field.p is None:
            rows = backend.mat_mul_q(self.rows, other.rows)
        else:
            rows = backend.mat_mul_fp(self.rows, other.rows, self.field.p)
        return Matrix(self.field, rows, ncols=other.ncols)

    def __add__(self, other):
        _check_same_field(self, other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionError("shape mismatch in add")
        add = self.field.add
        return Matrix(self.field,
                      [[add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
                      ncols=self.ncols)

    def __sub__(self, other):
        _check_same_field(self, other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionError("shape mismatch in sub")
        sub = self.field.sub
        return Matrix(self.field,
                      [[sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
                      ncols=self.ncols)

    def scale(self, scalar):
        mul = self.field.mul
        return Matrix(self.field, [[mul(scalar, x) for x in r] for r in self.rows], ncols=self.ncols)

    def apply(self, vec):
        """Matrix times column vector."""
        if len(vec) != self.ncols:
            raise DimensionError(f"vector length {len(vec)} != {self.ncols} columns")
        add, mul, zero = self.field.add, self.field.mul, self.field.zero()
        out = []
        for row in self.rows:
            acc = zero
            for a, x in zip(row, vec):
                if a and x:
                    acc = add(acc, mul(a, x))
            out.append(acc)
        return out

    def kron(self, other):
        """Kronecker product; index (i,j) of a tensor is i*dim_second + j."""
        _check_same_field(self, other)
        mul = self.field.mul
        zero = self.field.zero()
        rows = []
        for ra in self.rows:
            for rb in other.rows:
                row = []
                for a in ra:
                    if a:
                        row.extend(mul(a, b) if b else zero for b in rb)
                    else:
                        row.extend([zero] * other.ncols)
                rows.append(row)
        return Matrix(self.field, rows, ncols=self.ncols * other.ncols)

    def hstack(self, other):
        _check_same_field(self, other)
        if self.nrows != other.nrows:
            raise DimensionError("hstack row mismatch")
        return Matrix(self.field, [ra + rb for ra, rb in zip(self.rows, other.rows)],
                      ncols=self.ncols + other.ncols)

    def vstack(self, other):
        _check_same_field(self, other)
        if self.ncols != other.ncols:
            raise DimensionError("vstack column mismatch")
        return Matrix(self.field, self.copy_rows() + other.copy_rows(), ncols=self.ncols)

    def rref(self):
        rows = self.copy_rows()
        pivots = _rref(self.field, rows)
        return Matrix(self.field, rows, ncols=self.ncols), pivots

    def rank(self):
        rows = self.copy_rows()
        return len(_rref(self.field, rows))

    def kernel(self):
        """Right null space with canonical echelon basis."""
        rows = self.copy_rows()
        pivots = _rref(self.field, rows)
        pivot_set = set(pivots)
        free_cols = [c for c in range(self.ncols) if c not in pivot_set]
        zero, one = self.field.zero(), self.field.one()
        neg = self.field.neg
        basis = []
        for f in free_cols:
            v = [zero] * self.ncols
            v[f] = one
            for i, pc in enumerate(pivots):
                if rows[i][f]:
                    v[pc] = neg(rows[i][f])
            basis.append(v)
        return Subspace(self.field, self.ncols, basis)

    def solve(self, b):
        """One solution of self @ x = b, or None.

        Deterministic: free variables are set to zero under the canonical
        echelon pivoting.
        """
        if len(b) != self.nrows:
            raise DimensionError(f"rhs length {len(b)} != {self.nrows} rows")
        sols = self.solve_matrix(Matrix.from_columns(self.field, [list(b)], nrows=self.nrows))
        if sols is None:
            return None
        return sols.column(0)

    def solve_matrix(self, B):
        """Solve self @ X = B for all columns at once; None if inconsistent."""
        _check_same_field(self, B)
        if B.nrows != self.nrows:
            raise DimensionError("rhs row mismatch")
        aug = [list(r) + list(br) for r, br in zip(self.rows, B.rows)]
        if not aug:
            # no equations: take X = 0
            return Matrix.zeros(self.field, self.ncols, B.ncols)
        pivots = _rref(self.field, aug)
        for pc in pivots:
            if pc >= self.ncols:
                return None
        zero = self.field.zero()
        X = [[zero] * B.ncols for _ in range(self.ncols)]
        for i, pc in enumerate(pivots):
            X[pc] = aug[i][self.ncols:]
        return Matrix(self.field, X, ncols=B.ncols)

    def inverse(self):
        if self.nrows != self.ncols:
            raise DimensionError("inverse of a non-square matrix")
        inv = self.solve_matrix(Matrix.identity(self.field, self.nrows))
        if inv is None or self.rank() != self.nrows:
            return None
        return inv

    def column_space(self):
        return Subspace(self.field, self.nrows, [self.column(j) for j in range(self.ncols)])

    def is_zero(self):
        return all(not x for r in self.rows for x in r)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field is other.field
                and self.nrows == other.nrows and self.ncols == other.ncols
                and self.rows == other.rows)

    def __repr__(self):
        return f"Matrix({self.field}, {self.nrows}x{self.ncols})"


class Subspace:
    """Subspace of k^n stored by its canonical reduced-echelon basis.

    Two equal subspaces have identical stored bases, so equality of spans is
    representation equality.
    """

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field, ambient, vectors):
        self.field = field
        self.ambient = ambient
        rows = [list(v) for v in vectors]
        for v in rows:
            if len(v) != ambient:
                raise DimensionError(f"vector length {len(v)} != ambient {ambient}")
        pivots = _rref(field, rows)
        self.basis = tuple(tuple(rows[i]) for i in range(len(pivots)))
        self.pivots = tuple(pivots)

    @property
    def dim(self):
        return len(self.basis)

    def reduce(self, vec):
        """Residue of vec after eliminating the pivot coordinates.

        Zero exactly when vec lies in the subspace.
        """
        if len(vec) != self.ambient:
            raise DimensionError(f"vector length {len(vec)} != ambient {self.ambient}")
        sub, mul = self.field.sub, self.field.mul
        v = list(vec)
        for brow, pc in zip(self.basis, self.pivots):
            f = v[pc]
            if f:
                for j in range(pc, self.ambient):
                    if brow[j]:
                        v[j] = sub(v[j], mul(f, brow[j]))
        return v

    def contains(self, vec):
        return not any(self.reduce(vec))

    def coordinates(self, vec):
        """Coefficients of vec in the stored basis, or None if outside."""
        v = list(vec)
        coords = []
        sub, mul = self.field.sub, self.field.mul
        for brow, pc in zip(self.basis, self.pivots):
            f = v[pc]
            coords.append(f)
            if f:
                for j in range(pc, self.ambient):
                    if brow[j]:
                        v[j] = sub(v[j], mul(f, brow[j]))
        if any(v):
            return None
        return coords

    def sum(self, other):
        _check_same_field(self, other)
        if self.ambient != other.ambient:
            raise DimensionError("ambient mismatch")
        return Subspace(self.field, self.ambient, list(self.basis) + list(other.basis))

    def intersect(self, other):
        _check_same_field(self, other)
        if self.ambient != other.ambient:
            raise DimensionError("ambient mismatch")
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.field, self.ambient, [])
        # columns: coefficients (c, d) with sum c_i u_i - sum d_j v_j = 0
        cols = [list(b) for b in self.basis] + [[self.field.neg(x) for x in b] for b in other.basis]
        stacked = Matrix.from_columns(self.field, cols, nrows=self.ambient)
        vecs = []
        for kv in stacked.kernel().basis:
            coeffs = kv[: self.dim]
            vec = [self.field.zero()] * self.ambient
            for c, b in zip(coeffs, self.basis):
                if c:
                    for j, x in enumerate(b):
                        if x:
                            vec[j] = self.field.add(vec[j], self.field.mul(c, x))
            vecs.append(vec)
        return Subspace(self.field, self.ambient, vecs)

    def matrix(self):
        return Matrix(self.field, [list(b) for b in self.basis], ncols=self.ambient)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.field is other.field
                and self.ambient == other.ambient and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of k^{self.ambient})"


class QuotientSpace:
    """k^n / S with an explicit projection/section pair.

    projection @ section = identity on the quotient and ker(projection) = S.
    """

    __slots__ = ("field", "ambient", "killed", "projection", "section", "dim")

    def __init__(self, field, ambient, killed, projection, section):
        self.field = field
        self.ambient = ambient
        self.killed = killed
        self.projection = projection
        self.section = section
        self.dim = projection.nrows

    def project(self, vec):
        return self.projection.apply(vec)

    def lift(self, qvec):
        return self.section.apply(qvec)

    def __repr__(self):
        return f"QuotientSpace(k^{self.ambient} -> k^{self.dim})"


def kernel(m):
    """Right null space of a matrix, canonical echelon basis."""
    return m.kernel()


def solve(m, b):
    return m.solve(b)


def membership(s, v):
    return s.contains(v)


def quotient(ambient, s):
    """Quotient of k^ambient by the subspace s.

    The quotient coordinates are the non-pivot coordinates of the reduced
    form, which makes the section the coordinate embedding.
    """
    if s.ambient != ambient:
        raise DimensionError(f"subspace ambient {s.ambient} != {ambient}")
    field = s.field
    pivot_set = set(s.pivots)
    free_cols = [c for c in range(ambient) if c not in pivot_set]
    zero, one = field.zero(), field.one()
    proj_rows = []
    for _ in free_cols:
        proj_rows.append([zero] * ambient)
    for j in range(ambient):
        e = [zero] * ambient
        e[j] = one
        w = s.reduce(e)
        for i, f in enumerate(free_cols):
            proj_rows[i][j] = w[f]
    section_rows = [[zero] * len(free_cols) for _ in range(ambient)]
    for i, f in enumerate(free_cols):
        section_rows[f][i] = one
    projection = Matrix(field, proj_rows, ncols=ambient)
    section = Matrix(field, section_rows, ncols=len(free_cols))
    return QuotientSpace(field, ambient, s, projection, section)


def span_matrix(field, vectors, ambient):
    """Matrix whose rows span the same space, in canonical echelon form."""
    return Subspace(field, ambient, vectors).matrix()


def zero_vector(field, n):
    return [field.zero()] * n


def unit_vector(field, n, i):
    v = [field.zero()] * n
    v[i] = field.one()
    return v


def vec_add(field, u, v):
    add = field.add
    return [add(a, b) for a, b in zip(u, v)]


def vec_sub(field, u, v):
    sub = field.sub
    return [sub(a, b) for a, b in zip(u, v)]


def vec_scale(field, c, v):
    mul = field.mul
    return [mul(c, x) for x in v]


def vec_is_zero(v):
    return not any(v)
