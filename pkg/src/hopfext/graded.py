"""Graded algebras and modules by exact structure constants.

Objects live in a truncation window: degrees 0..d_max are certified, and a
`complete` flag records when the object is honestly zero above the window
(finite-dimensional algebras) rather than unknown there. Every operation
refuses to read degrees it cannot certify.

Conventions: modules are right modules; tensor coordinates are row-major
(index of u (x) v is u * dim_v + v); a graded map of shift s sends degree d
to degree d + s.
"""

from .errors import DimensionError, MathFailure, TruncationError
from .linalg import Matrix, Subspace, quotient, unit_vector, vec_add, vec_scale, zero_vector


class GradedVectorSpace:
    __slots__ = ("field", "dims", "complete")

    def __init__(self, field, dims, complete=False):
        self.field = field
        self.dims = tuple(int(d) for d in dims)
        self.complete = complete

    @property
    def d_max(self):
        return len(self.dims) - 1

    def dim(self, d):
        if d < 0:
            return 0
        if d <= self.d_max:
            return self.dims[d]
        if self.complete:
            return 0
        raise TruncationError(f"degree {d} outside certified window 0..{self.d_max}")

    def visible(self, d):
        return d < 0 or d <= self.d_max or self.complete

    def total_dim(self):
        return sum(self.dims)

    def __repr__(self):
        star = "" if self.complete else "+?"
        return f"GradedVectorSpace{self.dims}{star}"


class GradedAlgebra:
    """Nonnegatively graded algebra given by multiplication tensors.

    mult[(i, j)] is the matrix of A_i (x) A_j -> A_{i+j}; missing tensors are
    zero maps (legal only when the target dimension is 0).
    """

    def __init__(self, space, unit, mult, name="A"):
        self.space = space
        self.unit = list(unit)
        self.mult = dict(mult)
        self.name = name
        if len(self.unit) != space.dim(0):
            raise DimensionError("unit vector has wrong length")

    @property
    def field(self):
        return self.space.field

    @property
    def d_max(self):
        return self.space.d_max

    @property
    def complete(self):
        return self.space.complete

    def dim(self, d):
        return self.space.dim(d)

    def visible(self, d):
        return self.space.visible(d)

    def mult_matrix(self, i, j):
        m = self.mult.get((i, j))
        if m is None:
            if not (self.space.visible(i + j)):
                raise TruncationError(f"product degree {i + j} outside window of {self.name}")
            return Matrix.zeros(self.field, self.dim(i + j), self.dim(i) * self.dim(j))
        return m

    def multiply(self, i, j, x, y):
        tdim = self.dim(i + j)
        if tdim == 0:
            return []
        m = self.mult_matrix(i, j)
        add, mul = self.field.add, self.field.mul
        out = zero_vector(self.field, tdim)
        dj = self.dim(j)
        for s, xs in enumerate(x):
            if not xs:
                continue
            for t, yt in enumerate(y):
                if not yt:
                    continue
                col = s * dj + t
                c = mul(xs, yt)
                for u in range(tdim):
                    e = m.rows[u][col]
                    if e:
                        out[u] = add(out[u], mul(c, e))
        return out

    def right_mult_matrix(self, i, j, y):
        """Matrix of (x in A_i) -> x*y for a fixed y in A_j."""
        tdim = self.dim(i + j)
        sdim = self.dim(i)
        m = self.mult_matrix(i, j)
        dj = self.dim(j)
        cols = []
        for s in range(sdim):
            x = unit_vector(self.field, sdim, s)
            col = zero_vector(self.field, tdim)
            for t, yt in enumerate(y):
                if yt:
                    c = m.column(s * dj + t)
                    col = vec_add(self.field, col, vec_scale(self.field, yt, c))
            cols.append(col)
        return Matrix.from_columns(self.field, cols, nrows=tdim)

    def left_mult_matrix(self, i, j, x):
        """Matrix of (y in A_j) -> x*y for a fixed x in A_i."""
        tdim = self.dim(i + j)
        sdim = self.dim(j)
        cols = [self.multiply(i, j, x, unit_vector(self.field, sdim, t)) or
                zero_vector(self.field, tdim) for t in range(sdim)]
        return Matrix.from_columns(self.field, cols, nrows=tdim)

    def validate(self):
        """Assert unit and associativity on all basis triples in the window."""
        f = self.field
        for d in range(self.d_max + 1):
            n = self.dim(d)
            for s in range(n):
                e = unit_vector(f, n, s)
                if self.multiply(0, d, self.unit, e) != e:
                    raise MathFailure(f"{self.name}: unit fails on the left in degree {d}")
                if self.multiply(d, 0, e, self.unit) != e:
                    raise MathFailure(f"{self.name}: unit fails on the right in degree {d}")
        for i in range(self.d_max + 1):
            for j in range(self.d_max + 1 - i):
                for k in range(self.d_max + 1 - i - j):
                    if not (self.dim(i) and self.dim(j) and self.dim(k) and self.dim(i + j + k)):
                        continue
                    for s in range(self.dim(i)):
                        x = unit_vector(f, self.dim(i), s)
                        for t in range(self.dim(j)):
                            y = unit_vector(f, self.dim(j), t)
                            xy = self.multiply(i, j, x, y)
                            for u in range(self.dim(k)):
                                z = unit_vector(f, self.dim(k), u)
                                yz = self.multiply(j, k, y, z)
                                if self.multiply(i + j, k, xy, z) != self.multiply(i, j + k, x, yz):
                                    raise MathFailure(
                                        f"{self.name}: associativity fails on ({i},{s}),({j},{t}),({k},{u})")
        return True

    def is_commutative(self):
        for i in range(self.d_max + 1):
            for j in range(i, self.d_max + 1 - i):
                for s in range(self.dim(i)):
                    x = unit_vector(self.field, self.dim(i), s)
                    for t in range(self.dim(j)):
                        y = unit_vector(self.field, self.dim(j), t)
                        if self.multiply(i, j, x, y) != self.multiply(j, i, y, x):
                            return False
        return True

    def product_surjectivity(self):
        """Degrees d where A_i A_j = A_{i+j} fails for some split (hypothesis flag)."""
        bad = []
        for d in range(1, self.d_max + 1):
            if self.dim(d) == 0:
                continue
            # generated-in-lower-degrees test: sum over all proper splits
            vecs = []
            for i in range(1, d):
                j = d - i
                m = self.mult_matrix(i, j)
                vecs.extend(m.column(c) for c in range(m.ncols))
            if d >= 1:
                m = self.mult_matrix(0, d)
                vecs.extend(m.column(c) for c in range(m.ncols))
            if Subspace(self.field, self.dim(d), vecs).dim < self.dim(d):
                bad.append(d)
        return bad

    def generated_in_degree_one(self):
        """True when A_d = A_{d-1} A_1 for every visible d >= 1."""
        for d in range(1, self.d_max + 1):
            if self.dim(d) == 0:
                continue
            m = self.mult_matrix(d - 1, 1)
            span = Subspace(self.field, self.dim(d), [m.column(c) for c in range(m.ncols)])
            if span.dim < self.dim(d):
                return False
        return True

    def regular_module(self):
        act = {(i, j): self.mult_matrix(i, j)
               for i in range(self.d_max + 1)
               for j in range(self.d_max + 1 - i)}
        return GradedModule(self, self.space, act, name=self.name)

    def trivial_module(self):
        """A_0 as a right module through the degree-zero projection."""
        f = self.field
        n0 = self.dim(0)
        space = GradedVectorSpace(f, (n0,), complete=True)
        act = {(0, 0): self.mult_matrix(0, 0)}
        return GradedModule(self, space, act, name=f"{self.name}_0")

    def __repr__(self):
        return f"GradedAlgebra({self.name}, dims={self.space.dims}, complete={self.complete})"


class GradedModule:
    """Graded right module over a GradedAlgebra, given by action tensors."""

    def __init__(self, algebra, space, act, name="M"):
        self.algebra = algebra
        self.space = space
        self.act = dict(act)
        self.name = name

    @property
    def field(self):
        return self.space.field

    @property
    def d_max(self):
        return self.space.d_max

    @property
    def complete(self):
        return self.space.complete

    def dim(self, d):
        return self.space.dim(d)

    def visible(self, d):
        return self.space.visible(d)

    def act_matrix(self, i, j):
        m = self.act.get((i, j))
        if m is None:
            if not self.space.visible(i + j):
                raise TruncationError(f"action degree {i + j} outside window of {self.name}")
            return Matrix.zeros(self.field, self.dim(i + j), self.dim(i) * self.algebra.dim(j))
        return m

    def act_vec(self, i, j, mvec, avec):
        tdim = self.dim(i + j)
        if tdim == 0:
            return []
        mat = self.act_matrix(i, j)
        add, mul = self.field.add, self.field.mul
        out = zero_vector(self.field, tdim)
        dj = self.algebra.dim(j)
        for s, ms in enumerate(mvec):
            if not ms:
                continue
            for t, at in enumerate(avec):
                if not at:
                    continue
                c = mul(ms, at)
                col = s * dj + t
                for u in range(tdim):
                    e = mat.rows[u][col]
                    if e:
                        out[u] = add(out[u], mul(c, e))
        return out

    def right_mult_matrix(self, i, j, avec):
        """Matrix of M_i -> M_{i+j}, m -> m * a, for a fixed a in A_j."""
        tdim = self.dim(i + j)
        sdim = self.dim(i)
        mat = self.act_matrix(i, j)
        dj = self.algebra.dim(j)
        cols = []
        for s in range(sdim):
            col = zero_vector(self.field, tdim)
            for t, at in enumerate(avec):
                if at:
                    col = vec_add(self.field, col,
                                  vec_scale(self.field, at, mat.column(s * dj + t)))
            cols.append(col)
        return Matrix.from_columns(self.field, cols, nrows=tdim)

    def validate(self):
        f = self.field
        A = self.algebra
        for d in range(self.d_max + 1):
            n = self.dim(d)
            for s in range(n):
                e = unit_vector(f, n, s)
                if self.act_vec(d, 0, e, A.unit) != e:
                    raise MathFailure(f"{self.name}: unit does not act as identity in degree {d}")
        for i in range(self.d_max + 1):
            for j in range(A.d_max + 1):
                for k in range(A.d_max + 1 - j):
                    if not self.space.visible(i + j + k) or not A.visible(j + k):
                        continue
                    if not (self.dim(i) and A.dim(j) and A.dim(k) and self.dim(i + j + k)):
                        continue
                    for s in range(self.dim(i)):
                        m = unit_vector(f, self.dim(i), s)
                        for t in range(A.dim(j)):
                            a = unit_vector(f, A.dim(j), t)
                            ma = self.act_vec(i, j, m, a)
                            for u in range(A.dim(k)):
                                b = unit_vector(f, A.dim(k), u)
                                ab = A.multiply(j, k, a, b)
                                if self.act_vec(i + j, k, ma, b) != self.act_vec(i, j + k, m, ab):
                                    raise MathFailure(
                                        f"{self.name}: action associativity fails at ({i},{s}),({j},{t}),({k},{u})")
        return True

    def restrict(self, emb):
        """The same space as a module over a subalgebra via an embedding."""
        if emb.big is not self.algebra:
            raise DimensionError("embedding target is not the acting algebra")
        act = {}
        for i in range(self.d_max + 1):
            for j in range(emb.sub.d_max + 1):
                if not self.space.visible(i + j):
                    continue
                if self.dim(i) == 0 or emb.sub.dim(j) == 0:
                    continue
                big = self.act_matrix(i, j)
                # precompose the A_j leg with the embedding B_j -> A_j
                act[(i, j)] = big @ Matrix.identity(self.field, self.dim(i)).kron(emb.matrix(j))
        return GradedModule(emb.sub, self.space, act, name=f"{self.name}|{emb.sub.name}")

    def __repr__(self):
        return f"GradedModule({self.name} over {self.algebra.name}, dims={self.space.dims})"


class AlgebraEmbedding:
    """Degreewise injection of a graded subalgebra, multiplicative and unital."""

    def __init__(self, sub, big, maps):
        self.sub = sub
        self.big = big
        self.maps = dict(maps)

    def matrix(self, d):
        m = self.maps.get(d)
        if m is None:
            return Matrix.zeros(self.sub.field, self.big.dim(d), self.sub.dim(d))
        return m

    def apply(self, d, bvec):
        return self.matrix(d).apply(bvec)

    def validate(self):
        f = self.sub.field
        if self.apply(0, self.sub.unit) != self.big.unit:
            raise MathFailure("embedding does not preserve the unit")
        for i in range(self.sub.d_max + 1):
            for j in range(self.sub.d_max + 1 - i):
                if not (self.sub.dim(i) and self.sub.dim(j)):
                    continue
                if not (self.big.visible(i + j) and self.sub.visible(i + j)):
                    continue
                for s in range(self.sub.dim(i)):
                    x = unit_vector(f, self.sub.dim(i), s)
                    for t in range(self.sub.dim(j)):
                        y = unit_vector(f, self.sub.dim(j), t)
                        lhs = self.apply(i + j, self.sub.multiply(i, j, x, y))
                        rhs = self.big.multiply(i, j, self.apply(i, x), self.apply(j, y))
                        if lhs != rhs:
                            raise MathFailure("embedding is not multiplicative")
        return True


class GradedLinearMap:
    """Graded linear map of a fixed degree shift, stored per visible degree."""

    def __init__(self, source, target, shift, mats):
        self.source = source
        self.target = target
        self.shift = shift
        self.mats = dict(mats)

    @property
    def field(self):
        return self.source.field

    def matrix(self, d):
        m = self.mats.get(d)
        if m is None:
            return Matrix.zeros(self.field, self.target.dim(d + self.shift), self.source.dim(d))
        return m

    def apply(self, d, vec):
        return self.matrix(d).apply(vec)

    def compose(self, other):
        """self after other; shifts add."""
        mats = {}
        for d in sorted(other.mats):
            mid = d + other.shift
            if not self.target.visible(mid + self.shift):
                continue
            mats[d] = self.matrix(mid) @ other.matrix(d)
        return GradedLinearMap(other.source, self.target, self.shift + other.shift, mats)

    def add(self, other):
        mats = {}
        for d in set(self.mats) | set(other.mats):
            mats[d] = self.matrix(d) + other.matrix(d)
        return GradedLinearMap(self.source, self.target, self.shift, mats)

    def scale(self, c):
        return GradedLinearMap(self.source, self.target, self.shift,
                               {d: m.scale(c) for d, m in self.mats.items()})

    def is_zero(self):
        return all(m.is_zero() for m in self.mats.values())

    def __eq__(self, other):
        if not isinstance(other, GradedLinearMap) or self.shift != other.shift:
            return False
        for d in set(self.mats) | set(other.mats):
            if self.matrix(d) != other.matrix(d):
                return False
        return True

    def __repr__(self):
        return f"GradedLinearMap(shift {self.shift}, degrees {sorted(self.mats)})"


def _hom_blocks(M, N, shift):
    """Stored degrees for a degree-`shift` map M -> N and unknown offsets."""
    blocks = []
    offset = 0
    for d in range(M.d_max + 1):
        sdim = M.dim(d)
        if sdim == 0:
            continue
        if not N.space.visible(d + shift):
            continue  # unconstrained outside the window; not stored
        tdim = N.dim(d + shift)
        if tdim == 0:
            continue
        blocks.append((d, sdim, tdim, offset))
        offset += sdim * tdim
    return blocks, offset


def graded_hom(M, N, shift, check_ring=None):
    """Basis of the module maps M -> N of the given degree shift.

    Both modules must live over the same algebra (or over `check_ring`).
    Solves the linearity conditions degreewise; components whose target is
    outside the window are left out of the result rather than guessed.
    """
    A = M.algebra
    if check_ring is not None and A is not check_ring:
        raise DimensionError("module does not live over the requested ring")
    if N.algebra is not A:
        raise DimensionError("graded_hom requires modules over one algebra")
    f = M.field
    blocks, nunk = _hom_blocks(M, N, shift)
    if nunk == 0:
        return []
    index = {d: (sdim, tdim, offset) for d, sdim, tdim, offset in blocks}
    rows = []
    zero = f.zero()
    for d, sdim, tdim, offset in blocks:
        for j in range(A.d_max + 1):
            adim = A.dim(j)
            if adim == 0:
                continue
            if not (M.space.visible(d + j) and N.space.visible(d + j + shift)):
                continue
            outdim = N.dim(d + j + shift)
            if outdim == 0:
                continue
            act_m = M.act_matrix(d, j) if M.dim(d + j) else None
            blk2 = index.get(d + j)
            for mi in range(sdim):
                for ai in range(adim):
                    avec = unit_vector(f, adim, ai)
                    # rows: f_{d+j}(m a) - f_d(m) a = 0, one per output coordinate
                    row_block = [[zero] * nunk for _ in range(outdim)]
                    if act_m is not None and blk2 is not None:
                        col = act_m.column(mi * adim + ai)
                        s2, t2, off2 = blk2
                        for t_src, c in enumerate(col):
                            if c:
                                for u in range(outdim):
                                    # unknown f_{d+j}[u][t_src]
                                    row_block[u][off2 + t_src * t2 + u] = c
                    # minus (f_d(m)) * a
                    nt = index[d][1]
                    for tprime in range(nt):
                        w = N.act_vec(d + shift, j, unit_vector(f, nt, tprime), avec)
                        for u in range(outdim):
                            if w[u]:
                                idx = offset + mi * nt + tprime
                                row_block[u][idx] = f.sub(row_block[u][idx], w[u])
                    rows.extend(row_block)
    if rows:
        big = Matrix(f, rows, ncols=nunk)
        basis = big.kernel().basis
    else:
        basis = Matrix.identity(f, nunk).rows
    out = []
    for v in basis:
        mats = {}
        for d, sdim, tdim, offset in blocks:
            rowsm = [[v[offset + s * tdim + t] for s in range(sdim)] for t in range(tdim)]
            mats[d] = Matrix(f, rowsm, ncols=sdim)
        out.append(GradedLinearMap(M.space, N.space, shift, mats))
    return out


def flatten_map(blocks, glm):
    """Coordinates of a GradedLinearMap in the unknown layout of _hom_blocks."""
    f = glm.field
    total = blocks[-1][3] + blocks[-1][1] * blocks[-1][2] if blocks else 0
    v = [f.zero()] * total
    for d, sdim, tdim, offset in blocks:
        m = glm.matrix(d)
        for s in range(sdim):
            for t in range(tdim):
                v[offset + s * tdim + t] = m.rows[t][s]
    return v


class TensorOverSub:
    """M (x)_B A for a right B-module M, an algebra A and an embedding B -> A.

    Realized degreewise as the quotient of the direct sum of M_i (x) A_j by
    the bimodule relations m*b (x) a - m (x) emb(b)*a, with the induced right
    A-action. Degree-d coordinates are quotient coordinates; `pure` maps a
    pure tensor into them.
    """

    def __init__(self, M, A, emb, d_max=None):
        if M.algebra is not emb.sub:
            raise DimensionError("module must live over the embedded subalgebra")
        if emb.big is not A:
            raise DimensionError("embedding does not land in the tensor factor")
        f = M.field
        self.M, self.A, self.emb = M, A, emb
        limits = []
        if not M.complete:
            limits.append(M.d_max)
        if not A.complete:
            limits.append(A.d_max)
        if not emb.sub.complete:
            limits.append(emb.sub.d_max)
        W = min(limits) if limits else M.d_max + A.d_max
        if d_max is not None:
            W = min(W, d_max)
        complete = not limits
        self.blocks = {}
        self.quotients = {}
        dims = []
        B = emb.sub
        for d in range(W + 1):
            blocks = []
            offset = 0
            for i in range(d + 1):
                j = d - i
                md, aj = M.dim(i), A.dim(j)
                if md and aj:
                    blocks.append((i, j, offset))
                    offset += md * aj
            ambient = offset
            rel = []
            for i0 in range(d + 1):
                mi = M.dim(i0)
                if mi == 0:
                    continue
                for e in range(d - i0 + 1):
                    be = B.dim(e)
                    if be == 0:
                        continue
                    j0 = d - i0 - e
                    aj = A.dim(j0)
                    if aj == 0:
                        continue
                    if not (M.space.visible(i0 + e) and A.visible(e + j0)):
                        continue
                    off_left = self._offset(blocks, i0 + e, j0)
                    off_right = self._offset(blocks, i0, e + j0)
                    for s in range(mi):
                        mvec = unit_vector(f, mi, s)
                        for b in range(be):
                            bvec = unit_vector(f, be, b)
                            mb = M.act_vec(i0, e, mvec, bvec)
                            emb_b = emb.apply(e, bvec)
                            for t in range(aj):
                                avec = unit_vector(f, aj, t)
                                ba = A.multiply(e, j0, emb_b, avec)
                                vec = zero_vector(f, ambient)
                                if off_left is not None and mb:
                                    dj = A.dim(j0)
                                    for u, c in enumerate(mb):
                                        if c:
                                            vec[off_left + u * dj + t] = c
                                if off_right is not None and ba:
                                    djr = A.dim(e + j0)
                                    for u, c in enumerate(ba):
                                        if c:
                                            vec[off_right + s * djr + u] = f.sub(vec[off_right + s * djr + u], c)
                                if any(vec):
                                    rel.append(vec)
            q = quotient(ambient, Subspace(f, ambient, rel))
            self.blocks[d] = blocks
            self.quotients[d] = q
            dims.append(q.dim)
        self.space = GradedVectorSpace(f, dims, complete=complete)
        act = {}
        for d in range(W + 1):
            for j in range(W + 1 - d):
                if A.dim(j) == 0 or self.space.dim(d) == 0:
                    continue
                act[(d, j)] = self._action_matrix(d, j)
        self.module = GradedModule(A, self.space, act, name=f"{M.name}(x){A.name}")

    @staticmethod
    def _offset(blocks, i, j):
        for bi, bj, off in blocks:
            if bi == i and bj == j:
                return off
        return None

    def _action_matrix(self, d, j):
        f = self.M.field
        A = self.A
        qd, qt = self.quotients[d], self.quotients[d + j]
        tdim, sdim, adim = qt.dim, qd.dim, A.dim(j)
        cols = []
        for s in range(sdim):
            amb = qd.lift(unit_vector(f, sdim, s))
            for t in range(adim):
                avec = unit_vector(f, adim, t)
                out = zero_vector(f, qt.ambient)
                for i, k, off in self.blocks[d]:
                    dk = A.dim(k)
                    off_t = self._offset(self.blocks[d + j], i, k + j)
                    if off_t is None:
                        continue
                    dkj = A.dim(k + j)
                    for u in range(self.M.dim(i)):
                        for w in range(dk):
                            c = amb[off + u * dk + w]
                            if c:
                                prod = A.multiply(k, j, unit_vector(f, dk, w), avec)
                                for z, pz in enumerate(prod):
                                    if pz:
                                        idx = off_t + u * dkj + z
                                        out[idx] = f.add(out[idx], f.mul(c, pz))
                cols.append(qt.project(out))
        return Matrix.from_columns(f, cols, nrows=tdim)

    def dim(self, d):
        return self.space.dim(d)

    def pure(self, i, j, mvec, avec):
        """Class of the pure tensor m (x) a, m in M_i, a in A_j."""
        f = self.M.field
        d = i + j
        q = self.quotients[d]
        off = self._offset(self.blocks[d], i, j)
        amb = zero_vector(f, q.ambient)
        if off is not None:
            dj = self.A.dim(j)
            for s, ms in enumerate(mvec):
                if ms:
                    for t, at in enumerate(avec):
                        if at:
                            amb[off + s * dj + t] = f.mul(ms, at)
        return q.project(amb)

    def pure_matrix(self, i, j):
        """Matrix of M_i (x) A_j -> (M (x)_B A)_{i+j} on pure tensors."""
        f = self.M.field
        d = i + j
        q = self.quotients[d]
        off = self._offset(self.blocks[d], i, j)
        n = self.M.dim(i) * self.A.dim(j)
        if off is None:
            return Matrix.zeros(f, q.dim, n)
        cols = []
        for c in range(n):
            amb = zero_vector(f, q.ambient)
            amb[off + c] = f.one()
            cols.append(q.project(amb))
        return Matrix.from_columns(f, cols, nrows=q.dim)


def tensor_over_sub(M, A, emb, d_max=None, validate_emb=False):
    """Build M (x)_B A; optionally re-check that emb is an algebra embedding."""
    if validate_emb:
        emb.validate()
    return TensorOverSub(M, A, emb, d_max=d_max)


def identity_embedding(A):
    maps = {d: Matrix.identity(A.field, A.dim(d)) for d in range(A.d_max + 1)}
    return AlgebraEmbedding(A, A, maps)


def module_concentrated(algebra, degree0_dim, act00, name="M"):
    """Module living in degree 0 only (ungraded case)."""
    space = GradedVectorSpace(algebra.field, (degree0_dim,), complete=True)
    return GradedModule(algebra, space, {(0, 0): act00}, name=name)
