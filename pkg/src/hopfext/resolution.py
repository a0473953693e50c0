"""Minimal graded projective resolutions.

Projectives are built as X (x)_{A_0} A for graded families X of A_0-modules
(the generator blocks), which is the right notion of graded projective cover
when A_0 is semisimple but bigger than the ground field. Construction is
degree by internal degree; minimality (differentials land in the part of
positive degree over the generators) and windowed exactness are asserted,
never assumed.
"""

from dataclasses import dataclass

from .errors import HypothesisError, MathFailure, TruncationError
from .graded import GradedLinearMap, GradedModule, GradedVectorSpace
from .linalg import Matrix, Subspace, quotient, unit_vector, vec_add, vec_scale, zero_vector


def algebra_degree_zero_semisimple(alg):
    """Decide semisimplicity of A_0 by exact linear algebra.

    Char 0: the trace form is nondegenerate iff A_0 is semisimple. Char p:
    nondegenerate trace form still implies semisimple; for commutative A_0
    the nilradical is the kernel of x -> x^(p^k) (an F_p-linear map); other
    cases are refused rather than guessed.
    """
    f = alg.field
    n = alg.dim(0)
    if n == 0:
        raise MathFailure("degree-zero part is zero")
    lefts = [alg.left_mult_matrix(0, 0, unit_vector(f, n, i)) for i in range(n)]

    def trace(m):
        acc = f.zero()
        for i in range(m.nrows):
            acc = f.add(acc, m.rows[i][i])
        return acc

    gram = Matrix(f, [[trace(lefts[i] @ lefts[j]) for j in range(n)] for i in range(n)])
    if gram.rank() == n:
        return True
    if f.char == 0:
        return False
    commutative = all(
        alg.multiply(0, 0, unit_vector(f, n, i), unit_vector(f, n, j))
        == alg.multiply(0, 0, unit_vector(f, n, j), unit_vector(f, n, i))
        for i in range(n) for j in range(i + 1, n))
    if not commutative:
        raise HypothesisError(
            "cannot decide semisimplicity of a noncommutative degree-zero part in "
            f"characteristic {f.char} with a degenerate trace form")
    p = f.char
    q = p
    while q < n:
        q *= p
    cols = []
    for i in range(n):
        x = unit_vector(f, n, i)
        acc = x
        power = 1
        while power < q:
            acc = alg.multiply(0, 0, acc, acc) if power * 2 <= q else acc
            power *= 2
        # recompute honestly: repeated squaring only works for powers of two;
        # q is a power of p, so for p = 2 squaring suffices, otherwise multiply
        acc = x
        for _ in range(q - 1):
            acc = alg.multiply(0, 0, acc, x)
        cols.append(acc)
    frob = Matrix.from_columns(f, cols, nrows=n)
    return frob.kernel().dim == 0


@dataclass
class GenBlock:
    degree: int
    dim: int
    action: Matrix          # right A_0-action on the generator space C
    gen_vectors: Matrix     # columns: generators inside the covered module/kernel


class FreeCover:
    """P = (+)_l C_l (x)_{A_0} A realized degreewise, with its A-action."""

    def __init__(self, algebra, blocks, d_max):
        self.algebra = algebra
        self.blocks = blocks
        f = algebra.field
        n0 = algebra.dim(0)
        self.piece_quotients = {}   # (block index, degree) -> QuotientSpace
        self.offsets = {}           # degree -> list of (block index, offset, piece dim)
        dims = []
        for d in range(d_max + 1):
            offset = 0
            layout = []
            for li, blk in enumerate(self.blocks):
                j = d - blk.degree
                if j < 0 or not algebra.visible(j) or algebra.dim(j) == 0 or blk.dim == 0:
                    continue
                q = self._piece(li, blk, j)
                layout.append((li, offset, q.dim))
                offset += q.dim
            self.offsets[d] = layout
            dims.append(offset)
        self.space = GradedVectorSpace(f, dims, complete=algebra.complete)
        act = {}
        for d in range(d_max + 1):
            for j in range(d_max + 1 - d):
                if algebra.dim(j) == 0 or self.space.dim(d) == 0:
                    continue
                act[(d, j)] = self._action_matrix(d, j)
        self.module = GradedModule(algebra, self.space, act, name="P")

    def _piece(self, li, blk, j):
        key = (li, j)
        q = self.piece_quotients.get(key)
        if q is not None:
            return q
        alg = self.algebra
        f = alg.field
        n0 = alg.dim(0)
        aj = alg.dim(j)
        ambient = blk.dim * aj
        rel = []
        if n0 > 1 or True:
            for c in range(blk.dim):
                for k in range(n0):
                    ca0 = blk.action.column(c * n0 + k)
                    for t in range(aj):
                        a0a = alg.multiply(0, j, unit_vector(f, n0, k), unit_vector(f, aj, t))
                        vec = zero_vector(f, ambient)
                        for u, cc in enumerate(ca0):
                            if cc:
                                vec[u * aj + t] = cc
                        for u, cc in enumerate(a0a):
                            if cc:
                                vec[c * aj + u] = f.sub(vec[c * aj + u], cc)
                        if any(vec):
                            rel.append(vec)
        q = quotient(ambient, Subspace(f, ambient, rel))
        self.piece_quotients[key] = q
        return q

    def _action_matrix(self, d, j):
        alg = self.algebra
        f = alg.field
        sdim = self.space.dim(d)
        tdim = self.space.dim(d + j)
        aj = alg.dim(j)
        cols = []
        tgt_layout = {li: (off, pdim) for li, off, pdim in self.offsets[d + j]}
        for li, off, pdim in self.offsets[d]:
            blk = self.blocks[li]
            k = d - blk.degree
            q = self._piece(li, blk, k)
            qt = self._piece(li, blk, k + j)
            toff = tgt_layout.get(li, (None, 0))[0]
            for s in range(pdim):
                amb = q.lift(unit_vector(f, pdim, s))
                for t in range(aj):
                    col = zero_vector(f, tdim)
                    if toff is not None:
                        out = zero_vector(f, qt.ambient)
                        akj = alg.dim(k + j)
                        for idx, c in enumerate(amb):
                            if not c:
                                continue
                            cidx, aidx = idx // alg.dim(k), idx % alg.dim(k)
                            prod = alg.multiply(k, j, unit_vector(f, alg.dim(k), aidx),
                                                unit_vector(f, aj, t))
                            for z, pz in enumerate(prod):
                                if pz:
                                    out[cidx * akj + z] = f.add(out[cidx * akj + z],
                                                                f.mul(c, pz))
                        proj = qt.project(out)
                        for z, pz in enumerate(proj):
                            if pz:
                                col[toff + z] = pz
                    cols.append(col)
        # column order above is (layout block, s, t); required order is (s_global, t)
        ordered = [None] * (sdim * aj)
        pos = 0
        for li, off, pdim in self.offsets[d]:
            for s in range(pdim):
                for t in range(aj):
                    ordered[(off + s) * aj + t] = cols[pos]
                    pos += 1
        return Matrix.from_columns(f, ordered, nrows=tdim)

    def gen_layout(self):
        """[(block index, degree, dim)] in block order."""
        return [(li, blk.degree, blk.dim) for li, blk in enumerate(self.blocks)]

    def total_gens(self):
        return sum(blk.dim for blk in self.blocks)

    def hom_space(self, N, weight):
        """Basis of A-linear maps P -> N lowering internal degree by `weight`.

        Each basis element is a dict block index -> Matrix (N_{g-weight} x C).
        """
        f = self.algebra.field
        n0 = self.algebra.dim(0)
        out_blocks = []
        for li, blk in enumerate(self.blocks):
            tdeg = blk.degree - weight
            if not N.space.visible(tdeg):
                raise TruncationError("hom target outside certified window")
            tdim = N.dim(tdeg)
            if tdim == 0 or blk.dim == 0:
                out_blocks.append((li, []))
                continue
            nunk = tdim * blk.dim
            rows = []
            for c in range(blk.dim):
                for k in range(n0):
                    ca0 = blk.action.column(c * n0 + k)
                    right = N.right_mult_matrix(tdeg, 0, unit_vector(f, n0, k))
                    for u in range(tdim):
                        row = [f.zero()] * nunk
                        for cp, cc in enumerate(ca0):
                            if cc:
                                row[cp * tdim + u] = f.add(row[cp * tdim + u], cc)
                        for up in range(tdim):
                            if right.rows[u][up]:
                                idx = c * tdim + up
                                row[idx] = f.sub(row[idx], right.rows[u][up])
                        rows.append(row)
            if rows:
                basis = Matrix(f, rows, ncols=nunk).kernel().basis
            else:
                basis = Matrix.identity(f, nunk).rows
            mats = []
            for v in basis:
                m = Matrix(f, [[v[c * tdim + u] for c in range(blk.dim)]
                               for u in range(tdim)], ncols=blk.dim)
                mats.append(m)
            out_blocks.append((li, mats))
        basis = []
        for li, mats in out_blocks:
            for m in mats:
                basis.append({li: m})
        return basis

    def map_from_gen_images(self, N, weight, images):
        """A-linear map P -> N from generator images (block index -> Matrix)."""
        f = self.algebra.field
        alg = self.algebra
        mats = {}
        for d in range(self.space.d_max + 1):
            sdim = self.space.dim(d)
            tdeg = d - weight
            if not N.space.visible(tdeg):
                continue
            tdim = N.dim(tdeg)
            if sdim == 0:
                continue
            cols = []
            for li, off, pdim in self.offsets[d]:
                blk = self.blocks[li]
                img = images.get(li)
                j = d - blk.degree
                q = self._piece(li, blk, j)
                aj = alg.dim(j)
                for s in range(pdim):
                    if tdim == 0 or img is None:
                        cols.append(zero_vector(f, tdim))
                        continue
                    amb = q.lift(unit_vector(f, pdim, s))
                    acc = zero_vector(f, tdim)
                    for idx, c in enumerate(amb):
                        if not c:
                            continue
                        cidx, aidx = idx // aj, idx % aj
                        phi_c = img.column(cidx)
                        val = N.act_vec(blk.degree - weight, j, phi_c,
                                        unit_vector(f, aj, aidx))
                        acc = vec_add(f, acc, vec_scale(f, c, val))
                    cols.append(acc)
            mats[d] = Matrix.from_columns(f, cols, nrows=tdim)
        return GradedLinearMap(self.space, N.space, -weight, mats)

    def flat_dim(self, N, weight):
        return sum(N.dim(blk.degree - weight) * blk.dim for blk in self.blocks
                   if N.space.visible(blk.degree - weight))

    def flatten_images(self, N, weight, images):
        f = self.algebra.field
        out = []
        for li, blk in enumerate(self.blocks):
            tdeg = blk.degree - weight
            tdim = N.dim(tdeg) if N.space.visible(tdeg) else 0
            m = images.get(li)
            for c in range(blk.dim):
                for u in range(tdim):
                    out.append(m.rows[u][c] if m is not None else f.zero())
        return out

    def unflatten_images(self, N, weight, flat):
        f = self.algebra.field
        images = {}
        pos = 0
        for li, blk in enumerate(self.blocks):
            tdeg = blk.degree - weight
            tdim = N.dim(tdeg) if N.space.visible(tdeg) else 0
            if tdim and blk.dim:
                rows = [[f.zero()] * blk.dim for _ in range(tdim)]
                for c in range(blk.dim):
                    for u in range(tdim):
                        rows[u][c] = flat[pos + c * tdim + u]
                images[li] = Matrix(f, rows, ncols=blk.dim)
            pos += tdim * blk.dim
        return images


@dataclass
class ResolutionLevel:
    cover: FreeCover
    diff: GradedLinearMap   # into the previous cover's module (or M when n = 0)


class ProjectiveResolution:
    def __init__(self, module, levels, window, n_max):
        self.module = module
        self.levels = levels
        self.window = window
        self.n_max = n_max

    def cover(self, n):
        return self.levels[n].cover

    def diff(self, n):
        return self.levels[n].diff

    def gen_degrees(self, n):
        """Sorted generator internal degrees of P^{-n}, with multiplicity."""
        if n >= len(self.levels):
            return []
        out = []
        for blk in self.levels[n].cover.blocks:
            out.extend([blk.degree] * blk.dim)
        return sorted(out)

    def certificate(self):
        return {
            "window": {"n_max": self.n_max, "d_max": self.window},
            "generator_degrees": {n: self.gen_degrees(n) for n in range(len(self.levels))},
        }


def _stable_complement(f, ambient_dim, V, act0_mats):
    """A_0-stable complement of the stable subspace V, as a section matrix.

    Solves proj @ s = id and act @ s = s @ act_induced for a deterministic s;
    a solution exists whenever A_0 is semisimple.
    """
    q = quotient(ambient_dim, V)
    if q.dim == 0:
        return None
    proj, sec = q.projection, q.section
    acts_q = [proj @ m @ sec for m in act0_mats]
    n, qd = ambient_dim, q.dim
    nunk = n * qd
    rows = []
    rhs = []
    for a in range(qd):
        for b in range(qd):
            row = [f.zero()] * nunk
            for i in range(n):
                if proj.rows[a][i]:
                    row[i * qd + b] = proj.rows[a][i]
            rows.append(row)
            rhs.append(f.one() if a == b else f.zero())
    for m, mq in zip(act0_mats, acts_q):
        for a in range(n):
            for b in range(qd):
                row = [f.zero()] * nunk
                for i in range(n):
                    if m.rows[a][i]:
                        row[i * qd + b] = f.add(row[i * qd + b], m.rows[a][i])
                for j in range(qd):
                    if mq.rows[j][b]:
                        row[a * qd + j] = f.sub(row[a * qd + j], mq.rows[j][b])
                rows.append(row)
                rhs.append(f.zero())
    sol = Matrix(f, rows, ncols=nunk).solve(rhs)
    if sol is None:
        raise MathFailure("no stable complement found; degree-zero part not semisimple?")
    s = Matrix(f, [[sol[i * qd + b] for b in range(qd)] for i in range(n)], ncols=qd)
    acts_c = acts_q
    return s, acts_c, q


class _Syzygy:
    """A graded submodule K of a cover module P, in its own coordinates."""

    def __init__(self, P_module, subs):
        self.P = P_module
        self.subs = subs
        f = P_module.field
        dims = [subs[d].dim for d in range(P_module.d_max + 1)]
        self.space = GradedVectorSpace(f, dims, complete=P_module.complete)

    def emb_matrix(self, d):
        f = self.P.field
        return Matrix.from_columns(f, [list(b) for b in self.subs[d].basis],
                                   nrows=self.P.dim(d))

    def module(self):
        f = self.P.field
        act = {}
        for d in range(self.space.d_max + 1):
            for j in range(self.space.d_max + 1 - d):
                if self.space.dim(d) == 0 or self.P.algebra.dim(j) == 0:
                    continue
                cols = []
                for s in range(self.space.dim(d)):
                    pvec = list(self.subs[d].basis[s])
                    for t in range(self.P.algebra.dim(j)):
                        img = self.P.act_vec(d, j, pvec,
                                             unit_vector(f, self.P.algebra.dim(j), t))
                        coords = self.subs[d + j].coordinates(img)
                        if coords is None:
                            raise MathFailure("syzygy is not a submodule (bug)")
                        cols.append(coords)
                act[(d, j)] = Matrix.from_columns(f, cols, nrows=self.space.dim(d + j))
        return GradedModule(self.P.algebra, self.space, act, name="K")


def minimal_graded_resolution(M, n_max, d_max=None):
    """Minimal graded resolution of M to homological degree n_max.

    Refuses when A_0 is not semisimple (minimal covers are not unique then).
    The internal window is d_max, capped by any truncation of A or M.
    """
    A = M.algebra
    f = A.field
    if not algebra_degree_zero_semisimple(A):
        raise HypothesisError("degree-zero part of the algebra is not semisimple")
    limits = []
    if not A.complete:
        limits.append(A.d_max)
    if not M.complete:
        limits.append(M.d_max)
    if d_max is not None:
        limits.append(d_max)
    if not limits:
        # honest finite-dimensional data: syzygy degrees grow by at most the
        # top degree of A per homological step
        W = M.d_max + n_max * max(A.d_max, 0)
    else:
        W = min(limits)
    n0 = A.dim(0)

    # target interface: dims, right-mult-by-A0 matrices, action spans, gen coords
    target = M
    target_is_module = True
    syz = None
    levels = []
    for n in range(n_max + 1):
        if target_is_module:
            T = target
            emb = None
        else:
            T = target.module()
            emb = target
        blocks = []
        gen_subspaces = {}
        kgen = {}
        for d in range(W + 1):
            nd = T.dim(d)
            if nd == 0:
                continue
            vecs = []
            for e in range(d):
                if T.dim(e) == 0 or A.dim(d - e) == 0:
                    continue
                m = T.act_matrix(e, d - e)
                vecs.extend(m.column(c) for c in range(m.ncols))
            V = Subspace(f, nd, vecs)
            if V.dim == nd:
                continue
            act0 = [T.right_mult_matrix(d, 0, unit_vector(f, n0, k)) for k in range(n0)]
            s, acts_c, q = _stable_complement(f, nd, V, act0)
            cdim = s.ncols
            act_c = Matrix.from_columns(
                f,
                [col for c in range(cdim) for col in
                 [ _induced_action_column(f, acts_c, c, k, cdim) for k in range(n0)]],
                nrows=cdim)
            blocks.append(GenBlock(d, cdim, act_c, s))
        cover = FreeCover(A, blocks, W)
        # differential from generator images
        if target_is_module:
            images = {li: blk.gen_vectors for li, blk in enumerate(cover.blocks)}
            diff = cover.map_from_gen_images(M, 0, images)
        else:
            images = {}
            for li, blk in enumerate(cover.blocks):
                e = emb.emb_matrix(blk.degree)
                images[li] = e @ blk.gen_vectors
            diff = cover.map_from_gen_images(emb.P, 0, images)
        levels.append(ResolutionLevel(cover, diff))
        # exactness of the new cover onto its target
        for d in range(W + 1):
            tdim = T.dim(d)
            mat = diff.matrix(d)
            col_space = Subspace(f, mat.nrows, [mat.column(c) for c in range(mat.ncols)])
            if target_is_module:
                if col_space.dim != tdim:
                    raise MathFailure(f"cover misses the target in degree {d}")
            else:
                want = Subspace(f, mat.nrows, [list(b) for b in emb.subs[d].basis])
                if col_space != want:
                    raise MathFailure(f"cover does not hit the syzygy in degree {d}")
        # next syzygy: kernel of diff, minimality check
        subs = {}
        for d in range(W + 1):
            ker = diff.matrix(d).kernel()
            subs[d] = ker
            # graded Nakayama: kernel avoids the generator level of the top block
            for li, off, pdim in cover.offsets[d]:
                if cover.blocks[li].degree == d:
                    for b in ker.basis:
                        if any(b[off + z] for z in range(pdim)):
                            raise MathFailure(f"resolution not minimal in degree {d}")
        syz = _Syzygy(cover.module, subs)
        target = syz
        target_is_module = False
    return ProjectiveResolution(M, levels, W, n_max)


def _induced_action_column(f, acts_c, c, k, cdim):
    return acts_c[k].column(c)
