"""The H-action on Ext over the coinvariants, and its invariant subalgebra.

Ext_B(M, M) classes are computed on a minimal B-resolution Q (small spaces).
The translation-map action needs A-module structure, which lives on the
minimal A-resolution P of M: since A is B-projective for a Galois extension,
P is also a B-projective resolution, so classes transport along comparison
chain maps w: P -> Q and u: Q -> P lifting the identity. The components of P
are decomposed as free B-modules; fixtures where that fails raise a clear
error instead of silently computing something else.
"""

from .comodule import h_action_on_hom
from .errors import MathFailure
from .ext import ExtComputation, _gen_coord_vectors
from .graded import GradedLinearMap
from .linalg import Matrix, Subspace, unit_vector, vec_add, vec_scale, zero_vector
from .resolution import minimal_graded_resolution


class BFreeStructure:
    """Free decomposition of a graded B-module within its window."""

    def __init__(self, module):
        self.module = module
        B = module.algebra
        f = module.field
        gens = []
        assemble = {}
        expand = {}
        for d in range(module.d_max + 1):
            nd = module.dim(d)
            cols = []
            layout = []
            off = 0
            for gi, (g, vec) in enumerate(gens):
                bd = B.dim(d - g)
                layout.append((gi, off, bd))
                for t in range(bd):
                    cols.append(module.act_vec(g, d - g, vec,
                                               unit_vector(f, bd, t)))
                off += bd
            span = Subspace(f, nd, cols)
            if span.dim < nd:
                comp = [v for v in _complement_vectors(f, nd, span)]
                for v in comp:
                    gens.append((d, v))
                    layout.append((len(gens) - 1, off, 1))
                    cols.append(v)
                    off += 1
            m = Matrix.from_columns(f, cols, nrows=nd)
            if m.ncols != nd:
                raise MathFailure(
                    f"module {module.name} is not free over {B.name} in degree {d} "
                    f"({m.ncols} free coordinates vs dimension {nd})")
            inv = m.inverse()
            if inv is None:
                raise MathFailure(
                    f"module {module.name}: free coordinates degenerate in degree {d}")
            assemble[d] = m
            expand[d] = inv
        self.gens = gens
        self.assemble = assemble
        self.expand = expand
        self.layouts = self._layouts()

    def _layouts(self):
        B = self.module.algebra
        layouts = {}
        for d in range(self.module.d_max + 1):
            off = 0
            lay = []
            for gi, (g, _) in enumerate(self.gens):
                if g > d:
                    continue
                bd = B.dim(d - g)
                if bd:
                    lay.append((gi, off, bd))
                off += bd
            layouts[d] = lay
        return layouts

    def map_from_gen_images(self, target, weight, images):
        """B-linear map given by one target vector per generator.

        images[i] lives in target_{g_i - weight}; the full map is the free
        extension composed with the coordinate expansion.
        """
        f = self.module.field
        B = self.module.algebra
        mats = {}
        for d in range(self.module.d_max + 1):
            tdeg = d - weight
            if not target.space.visible(tdeg):
                continue
            tdim = target.dim(tdeg)
            sdim = self.module.dim(d)
            if sdim == 0:
                continue
            cols = []
            for gi, off, bd in self.layouts[d]:
                g, _ = self.gens[gi]
                img = images[gi]
                for t in range(bd):
                    if tdim == 0:
                        cols.append([])
                        continue
                    cols.append(target.act_vec(g - weight, d - g, img,
                                               unit_vector(f, bd, t)))
            free_mat = Matrix.from_columns(f, cols, nrows=tdim)
            mats[d] = free_mat @ self.expand[d]
        return GradedLinearMap(self.module.space, target.space, -weight, mats)

    def hom_basis(self, target, weight):
        """Basis of B-linear maps of the given weight: unit generator images."""
        f = self.module.field
        out = []
        for gi, (g, _) in enumerate(self.gens):
            tdeg = g - weight
            if not target.space.visible(tdeg):
                continue
            tdim = target.dim(tdeg)
            for u in range(tdim):
                images = [zero_vector(f, target.dim(gj - weight))
                          if target.space.visible(gj - weight) else []
                          for gj, _ in self.gens]
                images[gi] = unit_vector(f, tdim, u)
                out.append(images)
        return out

    def hom_dim(self, target, weight):
        return sum(target.dim(g - weight) for g, _ in self.gens
                   if target.space.visible(g - weight))


def _complement_vectors(f, n, span):
    pivots = set(span.pivots)
    for c in range(n):
        if c not in pivots:
            yield unit_vector(f, n, c)


def _solve_on_cover(cover, target, weight, rhs_fn, post):
    """Images (block -> Matrix) over a FreeCover with post . F(gen) = rhs(gen)."""
    f = cover.algebra.field
    hom_basis = cover.hom_space(target, weight)
    gens = _gen_coord_vectors(cover)
    rows, rhs_flat = [], []
    for gen in gens:
        li, c, g, coords = gen
        want = rhs_fn(gen)
        if not len(want):
            continue
        cols = []
        for h in hom_basis:
            img = h.get(li)
            val = img.column(c) if img is not None else zero_vector(f, target.dim(g - weight))
            cols.append(post.matrix(g - weight).apply(val))
        for u in range(len(want)):
            rows.append([col[u] for col in cols])
            rhs_flat.append(want[u])
    if not hom_basis:
        if any(rhs_flat):
            raise MathFailure("comparison lift impossible")
        return {}
    sol = Matrix(f, rows, ncols=len(hom_basis)).solve(rhs_flat) if rows else \
        [f.zero()] * len(hom_basis)
    if sol is None:
        raise MathFailure("comparison lift failed (exactness?)")
    images = {}
    for cc, h in zip(sol, hom_basis):
        if not cc:
            continue
        for li, m in h.items():
            cur = images.get(li)
            images[li] = m.scale(cc) if cur is None else cur + m.scale(cc)
    return images


class EquivariantExt:
    """Ext_B(M, M) with its H-action, for an A-module M over a Galois extension."""

    def __init__(self, gd, M, n_max, d_max=None, ext_a=None):
        self.gd = gd
        self.M = M
        self.n_max = n_max
        emb = gd.coinv.emb
        self.MB = M.restrict(emb)
        self.ext_b = ExtComputation(self.MB, self.MB, n_max, d_max)
        if ext_a is not None:
            self.ext_a = ext_a
            self.res_a = ext_a.res_m
        else:
            self.ext_a = ExtComputation(M, M, n_max, d_max)
            self.res_a = self.ext_a.res_m
        self.res_b = self.ext_b.res_m
        levels = min(len(self.res_a.levels), len(self.res_b.levels))
        self.bfree = []
        self.pb_modules = []
        for m in range(levels):
            pb = self.res_a.cover(m).module.restrict(emb)
            self.pb_modules.append(pb)
            self.bfree.append(BFreeStructure(pb))
        self._build_w(levels)
        self._build_u(levels)
        self._action_cache = {}

    # ---- comparison chain maps -------------------------------------------

    def _build_w(self, levels):
        """w: P -> Q over B lifting the identity of M."""
        f = self.M.field
        emb = self.gd.coinv.emb
        aug_p = self.res_a.diff(0)
        aug_q = self.res_b.diff(0)
        self.w = []
        for m in range(levels):
            bf = self.bfree[m]
            images = []
            for gi, (g, vec) in enumerate(bf.gens):
                if m == 0:
                    rhs = aug_p.matrix(g).apply(vec)
                    sol = aug_q.matrix(g).solve(rhs)
                else:
                    dp = self.res_a.diff(m).matrix(g).apply(vec)
                    rhs = self.w[m - 1].matrix(g).apply(dp)
                    sol = self.res_b.diff(m).matrix(g).solve(rhs)
                if sol is None:
                    raise MathFailure(f"comparison map w failed at level {m}")
                images.append(sol)
            self.w.append(bf.map_from_gen_images(self.res_b.cover(m).module, 0, images))

    def _build_u(self, levels):
        """u: Q -> P over B lifting the identity of M."""
        self.u = []
        aug_p = self.res_a.diff(0)
        aug_q = self.res_b.diff(0)
        for m in range(levels):
            cover_q = self.res_b.cover(m)
            target = self.pb_modules[m]
            if m == 0:
                def rhs0(gen):
                    li, c, g, coords = gen
                    return aug_q.matrix(g).apply(coords)
                images = _solve_on_cover(cover_q, target, 0, rhs0, aug_p)
            else:
                prev_u = self.u[m - 1]
                dq = self.res_b.diff(m)

                def rhsm(gen, _pu=prev_u, _dq=dq):
                    li, c, g, coords = gen
                    return _pu.matrix(g).apply(_dq.matrix(g).apply(coords))
                images = _solve_on_cover(cover_q, target, 0, rhsm, self.res_a.diff(m))
            self.u.append(cover_q.map_from_gen_images(target, 0, images))

    # ---- transported structure -------------------------------------------

    def class_to_p_map(self, n, d, coords):
        """A cocycle on Q transported to a B-linear cocycle P^{-n} -> M."""
        f = self.M.field
        cover_q = self.res_b.cover(n)
        acc = None
        for i, c in enumerate(coords):
            if not c:
                continue
            images = self.ext_b.rep_images(n, d, i)
            full = cover_q.map_from_gen_images(self.MB, d, images)
            term = full.compose(self.w[n]).scale(c)
            acc = term if acc is None else acc.add(term)
        if acc is None:
            mats = {}
            acc = GradedLinearMap(self.res_a.cover(n).module.space, self.MB.space, -d, mats)
        return acc

    def p_map_to_class(self, n, d, glm):
        """Class coordinates of a B-linear cocycle given on P^{-n}."""
        back = glm.compose(self.u[n])
        return self.ext_b.coords_of_map(n, d, back)

    def action_matrices(self, n, d):
        """One matrix per H basis element on the (n, d) cell of Ext_B."""
        key = (n, d)
        if key in self._action_cache:
            return self._action_cache[key]
        f = self.M.field
        H = self.gd.comodule.hopf
        dim = self.ext_b.dim(n, d)
        p_module = self.res_a.cover(n).module
        mats = []
        for k in range(H.dim):
            hvec = unit_vector(f, H.dim, k)
            cols = []
            for i in range(dim):
                F = self.class_to_p_map(n, d, unit_vector(f, dim, i))
                hF = h_action_on_hom(self.gd, p_module, self.M, F, hvec)
                cols.append(self.p_map_to_class(n, d, hF))
            mats.append(Matrix.from_columns(f, cols, nrows=dim))
        self._action_cache[key] = mats
        return mats

    def invariant_subspace(self, n, d):
        f = self.M.field
        H = self.gd.comodule.hopf
        dim = self.ext_b.dim(n, d)
        rows = []
        for k, act in enumerate(self.action_matrices(n, d)):
            diff = act - Matrix.identity(f, dim).scale(H.counit[k])
            rows.extend(diff.rows)
        if not rows:
            return Subspace(f, dim, [unit_vector(f, dim, i) for i in range(dim)])
        return Matrix(f, rows, ncols=dim).kernel()

    def restriction_matrix(self, n, d):
        """Matrix of Ext_A^{n,d}(M,M) -> Ext_B^{n,d}(M,M)."""
        f = self.M.field
        dim_a = self.ext_a.dim(n, d)
        cols = []
        for j in range(dim_a):
            images = self.ext_a.rep_images(n, d, j)
            full = self.res_a.cover(n).map_from_gen_images(self.M, d, images)
            # same underlying map, read as B-linear into MB
            asb = GradedLinearMap(full.source, self.MB.space, full.shift, full.mats)
            cols.append(self.p_map_to_class(n, d, asb))
        return Matrix.from_columns(f, cols, nrows=self.ext_b.dim(n, d))

    def restriction_image(self, n, d):
        m = self.restriction_matrix(n, d)
        return Subspace(self.M.field, m.nrows, [m.column(j) for j in range(m.ncols)])

    def dims_table(self):
        return self.ext_b.dims_table()
