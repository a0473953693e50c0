"""Bigraded Ext algebras via minimal resolutions.

Classes in Ext^n(M, N) are represented in the Hom_A(P^{-n}, N) model
(cocycles modulo boundaries, canonical echelon representatives); Yoneda
products compose lifted chain maps, so associativity and unitality hold by
construction. Bidegrees: (ext-degree n, internal weight d), where a weight-d
element is a graded map lowering internal degree by d. All cells outside the
certified window are reported as unknown, never guessed.
"""

from dataclasses import dataclass

from .errors import HypothesisError, MathFailure, TruncationError
from .graded import GradedAlgebra, GradedLinearMap, GradedVectorSpace, graded_hom, _hom_blocks, flatten_map
from .linalg import Matrix, Subspace, unit_vector, vec_add, vec_scale, zero_vector
from .resolution import algebra_degree_zero_semisimple, minimal_graded_resolution


def _gen_coord_vectors(cover):
    """[(block index, gen index, degree, coords in P_degree)] for all generators."""
    f = cover.algebra.field
    out = []
    for li, blk in enumerate(cover.blocks):
        q = cover._piece(li, blk, 0)
        n0 = cover.algebra.dim(0)
        for c in range(blk.dim):
            amb = zero_vector(f, q.ambient)
            for t, ut in enumerate(cover.algebra.unit):
                if ut:
                    amb[c * n0 + t] = ut
            local = q.project(amb)
            full = zero_vector(f, cover.space.dim(blk.degree))
            for lj, off, pdim in cover.offsets[blk.degree]:
                if lj == li:
                    for z, cz in enumerate(local):
                        full[off + z] = cz
            out.append((li, c, blk.degree, full))
    return out


def _evaluate_images(cover, N, weight, images, d, coords):
    """Value in N_{d-weight} of the map with the given generator images."""
    f = cover.algebra.field
    alg = cover.algebra
    tdim = N.dim(d - weight)
    acc = zero_vector(f, tdim)
    if tdim == 0:
        return acc
    for li, off, pdim in cover.offsets[d]:
        blk = cover.blocks[li]
        img = images.get(li)
        if img is None:
            continue
        j = d - blk.degree
        q = cover._piece(li, blk, j)
        aj = alg.dim(j)
        local = [coords[off + z] for z in range(pdim)]
        if not any(local):
            continue
        amb = q.lift(local)
        for idx, c in enumerate(amb):
            if not c:
                continue
            cidx, aidx = idx // aj, idx % aj
            val = N.act_vec(blk.degree - weight, j, img.column(cidx),
                            unit_vector(f, aj, aidx))
            acc = vec_add(f, acc, vec_scale(f, c, val))
    return acc


class ExtComputation:
    """Ext^{n,d}(M, N) for one pair of modules over the same algebra."""

    def __init__(self, M, N, n_max, d_max=None, res_m=None, res_n=None):
        self.M, self.N = M, N
        self.n_max = n_max
        # one level beyond n_max so the top cocycle condition is available
        self.res_m = res_m or minimal_graded_resolution(M, n_max + 1, d_max)
        if len(self.res_m.levels) < n_max + 2:
            raise TruncationError("resolution too short for the requested ext window")
        self._res_n = res_n
        self.window = self.res_m.window
        self.cells = {}      # (n, d) -> dict(reps, bound, repspace, flat)
        self._lift_cache = {}
        for n in range(n_max + 1):
            cover = self.res_m.cover(n)
            weights = set()
            for blk in cover.blocks:
                for e in range(N.d_max + 1):
                    if N.dim(e):
                        weights.add(blk.degree - e)
            for d in sorted(weights):
                cell = self._compute_cell(n, d)
                if cell is not None:
                    self.cells[(n, d)] = cell

    @property
    def res_n(self):
        if self._res_n is None:
            if self.N is self.M:
                self._res_n = self.res_m
            else:
                self._res_n = minimal_graded_resolution(self.N, self.n_max + 1, self.window)
        return self._res_n

    def _compute_cell(self, n, d):
        f = self.M.field
        cover = self.res_m.cover(n)
        flat = cover.flat_dim(self.N, d)
        if flat == 0:
            return None
        hom_basis = cover.hom_space(self.N, d)
        # cocycles: f(diff(gen)) = 0 for generators of the next level
        rows = []
        if n + 1 < len(self.res_m.levels):
            nxt = self.res_m.cover(n + 1)
            diff = self.res_m.diff(n + 1)
            for li, c, g, coords in _gen_coord_vectors(nxt):
                v = diff.matrix(g).apply(coords)
                tdim = self.N.dim(g - d) if self.N.space.visible(g - d) else 0
                if tdim == 0:
                    continue
                cols = []
                for h in hom_basis:
                    cols.append(_evaluate_images(cover, self.N, d, h, g, v))
                for u in range(tdim):
                    rows.append([col[u] for col in cols])
        if rows:
            zc = Matrix(f, rows, ncols=len(hom_basis)).kernel()
        else:
            zc = Subspace(f, len(hom_basis),
                          [unit_vector(f, len(hom_basis), i) for i in range(len(hom_basis))])
        # express cocycles in flat coordinates
        hom_flat = [cover.flatten_images(self.N, d, h) for h in hom_basis]
        zvecs = []
        for b in zc.basis:
            acc = zero_vector(f, flat)
            for c, hv in zip(b, hom_flat):
                if c:
                    acc = vec_add(f, acc, vec_scale(f, c, hv))
            zvecs.append(acc)
        # boundaries: g . diff_n for g in Hom(P^{-(n-1)}, N)
        bvecs = []
        if n >= 1:
            prev = self.res_m.cover(n - 1)
            diff = self.res_m.diff(n)
            gens = _gen_coord_vectors(cover)
            for h in prev.hom_space(self.N, d):
                images = {}
                for li, blk in enumerate(cover.blocks):
                    tdim = self.N.dim(blk.degree - d) if self.N.space.visible(blk.degree - d) else 0
                    if tdim == 0 or blk.dim == 0:
                        continue
                    cols = []
                    for (lj, c, g, coords) in gens:
                        if lj != li:
                            continue
                        v = diff.matrix(g).apply(coords)
                        cols.append(_evaluate_images(prev, self.N, d, h, g, v))
                    images[li] = Matrix.from_columns(f, cols, nrows=tdim)
                bvecs.append(cover.flatten_images(self.N, d, images))
        bound = Subspace(f, flat, bvecs)
        reduced = [bound.reduce(z) for z in zvecs]
        repspace = Subspace(f, flat, reduced)
        if repspace.dim == 0:
            return None
        return {"flat": flat, "bound": bound, "repspace": repspace,
                "reps": [list(b) for b in repspace.basis]}

    def dim(self, n, d):
        cell = self.cells.get((n, d))
        return 0 if cell is None else len(cell["reps"])

    def dims_table(self):
        return {nd: len(cell["reps"]) for nd, cell in sorted(self.cells.items())}

    def rep_images(self, n, d, i):
        cover = self.res_m.cover(n)
        return cover.unflatten_images(self.N, d, self.cells[(n, d)]["reps"][i])

    def coords_of_flat(self, n, d, flat_vec):
        """Class coordinates of a cocycle given in flat coordinates."""
        cell = self.cells.get((n, d))
        if cell is None:
            if any(flat_vec):
                raise MathFailure("nonzero class in an empty Ext cell")
            return []
        red = cell["bound"].reduce(flat_vec)
        coords = cell["repspace"].coordinates(red)
        if coords is None:
            raise MathFailure("vector is not a cocycle class in this cell")
        return coords

    def coords_of_map(self, n, d, glm):
        """Class coordinates of a cocycle P^{-n} -> N given as a graded map."""
        cover = self.res_m.cover(n)
        f = self.M.field
        images = {}
        for li, c, g, coords in _gen_coord_vectors(cover):
            tdim = self.N.dim(g - d) if self.N.space.visible(g - d) else 0
            if tdim == 0:
                continue
            val = glm.matrix(g).apply(coords)
            images.setdefault(li, []).append(val)
        mats = {li: Matrix.from_columns(f, cols, nrows=len(cols[0]) if cols else 0)
                for li, cols in images.items()}
        flat = cover.flatten_images(self.N, d, mats)
        return self.coords_of_flat(n, d, flat)

    def lift(self, n, d, i):
        """Chain map components F_m: P^{-m}_M -> P^{-(m-n)}_N, m = n..n_max,
        as generator-image dicts; satisfies d F = (-1)^n F d and
        aug . F_n = representative cocycle."""
        key = (n, d, i)
        if key in self._lift_cache:
            return self._lift_cache[key]
        f = self.M.field
        res_n = self.res_n
        comps = {}
        rep = self.rep_images(n, d, i)
        cover_n = self.res_m.cover(n)

        def rep_value(gen):
            li, c, g, coords = gen
            return _evaluate_images(cover_n, self.N, d, rep, g, coords)

        comps[n] = self._solve_component(cover_n, res_n.cover(0).module, d,
                                         rep_value, res_n.diff(0))
        sign = f.one() if n % 2 == 0 else f.neg(f.one())
        for m in range(n, self.n_max):
            prev_comp = comps[m]
            source_cover = self.res_m.cover(m)
            mid_module = res_n.cover(m - n).module
            diff_m1 = self.res_m.diff(m + 1)

            def rhs(gen):
                li, c, g, coords = gen
                v = diff_m1.matrix(g).apply(coords)
                val = _evaluate_images(source_cover, mid_module, d, prev_comp, g, v)
                return vec_scale(f, sign, val)

            comps[m + 1] = self._solve_component(
                self.res_m.cover(m + 1), res_n.cover(m + 1 - n).module, d,
                rhs, res_n.diff(m + 1 - n))
        self._lift_cache[key] = comps
        return comps

    def _solve_component(self, cover, target_mod, d, rhs_fn, post_map):
        """Find A_0-linearly parameterized images with post_map . F = rhs."""
        f = self.M.field
        hom_basis = cover.hom_space(target_mod, d)
        gens = _gen_coord_vectors(cover)
        rows = []
        rhs_flat = []
        for gen in gens:
            li, c, g, coords = gen
            want = rhs_fn(gen)
            tdim = len(want)
            if tdim == 0:
                continue
            cols = []
            for h in hom_basis:
                img = h.get(li)
                val = img.column(c) if img is not None else zero_vector(f, target_mod.dim(g - d))
                cols.append(post_map.matrix(g - d).apply(val))
            for u in range(tdim):
                rows.append([col[u] for col in cols])
                rhs_flat.append(want[u])
        if not hom_basis:
            if any(rhs_flat):
                raise MathFailure("chain lift impossible: empty hom space")
            return {}
        sol = Matrix(f, rows, ncols=len(hom_basis)).solve(rhs_flat) if rows else \
            [f.zero()] * len(hom_basis)
        if sol is None:
            raise MathFailure("chain lift failed (exactness violated?)")
        images = {}
        for cc, h in zip(sol, hom_basis):
            if not cc:
                continue
            for li, m in h.items():
                cur = images.get(li)
                images[li] = m.scale(cc) if cur is None else cur + m.scale(cc)
        return images


def yoneda_product(ext_nl, x, ext_mn, y, ext_ml):
    """Class of x . y for x in Ext(N,L), y in Ext(M,N); bidegrees add.

    x, y, result are (n, d, coords) triples in the respective computations.
    """
    f = ext_ml.M.field
    (n1, d1, xc), (n2, d2, yc) = x, y
    n, d = n1 + n2, d1 + d2
    if n > ext_ml.n_max:
        raise TruncationError("product ext-degree outside certified window")
    cover = ext_ml.res_m.cover(n)
    flat_len = cover.flat_dim(ext_ml.N, d)
    acc = zero_vector(f, flat_len)
    for i, ci in enumerate(xc):
        if not ci:
            continue
        repx = ext_nl.rep_images(n1, d1, i)
        for j, cj in enumerate(yc):
            if not cj:
                continue
            lifty = ext_mn.lift(n2, d2, j)
            comp = lifty.get(n)
            if comp is None:
                raise TruncationError("lift not available at the product level")
            mid_module = ext_mn.res_n.cover(n2).module
            images = {}
            for li, blk in enumerate(cover.blocks):
                tdim = ext_ml.N.dim(blk.degree - d) if ext_ml.N.space.visible(blk.degree - d) else 0
                if tdim == 0 or blk.dim == 0:
                    continue
                cols = []
                for (lj, c, g, coords) in _gen_coord_vectors(cover):
                    if lj != li:
                        continue
                    mid = _evaluate_images(cover, mid_module, d2, comp, g, coords)
                    val = _evaluate_images(ext_nl.res_m.cover(n1), ext_nl.N, d1, repx,
                                           g - d2, mid)
                    cols.append(val)
                images[li] = Matrix.from_columns(f, cols, nrows=tdim)
            flat = cover.flatten_images(ext_ml.N, d, images)
            acc = vec_add(f, acc, vec_scale(f, f.mul(ci, cj), flat))
    return n, d, ext_ml.coords_of_flat(n, d, acc)


def algebra_product(ext, x, y):
    """x * y in the Ext algebra of one module: maps composed left to right
    (x acts first). This is the order under which the twisted-endomorphism
    map and the smash decompositions are multiplicative."""
    return yoneda_product(ext, y, ext, x, ext)


class BigradedAlgebra:
    """Ext^*(M, M) with cellwise bases, Yoneda tensors and an optional H-action."""

    def __init__(self, ext):
        self.ext = ext
        self.cells = sorted(ext.cells)
        self.h_action = None  # (n, d) -> list of Matrix per H basis element

    def dim(self, n, d):
        return self.ext.dim(n, d)

    def dims_table(self):
        return self.ext.dims_table()

    def ext_degree_dims(self):
        out = {}
        for (n, d), cell in self.ext.cells.items():
            out[n] = out.get(n, 0) + len(cell["reps"])
        return out

    def unit_class(self):
        """Coordinates of the identity in the (0, 0) cell."""
        cover = self.ext.res_m.cover(0)
        images = {li: blk.gen_vectors for li, blk in enumerate(cover.blocks)}
        flat = cover.flatten_images(self.ext.N, 0, images)
        return self.ext.coords_of_flat(0, 0, flat)

    def product(self, x, y):
        return algebra_product(self.ext, x, y)

    def basis_elements(self):
        for (n, d) in self.cells:
            for i in range(self.dim(n, d)):
                yield (n, d, i)

    def element(self, n, d, i):
        f = self.ext.M.field
        coords = unit_vector(f, self.dim(n, d), i)
        return (n, d, coords)

    def as_graded_algebra(self, n_max=None, name="E"):
        """Collapse internal degrees: a GradedAlgebra graded by ext-degree."""
        f = self.ext.M.field
        n_max = self.ext.n_max if n_max is None else n_max
        layout = {}
        dims = []
        for n in range(n_max + 1):
            cells = [(d, self.dim(n, d)) for (nn, d) in self.cells if nn == n]
            off = 0
            lay = []
            for d, dim in sorted(cells):
                lay.append((d, off, dim))
                off += dim
            layout[n] = lay
            dims.append(off)
        space = GradedVectorSpace(f, dims, complete=False)
        mult = {}
        for i in range(n_max + 1):
            for j in range(n_max + 1 - i):
                if dims[i] == 0 or dims[j] == 0:
                    continue
                cols = []
                for d1, off1, dim1 in layout[i]:
                    for s in range(dim1):
                        x = self.element(i, d1, s)
                        for d2, off2, dim2 in layout[j]:
                            for t in range(dim2):
                                y = self.element(j, d2, t)
                                n, d, coords = self.product(x, y)
                                out = zero_vector(f, dims[i + j])
                                for dd, offt, dimt in layout[i + j]:
                                    if dd == d:
                                        for z, cz in enumerate(coords):
                                            out[offt + z] = cz
                                cols.append(out)
                # order columns: global source index = (d1-block offset + s) major
                ordered = [None] * (dims[i] * dims[j])
                pos = 0
                for d1, off1, dim1 in layout[i]:
                    for s in range(dim1):
                        for d2, off2, dim2 in layout[j]:
                            for t in range(dim2):
                                ordered[(off1 + s) * dims[j] + (off2 + t)] = cols[pos]
                                pos += 1
                mult[(i, j)] = Matrix.from_columns(f, ordered, nrows=dims[i + j])
        unitc = self.unit_class()
        unit = zero_vector(f, dims[0])
        for dd, offt, dimt in layout[0]:
            if dd == 0:
                for z, cz in enumerate(unitc):
                    unit[offt + z] = cz
        alg = GradedAlgebra(space, unit, mult, name=name)
        return alg, layout


def generated_in_ext_degrees(bga, cutoff, n_max):
    """True iff products of classes of ext-degree <= cutoff span Ext^n, n <= n_max."""
    f = bga.ext.M.field
    alg, layout = bga.as_graded_algebra(n_max)
    spans = {}
    for n in range(n_max + 1):
        dim = alg.dim(n)
        if n <= cutoff:
            spans[n] = Subspace(f, dim, [unit_vector(f, dim, i) for i in range(dim)])
        else:
            spans[n] = Subspace(f, dim, [])
    changed = True
    while changed:
        changed = False
        for i in range(1, n_max + 1):
            for j in range(1, n_max + 1 - i):
                if spans[i].dim == 0 or spans[j].dim == 0:
                    continue
                target = spans[i + j]
                vecs = list(target.basis)
                for u in spans[i].basis:
                    for v in spans[j].basis:
                        vecs.append(alg.multiply(i, j, list(u), list(v)))
                new = Subspace(f, alg.dim(i + j), vecs)
                if new.dim > target.dim:
                    spans[i + j] = new
                    changed = True
    return all(spans[n].dim == alg.dim(n) for n in range(n_max + 1))


def koszul_degree(N, n):
    """Required generator degree of P^{-n} for an N-homogeneous Koszul pattern."""
    if n % 2 == 0:
        return n * N // 2
    return (n - 1) * N // 2 + 1


@dataclass
class KoszulCertificate:
    algebra_name: str
    N: int
    n_max: int
    d_max: int
    verdict: str                 # "true" | "false" | "undetermined"
    generator_degrees: dict
    expected_degrees: dict
    hypothesis_failures: list

    @property
    def is_koszul(self):
        return self.verdict == "true"


def is_N_koszul(alg, N, n_max, d_max=None):
    """Certify the N-Koszul property of a graded algebra within a window.

    Hypotheses (semisimple degree-zero part, generation in degrees 0 and 1)
    are checked and reported; the verdict compares the generator degrees of a
    minimal resolution of the trivial module against the required pattern.
    """
    if N < 2:
        raise HypothesisError("N-homogeneous requires N >= 2")
    hyp = []
    try:
        if not algebra_degree_zero_semisimple(alg):
            hyp.append("degree-zero part is not semisimple")
    except HypothesisError as exc:
        hyp.append(str(exc))
    if not alg.generated_in_degree_one():
        hyp.append("algebra is not generated in degrees 0 and 1")
    if hyp:
        return KoszulCertificate(alg.name, N, n_max, d_max or alg.d_max, "hypothesis-violated",
                                 {}, {}, hyp)
    res = minimal_graded_resolution(alg.trivial_module(), n_max, d_max)
    gen = {n: res.gen_degrees(n) for n in range(n_max + 1)}
    expected = {n: koszul_degree(N, n) for n in range(1, n_max + 1)}
    verdict = "true"
    for n in range(1, n_max + 1):
        want = expected[n]
        got = gen[n]
        if any(g != want for g in got):
            verdict = "false"
            break
        if not got and want > res.window:
            verdict = "undetermined"
    return KoszulCertificate(alg.name, N, n_max, res.window, verdict, gen, expected, [])


def add_membership(X, M, shifts=(0,)):
    """Trace-ideal test: X lies in add(M) iff id_X is a sum of composites
    through M (with the given degree shifts). Returns (bool, witnesses).

    Witnesses are (coefficient, f: X->M shift s, g: M->X shift -s) triples
    with id = sum c * (g . f), i.e. explicit split maps through M^n.
    """
    f = X.field
    pairs = []
    for s in shifts:
        fs = graded_hom(X, M, s)
        gs = graded_hom(M, X, -s)
        for fm in fs:
            for gm in gs:
                pairs.append((s, fm, gm))
    blocks, nflat = _hom_blocks(X, X, 0)
    if nflat == 0:
        return True, []
    idmap = GradedLinearMap(X.space, X.space, 0,
                            {d: Matrix.identity(f, X.dim(d))
                             for d in range(X.d_max + 1) if X.dim(d)})
    id_flat = flatten_map(blocks, idmap)
    cols = [flatten_map(blocks, gm.compose(fm)) for s, fm, gm in pairs]
    if not cols:
        return (not any(id_flat)), []
    mat = Matrix.from_columns(f, cols, nrows=nflat)
    sol = mat.solve(id_flat)
    if sol is None:
        return False, []
    witnesses = [(c, fm, gm) for c, (s, fm, gm) in zip(sol, pairs) if c]
    return True, witnesses
