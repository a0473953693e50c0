"""End-to-end verification procedures, one per result in scope.

Each verifier produces a VerificationReport: pass/fail per check with
witnesses, the window it was certified in, and a hard distinction between
mathematical failures and unmet hypotheses (the latter exit differently in
the CLI and must never read as counterexamples).
"""

import time
from dataclasses import dataclass, field as dc_field

from .comodule import (ComoduleAlgebra, GaloisData, GaloisFailure, HModuleAlgebra,
                       coinvariants, comodule_from_module, galois_map, h_action_on_hom,
                       xi_map)
from .equivariant import BFreeStructure, EquivariantExt, _solve_on_cover
from .errors import HypothesisError, MathFailure
from .ext import (BigradedAlgebra, ExtComputation, add_membership,
                  algebra_product, generated_in_ext_degrees, is_N_koszul,
                  yoneda_product, _gen_coord_vectors)
from .graded import (GradedAlgebra, GradedLinearMap, GradedModule, GradedVectorSpace,
                     graded_hom, module_concentrated, tensor_over_sub)
from .hopf import HopfAlgebra, dual_hopf, is_cosemisimple, is_semisimple
from .linalg import Matrix, Subspace, unit_vector, vec_add, vec_scale, zero_vector


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: str = ""

    def as_dict(self):
        d = {"name": self.name, "passed": self.passed}
        if self.details:
            d["details"] = self.details
        return d


@dataclass
class VerificationReport:
    tag: str
    fixture: str
    window: dict
    field: str
    mode: str = "dims"
    checks: list = dc_field(default_factory=list)
    hypothesis_failures: list = dc_field(default_factory=list)
    elapsed: float = 0.0
    extras: dict = dc_field(default_factory=dict)

    @property
    def passed(self):
        return not self.hypothesis_failures and all(c.passed for c in self.checks)

    @property
    def hypothesis_violated(self):
        return bool(self.hypothesis_failures)

    def add(self, name, passed, details=""):
        self.checks.append(CheckResult(name, bool(passed), details))
        return bool(passed)

    def as_dict(self, include_timing=False):
        d = {
            "tag": self.tag,
            "fixture": self.fixture,
            "window": self.window,
            "field": self.field,
            "mode": self.mode,
            "passed": self.passed,
            "checks": [c.as_dict() for c in self.checks],
            "hypothesis_failures": list(self.hypothesis_failures),
        }
        if include_timing:
            d["elapsed_seconds"] = round(self.elapsed, 3)
        return d


def _field_name(field):
    return "Q" if field.char == 0 else f"F_{field.char}"


def _report(tag, fx, n_max, d_max, mode="dims"):
    return VerificationReport(tag, fx.id, {"n_max": n_max, "d_max": d_max},
                              _field_name(fx.algebra.field), mode)


def _require_galois(fx, rep):
    if not isinstance(fx.galois, GaloisData):
        rep.hypothesis_failures.append(
            f"fixture is not a Galois extension: {fx.galois.message}")
        return False
    return True


def _require_semisimple(fx, rep, cosemisimple=False):
    ok = True
    if not is_semisimple(fx.hopf):
        rep.hypothesis_failures.append("H is not semisimple")
        ok = False
    if cosemisimple and not is_cosemisimple(fx.hopf):
        rep.hypothesis_failures.append("H is not cosemisimple")
        ok = False
    return ok


# --------------------------------------------------------------------------
# chain-level helper: the tensored resolution P (x)_B A


class TensorResolution:
    """T_m = P^{-m} (x)_B A with differential d (x) id, an A-projective
    resolution of M (x)_B A, plus the twisted endomorphisms used by the
    endomorphism-ring isomorphism."""

    def __init__(self, gd, res_a, levels):
        self.gd = gd
        self.res_a = res_a
        emb = gd.coinv.emb
        A = gd.comodule.algebra
        self.tensors = []
        for m in range(levels):
            pb = res_a.cover(m).module.restrict(emb)
            self.tensors.append(tensor_over_sub(pb, A, emb, d_max=gd.d_max))
        mb = res_a.module.restrict(emb)
        self.target = tensor_over_sub(mb, A, emb, d_max=gd.d_max)
        self.diffs = []
        for m in range(levels):
            prev = self.target if m == 0 else self.tensors[m - 1]
            self.diffs.append(self._induced(self.tensors[m], prev, res_a.diff(m)))

    def _induced(self, src, dst, base_map):
        """q (x) a -> base_map(q) (x) a on quotient coordinates."""
        f = self.gd.field
        A = self.gd.comodule.algebra
        mats = {}
        for d in range(src.space.d_max + 1):
            sdim = src.dim(d)
            tdim = dst.dim(d)
            cols = []
            for s in range(sdim):
                amb = src.quotients[d].lift(unit_vector(f, sdim, s))
                acc = zero_vector(f, tdim)
                for i, j, off in src.blocks[d]:
                    ni, nj = src.M.dim(i), A.dim(j)
                    for u in range(ni):
                        img = base_map.matrix(i).apply(unit_vector(f, ni, u))
                        if not any(img):
                            continue
                        for w in range(nj):
                            c = amb[off + u * nj + w]
                            if not c:
                                continue
                            pure = dst.pure(i, j, img, unit_vector(f, nj, w))
                            acc = vec_add(f, acc, vec_scale(f, c, pure))
                cols.append(acc)
            mats[d] = Matrix.from_columns(f, cols, nrows=tdim)
        return GradedLinearMap(src.space, dst.space, 0, mats)

    def twist(self, glm, src_level, dst_level, hvec):
        """phi(g # h): q (x) a -> sum g(q) X_i^h (x) Y_i^h a between T levels.

        glm is a B-linear map from the level-src cover to the level-dst cover
        (its shift is minus the internal weight)."""
        f = self.gd.field
        A = self.gd.comodule.algebra
        src, dst = self.tensors[src_level], self.tensors[dst_level]
        dst_amod = self.res_a.cover(dst_level).module
        pairs = self.gd.translation_pairs(hvec)
        n0 = A.dim(0)
        weight = -glm.shift
        mats = {}
        for d in range(src.space.d_max + 1):
            sdim = src.dim(d)
            tdeg = d - weight
            if not dst.space.visible(tdeg) or sdim == 0:
                continue
            tdim = dst.dim(tdeg)
            cols = []
            for s in range(sdim):
                amb = src.quotients[d].lift(unit_vector(f, sdim, s))
                acc = zero_vector(f, tdim)
                for i, j, off in src.blocks[d]:
                    ni, nj = src.M.dim(i), A.dim(j)
                    gp = glm.matrix(i)
                    for u in range(ni):
                        gq = gp.apply(unit_vector(f, ni, u))
                        if not any(gq):
                            continue
                        for w in range(nj):
                            c = amb[off + u * nj + w]
                            if not c:
                                continue
                            for cc, xs, yt in pairs:
                                gx = dst_amod.act_vec(i - weight, 0, gq,
                                                      unit_vector(f, n0, xs))
                                ya = A.multiply(0, j, unit_vector(f, n0, yt),
                                                unit_vector(f, nj, w))
                                pure = dst.pure(i - weight, j, gx, ya)
                                acc = vec_add(f, acc,
                                              vec_scale(f, f.mul(c, cc), pure))
                cols.append(acc)
            mats[d] = Matrix.from_columns(f, cols, nrows=tdim)
        return GradedLinearMap(src.space, dst.space, glm.shift, mats)

    def comparison_from(self, res_min, levels):
        """A-linear chain maps u_m: P_min^{-m} -> T_m lifting the identity."""
        u = []
        for m in range(levels):
            cover = res_min.cover(m)
            target = self.tensors[m].module
            if m == 0:
                aug_min = res_min.diff(0)
                aug_t = self.diffs[0]

                def rhs(gen, _a=aug_min):
                    li, c, g, coords = gen
                    return _a.matrix(g).apply(coords)
                # target of the condition is M (x)_B A; identify via aug_t
                images = _solve_on_cover(cover, target, 0, rhs, aug_t)
            else:
                prev = u[m - 1]
                dmin = res_min.diff(m)

                def rhs(gen, _p=prev, _d=dmin):
                    li, c, g, coords = gen
                    return _p.matrix(g).apply(_d.matrix(g).apply(coords))
                images = _solve_on_cover(cover, target, 0, rhs, self.diffs[m])
            u.append(cover.map_from_gen_images(target, 0, images))
        return u


def _transported_chain_component(eq, n, d, i, m):
    """Component F_m: P^{-m} -> P^{-(m-n)} of a B-linear chain representative
    of the i-th basis class of Ext_B^{n,d}, transported from the B-side lift."""
    lifts = eq.ext_b.lift(n, d, i)
    comp = lifts.get(m)
    if comp is None:
        raise MathFailure("chain component outside the lifted range")
    res_b = eq.res_b
    full = res_b.cover(m).map_from_gen_images(res_b.cover(m - n).module, d, comp)
    return eq.u[m - n].compose(full).compose(eq.w[m])


# --------------------------------------------------------------------------
# the endomorphism-ring isomorphism (strong and weak modes)


def verify_thm1(fx, module_name="regular", n_max=0, mode="map"):
    """Ext_A(M (x)_B A, M (x)_B A) against Ext_B(M, M) # H.

    Weak mode checks bidegree dimension equality; map mode also builds the
    twisted-endomorphism map on chain representatives and checks that it is
    bijective per bidegree and multiplicative on all basis pairs.
    """
    rep = _report("thm1", fx, n_max, fx.galois.d_max if isinstance(fx.galois, GaloisData) else 0, mode)
    t0 = time.time()
    if not _require_galois(fx, rep):
        return rep
    gd = fx.galois
    M = fx.modules[module_name]
    H = fx.hopf
    f = fx.algebra.field

    eq = EquivariantExt(gd, M, n_max)
    tres = TensorResolution(gd, eq.res_a, n_max + 2)
    MA = tres.target.module
    ext_lhs = ExtComputation(MA, MA, n_max)

    cells = sorted(set(eq.ext_b.cells) | set(ext_lhs.cells))
    for (n, d) in cells:
        lhs = ext_lhs.dim(n, d)
        rhs = eq.ext_b.dim(n, d) * H.dim
        rep.add(f"dim Ext_A^{n},{d}(M(x)A) = dim Ext_B^{n},{d}(M) * dim H",
                lhs == rhs, f"{lhs} vs {rhs}")
    if mode != "map":
        rep.elapsed = time.time() - t0
        return rep

    u_cmp = tres.comparison_from(ext_lhs.res_m, n_max + 1)

    def phi_class(n, d, i, k):
        F_n = _transported_chain_component(eq, n, d, i, n)
        phi_n = tres.twist(F_n, n, 0, unit_vector(f, H.dim, k))
        glm = tres.diffs[0].compose(phi_n).compose(u_cmp[n])
        return ext_lhs.coords_of_map(n, d, glm)

    phi_cells = {}
    for (n, d) in sorted(eq.ext_b.cells):
        dim_b = eq.ext_b.dim(n, d)
        cols = []
        for i in range(dim_b):
            for k in range(H.dim):
                cols.append(phi_class(n, d, i, k))
        mat = Matrix.from_columns(f, cols, nrows=ext_lhs.dim(n, d))
        phi_cells[(n, d)] = mat
        ok = mat.nrows == mat.ncols and mat.rank() == mat.nrows
        rep.add(f"phi bijective on bidegree ({n},{d})", ok,
                f"{mat.ncols} -> rank {mat.rank()} of {mat.nrows}")

    basis = [(n, d, i, k) for (n, d) in sorted(eq.ext_b.cells)
             for i in range(eq.ext_b.dim(n, d)) for k in range(H.dim)]
    mult_ok, pairs_checked = True, 0
    for x in basis:
        for y in basis:
            n, d = x[0] + y[0], x[1] + y[1]
            if n > n_max:
                continue
            combo = _smash_product_class(eq, H, x, y)
            tdim = ext_lhs.dim(n, d)
            via_phi = zero_vector(f, tdim)
            if (n, d) in phi_cells:
                flat = zero_vector(f, eq.ext_b.dim(n, d) * H.dim)
                for (j, k), c in combo.items():
                    flat[j * H.dim + k] = c
                via_phi = phi_cells[(n, d)].apply(flat)
            elif combo:
                mult_ok = False
            xi_img = (x[0], x[1], list(phi_cells[(x[0], x[1])].column(x[2] * H.dim + x[3])))
            yi_img = (y[0], y[1], list(phi_cells[(y[0], y[1])].column(y[2] * H.dim + y[3])))
            _, _, prod = algebra_product(ext_lhs, xi_img, yi_img)
            if list(prod) != list(via_phi):
                mult_ok = False
            pairs_checked += 1
    rep.add(f"phi multiplicative on all {pairs_checked} basis pairs", mult_ok)
    rep.elapsed = time.time() - t0
    return rep


def _smash_product_class(eq, H, xk, yk):
    """(x # h)(y # k) = sum x (h_(1) . y) # h_(2) k in Ext_B # H,
    as {(target basis index, H index): coefficient}."""
    f = eq.M.field
    (n1, d1, i1, k1) = xk
    (n2, d2, i2, k2) = yk
    out = {}
    nH = H.dim
    delta = H.delta(unit_vector(f, nH, k1))
    acts = eq.action_matrices(n2, d2)
    for idx, c in enumerate(delta):
        if not c:
            continue
        h1, h2 = idx // nH, idx % nH
        hy = acts[h1].column(i2)
        if not any(hy):
            continue
        back = H.multiply(unit_vector(f, nH, h2), unit_vector(f, nH, k2))
        x = (n1, d1, unit_vector(f, eq.ext_b.dim(n1, d1), i1))
        y = (n2, d2, list(hy))
        _, _, prod = algebra_product(eq.ext_b, x, y)
        for j, pj in enumerate(prod):
            if not pj:
                continue
            for k, bk in enumerate(back):
                if bk:
                    key = (j, k)
                    out[key] = f.add(out.get(key, f.zero()), f.mul(c, f.mul(pj, bk)))
    return {k: v for k, v in out.items() if v}


# --------------------------------------------------------------------------
# invariants identity Ext_A = (Ext_B)^H


def verify_invariants_identity(fx, module_name="regular", n_max=0, samples=6):
    """Ext_A(M,M) equals the H-invariant subalgebra of Ext_B(M,M), computed
    independently on both sides, with exact basis match per bidegree."""
    rep = _report("invariants", fx, n_max,
                  fx.galois.d_max if isinstance(fx.galois, GaloisData) else 0)
    t0 = time.time()
    if not _require_galois(fx, rep):
        return rep
    if not _require_semisimple(fx, rep):
        return rep
    M = fx.modules[module_name]
    eq = EquivariantExt(fx.galois, M, n_max)
    f = fx.algebra.field
    for (n, d) in sorted(set(eq.ext_b.cells) | set(eq.ext_a.cells)):
        inv = eq.invariant_subspace(n, d)
        res_img = eq.restriction_image(n, d)
        rep.add(f"bidegree ({n},{d}): invariants = image of Ext_A, dim {eq.ext_a.dim(n, d)}",
                inv == res_img and inv.dim == eq.ext_a.dim(n, d),
                f"dim inv {inv.dim}, dim Ext_A {eq.ext_a.dim(n, d)}")
    # multiplicativity of the restriction on sampled basis pairs
    cells_a = sorted(eq.ext_a.cells)
    ok, count = True, 0
    for (n1, d1) in cells_a:
        for (n2, d2) in cells_a:
            if n1 + n2 > n_max or count >= samples:
                continue
            x = (n1, d1, unit_vector(f, eq.ext_a.dim(n1, d1), 0))
            y = (n2, d2, unit_vector(f, eq.ext_a.dim(n2, d2), eq.ext_a.dim(n2, d2) - 1))
            _, _, prod_a = algebra_product(eq.ext_a, x, y)
            res_prod = eq.restriction_matrix(n1 + n2, d1 + d2).apply(prod_a)
            rx = (n1, d1, list(eq.restriction_matrix(n1, d1).apply(x[2])))
            ry = (n2, d2, list(eq.restriction_matrix(n2, d2).apply(y[2])))
            _, _, prod_b = algebra_product(eq.ext_b, rx, ry)
            if list(prod_b) != list(res_prod):
                ok = False
            count += 1
    rep.add(f"restriction multiplicative on {count} sampled pairs", ok)
    rep.elapsed = time.time() - t0
    return rep


# --------------------------------------------------------------------------
# Hopf-module smash decomposition of Ext_B


def _hopf_module_check(fx, M, rho_m, rep):
    """rho_M(m a) = sum m_(0) a_(0) (x) m_(1) a_(1) on all visible basis pairs."""
    ca = fx.comodule
    A, H, f = fx.algebra, fx.hopf, fx.algebra.field
    nH = H.dim
    for dm in range(M.d_max + 1):
        nm = M.dim(dm)
        if nm == 0:
            continue
        for da in range(A.d_max + 1):
            na = A.dim(da)
            if na == 0 or not M.space.visible(dm + da) or M.dim(dm + da) == 0:
                continue
            rho_target = rho_m.get(dm + da)
            rho_src = rho_m.get(dm)
            for s in range(nm):
                m = unit_vector(f, nm, s)
                for t in range(na):
                    a = unit_vector(f, na, t)
                    ma = M.act_vec(dm, da, m, a)
                    lhs = rho_target.apply(ma)
                    rhs = zero_vector(f, len(lhs))
                    rm = rho_src.apply(m)
                    ra = ca.rho_matrix(da).apply(a)
                    for im, cm in enumerate(rm):
                        if not cm:
                            continue
                        m0, m1 = im // nH, im % nH
                        for ia, cai in enumerate(ra):
                            if not cai:
                                continue
                            a0, a1 = ia // nH, ia % nH
                            m0a0 = M.act_vec(dm, da, unit_vector(f, nm, m0),
                                             unit_vector(f, na, a0))
                            m1a1 = H.multiply(unit_vector(f, nH, m1),
                                              unit_vector(f, nH, a1))
                            for z, vz in enumerate(m0a0):
                                if not vz:
                                    continue
                                for w, hw in enumerate(m1a1):
                                    if hw:
                                        idx = z * nH + w
                                        rhs[idx] = f.add(rhs[idx],
                                                         f.mul(f.mul(cm, cai), f.mul(vz, hw)))
                    if lhs != rhs:
                        return rep.add("Hopf-module compatibility", False,
                                       f"fails at M degree {dm}, A degree {da}")
    return rep.add("Hopf-module compatibility", True)


def verify_cor1(fx, module_name="A0", rho_m=None, n_max=2, samples=20):
    """Ext_B(M,M) against Ext_A(M,M) # H* for a Hopf module M.

    Checks bidegree dimension equality cell by cell and multiplicativity of
    the induced map Psi(x # alpha) = res(x) * [L_alpha] on sampled pairs,
    where L_alpha(m) = sum m_(0) alpha(m_(1)).
    """
    rep = _report("cor1", fx, n_max,
                  fx.galois.d_max if isinstance(fx.galois, GaloisData) else 0)
    t0 = time.time()
    if not _require_galois(fx, rep):
        return rep
    if not _require_semisimple(fx, rep, cosemisimple=True):
        return rep
    M = fx.modules[module_name]
    H = fx.hopf
    f = fx.algebra.field
    nH = H.dim
    if rho_m is None:
        rho_m = fx.extras.get("hopf_module_coactions", {}).get(module_name)
    if rho_m is None:
        raise HypothesisError(f"module {module_name!r} carries no Hopf-module coaction")
    if not _hopf_module_check(fx, M, rho_m, rep):
        rep.hypothesis_failures.append("module is not a Hopf module")
        return rep

    eq = EquivariantExt(fx.galois, M, n_max)
    cells = sorted(set(eq.ext_b.cells) | set(eq.ext_a.cells))
    for (n, d) in cells:
        lhs = eq.ext_b.dim(n, d)
        rhs = eq.ext_a.dim(n, d) * nH
        rep.add(f"dim Ext_B^{n},{d} = dim Ext_A^{n},{d} * dim H*", lhs == rhs,
                f"{lhs} vs {rhs}")

    # L_alpha for the dual basis: B-linear maps M -> M, class in Ext^0_B
    l_classes = []
    l_maps = []
    for k in range(nH):
        mats = {}
        for dm in range(M.d_max + 1):
            nm = M.dim(dm)
            if nm == 0:
                continue
            rho = rho_m[dm]
            rows = [[rho.rows[v * nH + k][w] for w in range(nm)] for v in range(nm)]
            mats[dm] = Matrix(f, rows, ncols=nm)
        glm = GradedLinearMap(M.space, M.space, 0, mats)
        l_maps.append(glm)
        full = GradedLinearMap(eq.res_a.cover(0).module.space, M.space, 0,
                               {d: glm.matrix(d) @ eq.res_a.diff(0).matrix(d)
                                for d in range(eq.res_a.cover(0).module.d_max + 1)})
        l_classes.append(eq.p_map_to_class(0, 0, full))

    hd = dual_hopf(H, check=False)

    def psi_matrix(n, d):
        """Matrix of Psi on the (n, d) cell: Ext_A (x) H* -> Ext_B."""
        dim_a = eq.ext_a.dim(n, d)
        cols = []
        res = eq.restriction_matrix(n, d)
        for i in range(dim_a):
            x = (n, d, list(res.column(i)))
            for k in range(nH):
                lk = (0, 0, l_classes[k])
                _, _, prod = algebra_product(eq.ext_b, x, lk)
                cols.append(prod)
        return Matrix.from_columns(f, cols, nrows=eq.ext_b.dim(n, d))

    psi_cells = {}
    for (n, d) in sorted(eq.ext_a.cells):
        mat = psi_matrix(n, d)
        psi_cells[(n, d)] = mat
        ok = mat.nrows == mat.ncols and mat.rank() == mat.nrows
        rep.add(f"Psi bijective on bidegree ({n},{d})", ok)

    # H*-action on Ext_A classes: alpha . y = [L_{a1}] res(y) [L_{S* a2}],
    # verified to land back in the image of Ext_A
    def dual_action_on_a(k, n, d, ycoords):
        res = eq.restriction_matrix(n, d)
        ry = res.apply(ycoords)
        acc = zero_vector(f, eq.ext_b.dim(n, d))
        for idx, c in enumerate(hd.delta(unit_vector(f, nH, k))):
            if not c:
                continue
            a1, a2 = idx // nH, idx % nH
            sa2 = hd.S(unit_vector(f, nH, a2))
            l_s = zero_vector(f, eq.ext_b.dim(0, 0))
            for z, cz in enumerate(sa2):
                if cz:
                    l_s = vec_add(f, l_s, vec_scale(f, cz, l_classes[z]))
            _, _, mid = algebra_product(eq.ext_b, (0, 0, l_s), (n, d, list(ry)))
            _, _, term = algebra_product(eq.ext_b, (n, d, mid), (0, 0, l_classes[a1]))
            acc = vec_add(f, acc, vec_scale(f, c, term))
        # pull back through the restriction (must be in its image)
        sol = eq.restriction_matrix(n, d).solve(acc)
        if sol is None:
            raise MathFailure("H*-action left the image of Ext_A")
        return sol

    # sampled multiplicativity of Psi
    ok, count = True, 0
    basis_a = [(n, d, i, k) for (n, d) in sorted(eq.ext_a.cells)
               for i in range(eq.ext_a.dim(n, d)) for k in range(nH)]
    for x in basis_a:
        for y in basis_a:
            if count >= samples:
                break
            n, d = x[0] + y[0], x[1] + y[1]
            if n > n_max:
                continue
            (n1, d1, i1, k1), (n2, d2, i2, k2) = x, y
            # (x # a)(y # b) = sum x (a1 . y) # a2 b over Delta_{H*}(a)
            lhs = zero_vector(f, eq.ext_b.dim(n, d))
            for idx, c in enumerate(hd.delta(unit_vector(f, nH, k1))):
                if not c:
                    continue
                a1, a2 = idx // nH, idx % nH
                ay = dual_action_on_a(a1, n2, d2, unit_vector(f, eq.ext_a.dim(n2, d2), i2))
                _, _, xy = algebra_product(
                    eq.ext_a, (n1, d1, unit_vector(f, eq.ext_a.dim(n1, d1), i1)),
                    (n2, d2, ay))
                back = hd.multiply(unit_vector(f, nH, a2), unit_vector(f, nH, k2))
                for j, pj in enumerate(xy):
                    if not pj:
                        continue
                    for k3, bk in enumerate(back):
                        if bk:
                            flat = zero_vector(f, eq.ext_a.dim(n, d) * nH)
                            flat[j * nH + k3] = f.one()
                            term = psi_cells[(n, d)].apply(flat)
                            lhs = vec_add(f, lhs,
                                          vec_scale(f, f.mul(c, f.mul(pj, bk)), term))
            px = psi_cells[(n1, d1)].column(i1 * nH + k1)
            py = psi_cells[(n2, d2)].column(i2 * nH + k2)
            _, _, rhs = algebra_product(eq.ext_b, (n1, d1, list(px)),
                                        (n2, d2, list(py)))
            if list(lhs) != list(rhs):
                ok = False
            count += 1
        if count >= samples:
            break
    rep.add(f"Psi multiplicative on {count} sampled pairs", ok)
    rep.elapsed = time.time() - t0
    return rep


# --------------------------------------------------------------------------
# the tri-equivalence


def _end_b_as_module_algebra(fx, M):
    """End_B(M) as an algebra in degree 0 with its translation H-action."""
    gd = fx.galois
    H = fx.hopf
    f = fx.algebra.field
    emb = gd.coinv.emb
    MB = M.restrict(emb)
    basis = graded_hom(MB, MB, 0)
    n = len(basis)
    blocks_src = sorted(d for d in range(M.d_max + 1) if M.dim(d))

    def flat(glm):
        out = []
        for d in blocks_src:
            m = glm.matrix(d)
            for r in m.rows:
                out.extend(r)
        return out

    coord_mat = Matrix.from_columns(f, [flat(b) for b in basis],
                                    nrows=len(flat(basis[0]))) if basis else None

    def coords(glm):
        sol = coord_mat.solve(flat(glm))
        if sol is None:
            raise MathFailure("composite left End_B(M) (bug)")
        return sol

    mult_cols = []
    for x in basis:
        for y in basis:
            mult_cols.append(coords(y.compose(x)))
    mult = Matrix.from_columns(f, mult_cols, nrows=n)
    idmap = GradedLinearMap(M.space, M.space, 0,
                            {d: Matrix.identity(f, M.dim(d)) for d in blocks_src})
    unit = coords(idmap)
    space = GradedVectorSpace(f, (n,), complete=True)
    alg = GradedAlgebra(space, unit, {(0, 0): mult}, name="End_B(M)")
    act_cols = []
    for k in range(H.dim):
        hvec = unit_vector(f, H.dim, k)
        for b in basis:
            hb = h_action_on_hom(gd, M, M, b, hvec)
            act_cols.append(coords(hb))
    act = Matrix.from_columns(f, act_cols, nrows=n)
    ma = HModuleAlgebra(alg, H, {0: act})
    return ma, basis


def _graded_galois_verdict(ma, window=None):
    """Galois verdict for the H*-extension attached to an H-module algebra."""
    ca, coinv = comodule_from_module(ma, validate=True)
    gd = galois_map(ca, coinv, d_max=window)
    return gd, coinv


def verify_thm3(fx, module_name="regular", n_max=2):
    """The three equivalent conditions, each evaluated independently:
    (i) M (x)_B A lies in add(M); (ii) End_B(M)/End_A(M) is Galois over H*;
    (iii) Ext_B(M,M)/Ext_A(M,M) is a graded Galois extension over H*.
    Disagreement between the verdicts is a hard failure."""
    rep = _report("thm3", fx, n_max,
                  fx.galois.d_max if isinstance(fx.galois, GaloisData) else 0)
    t0 = time.time()
    if not _require_galois(fx, rep):
        return rep
    if not _require_semisimple(fx, rep):
        return rep
    gd = fx.galois
    M = fx.modules[module_name]
    f = fx.algebra.field
    emb = gd.coinv.emb

    # (i) add-membership via the trace ideal
    MA = tensor_over_sub(M.restrict(emb), fx.algebra, emb, d_max=gd.d_max).module
    verdict_i, witness = add_membership(MA, M)
    rep.add("(i) M(x)A in add(M)", True,
            f"membership {verdict_i} with {len(witness)} witness composites")

    # (ii) End_B(M) / End_A(M) over H*
    ma, _ = _end_b_as_module_algebra(fx, M)
    gd2, coinv2 = _graded_galois_verdict(ma)
    verdict_ii = isinstance(gd2, GaloisData)
    detail = "" if verdict_ii else gd2.message
    rep.add("(ii) End_B(M)/End_A(M) Galois over H*", True,
            f"galois {verdict_ii} {detail}".strip())

    # (iii) Ext_B(M,M) / Ext_A(M,M) graded over the ext-degree
    eq = EquivariantExt(gd, M, n_max)
    bga = BigradedAlgebra(eq.ext_b)
    E, layout = bga.as_graded_algebra(n_max, name="ExtB")
    act = {}
    for n in range(n_max + 1):
        dimn = E.dim(n)
        if dimn == 0:
            continue
        cols = []
        for k in range(fx.hopf.dim):
            for d, off, dim in layout[n]:
                mats = eq.action_matrices(n, d)
                for i in range(dim):
                    col = zero_vector(f, dimn)
                    for z, cz in enumerate(mats[k].column(i)):
                        col[off + z] = cz
                    cols.append(col)
        act[n] = Matrix.from_columns(f, cols, nrows=dimn)
    ma3 = HModuleAlgebra(E, fx.hopf, act)
    gd3, coinv3 = _graded_galois_verdict(ma3)
    verdict_iii = isinstance(gd3, GaloisData)
    detail = "" if verdict_iii else gd3.message
    rep.add("(iii) Ext_B/Ext_A graded Galois over H*", True,
            f"galois {verdict_iii} {detail}".strip())

    agree = verdict_i == verdict_ii == verdict_iii
    rep.add("verdicts agree", agree, f"(i)={verdict_i} (ii)={verdict_ii} (iii)={verdict_iii}")
    if not agree:
        raise MathFailure("tri-equivalence verdicts disagree; implementation bug")
    rep.extras = {"verdicts": (verdict_i, verdict_ii, verdict_iii),
                  "E_package": (ma3, gd3, coinv3), "end_package": (ma, gd2, coinv2)}
    rep.elapsed = time.time() - t0
    return rep


def verify_lem1(fx, module_name="regular", n_max=2):
    """Degree-zero slice of a certified graded Galois extension is Galois."""
    rep = _report("lem1", fx, n_max,
                  fx.galois.d_max if isinstance(fx.galois, GaloisData) else 0)
    t0 = time.time()
    base = verify_thm3(fx, module_name, n_max)
    if base.hypothesis_violated:
        rep.hypothesis_failures.extend(base.hypothesis_failures)
        return rep
    ma3, gd3, _ = base.extras["E_package"]
    if not isinstance(gd3, GaloisData):
        rep.hypothesis_failures.append(
            "E/D is not a graded Galois extension; the slice statement does not apply")
        rep.elapsed = time.time() - t0
        return rep
    E = ma3.algebra
    f = E.field
    n0 = E.dim(0)
    space = GradedVectorSpace(f, (n0,), complete=True)
    e0 = GradedAlgebra(space, E.unit, {(0, 0): E.mult_matrix(0, 0)}, name="E0")
    ma0 = HModuleAlgebra(e0, ma3.hopf, {0: ma3.act_matrix(0)})
    gd0, _ = _graded_galois_verdict(ma0)
    rep.add("degree-zero slice is Galois", isinstance(gd0, GaloisData),
            "" if isinstance(gd0, GaloisData) else gd0.message)
    rep.elapsed = time.time() - t0
    return rep


# --------------------------------------------------------------------------
# the integral-twisted chain isomorphism


def verify_lem2(fx, module_name="regular", n_max=1, weights=None, samples=4):
    """Chain-level checks of the map xi(f)(p) = sum f(p X^t_i) (x) Y^t_i:
    bijectivity per Hom-component, compatibility with the Hom differentials,
    right End_A-linearity and left twisted-smash linearity on sampled triples.
    """
    rep = _report("lem2", fx, n_max,
                  fx.galois.d_max if isinstance(fx.galois, GaloisData) else 0)
    t0 = time.time()
    if not _require_galois(fx, rep):
        return rep
    gd = fx.galois
    M = fx.modules[module_name]
    f = fx.algebra.field
    emb = gd.coinv.emb
    eq = EquivariantExt(gd, M, n_max)
    res = eq.res_a
    levels = n_max + 2
    tres = TensorResolution(gd, res, levels)

    def hom_b_basis(m, l, weight):
        """Full B-linear maps P^{-m} -> P^{-l} of the given weight."""
        bf = eq.bfree[m]
        target = eq.pb_modules[l]
        return [bf.map_from_gen_images(target, weight, imgs)
                for imgs in bf.hom_basis(target, weight)]

    # xi on each available Hom component
    checked = []
    for m in range(levels - 1):
        for l in range(min(m + 1, levels - 1)):
            weight_set = weights
            if weight_set is None:
                weight_set = sorted({g - g2 for g, _ in eq.bfree[m].gens
                                     for g2 in range(res.cover(l).module.d_max + 1)
                                     if res.cover(l).module.dim(g2)})
                weight_set = [w for w in weight_set if abs(w) <= gd.d_max][:4]
            for w in weight_set:
                source = hom_b_basis(m, l, w)
                cover = res.cover(m)
                try:
                    target_basis = cover.hom_space(tres.tensors[l].module, w)
                except Exception:
                    continue
                if not source and not target_basis:
                    continue
                cols = []
                ok = True
                for fmap in source:
                    _, img = xi_map(gd, res.cover(m).module, res.cover(l).module,
                                    fmap, tensor_na=tres.tensors[l])
                    flat = _flat_on_gens(cover, tres.tensors[l].module, w, img)
                    cols.append(flat)
                tmat = Matrix.from_columns(
                    f, [cover.flatten_images(tres.tensors[l].module, w, h)
                        for h in target_basis],
                    nrows=cover.flat_dim(tres.tensors[l].module, w))
                coords = []
                for flat in cols:
                    sol = tmat.solve(flat)
                    if sol is None:
                        ok = False
                        break
                    coords.append(sol)
                bij = ok and len(source) == len(target_basis) and (
                    not coords or Matrix.from_columns(f, coords, nrows=len(target_basis)).rank() == len(target_basis))
                checked.append(((m, l, w), bij, len(source)))
    total = sum(c for _, _, c in checked)
    rep.add(f"xi bijective on {len(checked)} Hom components ({total} basis maps)",
            all(ok for _, ok, _ in checked),
            "; ".join(f"P^-{m}->P^-{l} weight {w}: {'ok' if ok else 'FAIL'}"
                      for (m, l, w), ok, _ in checked if not ok) or "all components")

    # differential compatibility: both components of xi(delta f) = delta(xi f)
    rep.add("xi compatible with the Hom differentials",
            _xi_differential_check(gd, tres, res, hom_b_basis, samples),
            "post- and pre-composition with d checked on sampled components")

    # right End_A-linearity: xi(f . g) = xi(f) . g for A-linear chain maps g
    ok_right = True
    gmaps = []
    for (n, d) in sorted(eq.ext_a.cells):
        for i in range(min(eq.ext_a.dim(n, d), 2)):
            lifts = eq.ext_a.lift(n, d, i)
            for m in sorted(lifts):
                full = res.cover(m).map_from_gen_images(
                    res.cover(m - n).module, d, lifts[m])
                gmaps.append((m, m - n, full))
            break
    count_r = 0
    for m_src, m_dst, g in gmaps[:samples]:
        for fmap in hom_b_basis(m_dst, 0, 0)[:2]:
            _, xi_f = xi_map(gd, res.cover(m_dst).module, res.cover(0).module,
                             fmap, tensor_na=tres.tensors[0])
            fg = fmap.compose(g)
            _, xi_fg = xi_map(gd, res.cover(m_src).module, res.cover(0).module,
                              fg, tensor_na=tres.tensors[0])
            if xi_f.compose(g) != xi_fg:
                ok_right = False
            count_r += 1
    rep.add(f"xi right End_A-linear on {count_r} sampled pairs", ok_right)

    # left smash-linearity: xi((g # h) . f) = phi(g # h) . xi(f)
    H = fx.hopf
    ok_left, count_l = True, 0
    gsample = hom_b_basis(0, 0, 0)[:2]
    fsample = hom_b_basis(0, 0, 0)[:2]
    for g in gsample:
        for k in range(H.dim):
            hvec = unit_vector(f, H.dim, k)
            for fmap in fsample:
                hf = h_action_on_hom(gd, res.cover(0).module, res.cover(0).module,
                                     fmap, hvec)
                ghf = g.compose(hf)
                _, xi_ghf = xi_map(gd, res.cover(0).module, res.cover(0).module,
                                   ghf, tensor_na=tres.tensors[0])
                _, xi_f = xi_map(gd, res.cover(0).module, res.cover(0).module,
                                 fmap, tensor_na=tres.tensors[0])
                phi_g = tres.twist(g, 0, 0, hvec)
                if phi_g.compose(xi_f) != xi_ghf:
                    ok_left = False
                count_l += 1
    rep.add(f"xi left smash-linear on {count_l} sampled triples", ok_left)
    rep.elapsed = time.time() - t0
    return rep


def _flat_on_gens(cover, target_mod, weight, glm):
    f = cover.algebra.field
    out = []
    for li, c, g, coords in _gen_coord_vectors(cover):
        tdeg = g - weight
        tdim = target_mod.dim(tdeg) if target_mod.space.visible(tdeg) else 0
        if tdim == 0:
            continue
        out.extend(glm.matrix(g).apply(coords))
    return out


def _xi_differential_check(gd, tres, res, hom_b_basis, samples):
    """delta(xi f) = xi(delta f), componentwise.

    The differential delta f = d . f - (-1)^{|f|} f . d has a post-composed
    and a pre-composed component; xi must intertwine both (the sign factors
    out), so the check is xi(d . f) = (d (x) id) . xi(f) and
    xi(f . d) = xi(f) . d on sampled basis maps.
    """
    ok = True
    levels = len(tres.tensors)
    count = 0
    for m in range(levels - 1):
        for l in range(min(m + 1, levels)):
            for fmap in hom_b_basis(m, l, 0)[:2]:
                if count >= samples:
                    return ok
                _, xi_f = xi_map(gd, res.cover(m).module, res.cover(l).module,
                                 fmap, tensor_na=tres.tensors[l])
                if l >= 1:
                    df = res.diff(l).compose(fmap)
                    _, xi_df = xi_map(gd, res.cover(m).module,
                                      res.cover(l - 1).module, df,
                                      tensor_na=tres.tensors[l - 1])
                    if xi_df != tres.diffs[l].compose(xi_f):
                        ok = False
                if m + 1 < len(res.levels):
                    fd = fmap.compose(res.diff(m + 1))
                    _, xi_fd = xi_map(gd, res.cover(m + 1).module,
                                      res.cover(l).module, fd,
                                      tensor_na=tres.tensors[l])
                    if xi_fd != xi_f.compose(res.diff(m + 1)):
                        ok = False
                count += 1
    return ok


# --------------------------------------------------------------------------
# graded endomorphisms of E over D


def verify_lem4_ii(fx, module_name="regular", n_max=2):
    """(a) E # H -> graded End(E_D) bijective per degree; (b) E_D is a
    finitely generated projective graded D-module (trace-ideal witness)."""
    rep = _report("lem4", fx, n_max,
                  fx.galois.d_max if isinstance(fx.galois, GaloisData) else 0)
    t0 = time.time()
    base = verify_thm3(fx, module_name, n_max)
    if base.hypothesis_violated:
        rep.hypothesis_failures.extend(base.hypothesis_failures)
        return rep
    ma3, gd3, coinv3 = base.extras["E_package"]
    if not isinstance(gd3, GaloisData):
        rep.hypothesis_failures.append("E/D is not graded Galois; lemma hypotheses unmet")
        rep.elapsed = time.time() - t0
        return rep
    _lem4_checks_on_package(rep, ma3, coinv3, n_max)
    rep.elapsed = time.time() - t0
    return rep


def _lem4_checks_on_package(rep, ma, coinv, n_max):
    """Shared body: natural map bijectivity and projectivity of E over D."""
    E = ma.algebra
    H = ma.hopf
    f = E.field
    D = coinv.algebra
    emb = coinv.emb
    ED = E.regular_module().restrict(emb)
    nH = H.dim
    for n in range(min(n_max, E.d_max) + 1):
        hom_n = graded_hom(ED, ED, n)
        src_dim = E.dim(n) * nH
        cols = []
        blocks = sorted(d for d in range(ED.d_max + 1) if ED.dim(d))

        def flat(glm):
            out = []
            for d in blocks:
                if not ED.space.visible(d + n) or ED.dim(d + n) == 0:
                    continue
                for r in glm.matrix(d).rows:
                    out.extend(r)
            return out

        if hom_n:
            hom_mat = Matrix.from_columns(f, [flat(h) for h in hom_n],
                                          nrows=len(flat(hom_n[0])))
        for e_idx in range(E.dim(n)):
            for k in range(nH):
                mats = {}
                for d in blocks:
                    if not ED.space.visible(d + n) or ED.dim(d + n) == 0:
                        continue
                    colsm = []
                    for j in range(E.dim(d)):
                        he = ma.act_single(d, k).apply(unit_vector(f, E.dim(d), j))
                        colsm.append(E.multiply(n, d, unit_vector(f, E.dim(n), e_idx), he))
                    mats[d] = Matrix.from_columns(f, colsm, nrows=E.dim(n + d))
                glm = GradedLinearMap(ED.space, ED.space, n, mats)
                sol = hom_mat.solve(flat(glm)) if hom_n else None
                if sol is None and hom_n:
                    rep.add(f"(a) natural map lands in End_D in degree {n}", False)
                    return
                cols.append(sol if hom_n else [])
        tdim = len(hom_n)
        mat = Matrix.from_columns(f, cols, nrows=tdim)
        ok = src_dim == tdim and (tdim == 0 or mat.rank() == tdim)
        rep.add(f"(a) E#H -> End(E_D) bijective in degree {n}", ok,
                f"source {src_dim}, target {tdim}")
    shifts = tuple(range(0, min(n_max, E.d_max) + 1))
    is_proj, witness = add_membership(ED, D.regular_module(), shifts=shifts)
    rep.add("(b) E is a f.g. projective graded D-module", is_proj,
            f"{len(witness)} witness composites through shifted copies of D")


# --------------------------------------------------------------------------
# Koszulity transfer


def verify_thm4(fx, N=2, n_max=4, d_max=None, with_converse=None):
    """Koszulity transfers from the coinvariants to the total algebra.

    Runs the N-Koszul certificate on B and on A and checks the implication
    inside the window; when B_0 = k the converse and the intermediate facts
    (Ext^1 concentration in degree 1, Ext^2 in degree N, generation of
    Ext_A(A_0, A_0) in ext-degrees 0,1,2) are verified as well.
    """
    rep = _report("thm4", fx, n_max, d_max if d_max is not None else
                  (fx.galois.d_max if isinstance(fx.galois, GaloisData) else 0))
    t0 = time.time()
    if not _require_galois(fx, rep):
        return rep
    if not _require_semisimple(fx, rep, cosemisimple=True):
        return rep
    A = fx.algebra
    B = fx.coinv.algebra
    cert_b = is_N_koszul(B, N, n_max, d_max)
    cert_a = is_N_koszul(A, N, n_max, d_max)
    if cert_b.hypothesis_failures:
        rep.hypothesis_failures.extend(f"B: {h}" for h in cert_b.hypothesis_failures)
    if cert_a.hypothesis_failures:
        rep.hypothesis_failures.extend(f"A: {h}" for h in cert_a.hypothesis_failures)
    if rep.hypothesis_violated:
        return rep
    rep.add(f"B is {N}-Koszul to n_max={n_max}", cert_b.is_koszul,
            f"generator degrees {cert_b.generator_degrees}")
    rep.add(f"A is {N}-Koszul to n_max={n_max}", cert_a.is_koszul,
            f"generator degrees {cert_a.generator_degrees}")
    if cert_b.is_koszul and cert_a.verdict == "false":
        raise MathFailure("Koszulity fails to transfer inside the window; bug "
                          "or genuine counterexample, stopping hard")
    if with_converse is None:
        with_converse = B.dim(0) == 1
    if with_converse:
        rep.add("converse direction (A Koszul => B Koszul) in window",
                (not cert_a.is_koszul) or cert_b.verdict != "false",
                f"A: {cert_a.verdict}, B: {cert_b.verdict}")
        a0 = fx.modules.get("A0") or A.trivial_module()
        eq = EquivariantExt(fx.galois, a0,  2)
        conc1 = all(d == 1 for (n, d) in eq.ext_b.cells if n == 1)
        conc2 = all(d == N for (n, d) in eq.ext_b.cells if n == 2)
        rep.add("Ext^1_B(A_0,A_0) concentrated in internal degree 1", conc1,
                str([(n, d) for (n, d) in sorted(eq.ext_b.cells) if n == 1]))
        rep.add(f"Ext^2_B(A_0,A_0) concentrated in internal degree {N}", conc2,
                str([(n, d) for (n, d) in sorted(eq.ext_b.cells) if n == 2]))
        bga = BigradedAlgebra(eq.ext_a)
        gen = generated_in_ext_degrees(bga, 2, 2)
        rep.add("Ext_A(A_0,A_0) generated in ext-degrees 0,1,2", gen)
    rep.elapsed = time.time() - t0
    return rep
