"""Comodule algebras, coinvariants, the Galois map and its translation table,
the induced H-action on Hom, smash products, and the integral-twisted map
from B-linear maps to A-linear maps into a tensor extension.

The Galois machinery is degreewise: a GaloisData certifies bijectivity of the
canonical map in every degree of its window and never claims more.
"""

from dataclasses import dataclass

from .errors import DimensionError, HypothesisError, MathFailure
from .graded import (AlgebraEmbedding, GradedAlgebra, GradedLinearMap, GradedModule,
                     GradedVectorSpace, TensorOverSub, graded_hom, tensor_over_sub)
from .hopf import dual_hopf, right_integral, swap_matrix, verify_hopf_axioms
from .linalg import Matrix, Subspace, unit_vector, vec_add, vec_scale, zero_vector


class ComoduleAlgebra:
    """Graded algebra with a degree-preserving right coaction into A (x) H.

    Coordinates of A_d (x) H: index a * dim_H + h.
    """

    def __init__(self, algebra, hopf, rho, name=None):
        self.algebra = algebra
        self.hopf = hopf
        self.rho = dict(rho)
        self.name = name or algebra.name
        for d in range(algebra.d_max + 1):
            m = self.rho.get(d)
            n = algebra.dim(d)
            if n == 0:
                continue
            if m is None or m.nrows != n * hopf.dim or m.ncols != n:
                raise DimensionError(f"coaction matrix in degree {d} has wrong shape")

    @property
    def field(self):
        return self.algebra.field

    def rho_matrix(self, d):
        m = self.rho.get(d)
        if m is None:
            return Matrix.zeros(self.field, self.algebra.dim(d) * self.hopf.dim,
                                self.algebra.dim(d))
        return m

    def coact(self, d, avec):
        return self.rho_matrix(d).apply(avec)

    def verify(self):
        """Coassociativity, counit law and multiplicativity of the coaction."""
        A, H, f = self.algebra, self.hopf, self.field
        nH = H.dim
        for d in range(A.d_max + 1):
            n = A.dim(d)
            if n == 0:
                continue
            rho = self.rho_matrix(d)
            I = Matrix.identity(f, n)
            # (id (x) eps) rho = id
            if I.kron(H.counit_matrix()) @ rho != I:
                raise MathFailure(f"coaction counit law fails in degree {d}")
            # (rho (x) id) rho = (id (x) Delta) rho
            lhs = rho.kron(Matrix.identity(f, nH)) @ rho
            rhs = I.kron(H.comul) @ rho
            if lhs != rhs:
                raise MathFailure(f"coaction coassociativity fails in degree {d}")
        # algebra map: rho(ab) = rho(a) rho(b), rho(1) = 1 (x) 1
        one_tensor = zero_vector(f, A.dim(0) * nH)
        for s, c in enumerate(A.unit):
            if c:
                for t, u in enumerate(H.unit):
                    if u:
                        one_tensor[s * nH + t] = f.mul(c, u)
        if self.coact(0, A.unit) != one_tensor:
            raise MathFailure("coaction does not preserve the unit")
        for i in range(A.d_max + 1):
            for j in range(A.d_max + 1 - i):
                ni, nj = A.dim(i), A.dim(j)
                if ni == 0 or nj == 0 or A.dim(i + j) == 0:
                    continue
                lhs = self.rho_matrix(i + j) @ A.mult_matrix(i, j)
                # (m_A (x) m_H) (id (x) swap (x) id) (rho_i (x) rho_j)
                swap = swap_matrix(f, nH, nj)
                mid = Matrix.identity(f, ni).kron(swap).kron(Matrix.identity(f, nH))
                rhs = A.mult_matrix(i, j).kron(H.mult) @ mid @ \
                    self.rho_matrix(i).kron(self.rho_matrix(j))
                if lhs != rhs:
                    raise MathFailure(f"coaction not multiplicative at degrees ({i},{j})")
        return True


@dataclass
class CoinvariantData:
    algebra: GradedAlgebra            # B
    emb: AlgebraEmbedding             # B -> A
    subspaces: dict                   # degree -> Subspace of A_d


def coinvariants(ca):
    """Degreewise kernel of rho - ((x) 1), with the induced multiplication.

    Raises MathFailure when the kernel is not multiplicatively closed, which
    signals a corrupted coaction.
    """
    A, H, f = ca.algebra, ca.hopf, ca.field
    nH = H.dim
    subs = {}
    dims = []
    for d in range(A.d_max + 1):
        n = A.dim(d)
        if n == 0:
            subs[d] = Subspace(f, 0, [])
            dims.append(0)
            continue
        into = Matrix.identity(f, n).kron(H.unit_matrix())
        subs[d] = (ca.rho_matrix(d) - into).kernel()
        dims.append(subs[d].dim)
    space = GradedVectorSpace(f, dims, complete=A.complete)
    mult = {}
    for i in range(A.d_max + 1):
        for j in range(A.d_max + 1 - i):
            bi, bj, bt = subs[i].dim, subs[j].dim, subs[i + j].dim
            if bi == 0 or bj == 0:
                continue
            cols = []
            for s in range(bi):
                x = list(subs[i].basis[s])
                for t in range(bj):
                    y = list(subs[j].basis[t])
                    prod = A.multiply(i, j, x, y)
                    coords = subs[i + j].coordinates(prod)
                    if coords is None:
                        raise MathFailure(
                            f"coinvariants are not closed under multiplication at degrees ({i},{j})")
                    cols.append(coords)
            mult[(i, j)] = Matrix.from_columns(f, cols, nrows=bt)
    unit_coords = subs[0].coordinates(A.unit)
    if unit_coords is None:
        raise MathFailure("unit is not coinvariant")
    B = GradedAlgebra(space, unit_coords, mult, name=f"{A.name}^co")
    maps = {d: Matrix.from_columns(f, [list(b) for b in subs[d].basis], nrows=A.dim(d))
            for d in range(A.d_max + 1)}
    emb = AlgebraEmbedding(B, A, maps)
    return CoinvariantData(B, emb, subs)


@dataclass
class GaloisFailure:
    degree: int
    expected_dim: int
    actual_dim: int
    rank: int

    @property
    def message(self):
        return (f"canonical map fails in degree {self.degree}: "
                f"source dim {self.actual_dim}, target dim {self.expected_dim}, rank {self.rank}")


class GaloisData:
    """Certified Galois structure: beta bijective in every window degree,
    plus the translation table beta^{-1}(1 (x) h) for basis h of H.

    Translation representatives live in A_0 (x) A_0 (the canonical section of
    the degree-zero quotient), so their legs act by degree-zero elements.
    """

    def __init__(self, ca, coinv, tensor, beta, translation):
        self.comodule = ca
        self.coinv = coinv
        self.tensor = tensor
        self.beta = beta
        self.translation = translation

    @property
    def d_max(self):
        return self.tensor.space.d_max

    @property
    def field(self):
        return self.comodule.field

    def translation_pairs(self, hvec):
        """[(coefficient, left basis index, right basis index)] for sum X (x) Y."""
        f = self.field
        n0 = self.comodule.algebra.dim(0)
        acc = zero_vector(f, n0 * n0)
        for k, c in enumerate(hvec):
            if c:
                acc = vec_add(f, acc, vec_scale(f, c, self.translation[k]))
        return [(c, idx // n0, idx % n0) for idx, c in enumerate(acc) if c]


def _beta_matrix(ca, tensor, d):
    """Matrix of beta(x (x) x') = sum x x'_(0) (x) x'_(1) on quotient coordinates."""
    A, H, f = ca.algebra, ca.hopf, ca.field
    nH = H.dim
    q = tensor.quotients[d]
    target = A.dim(d) * nH
    cols = []
    for s in range(q.dim):
        amb = q.lift(unit_vector(f, q.dim, s))
        out = zero_vector(f, target)
        for i, j, off in tensor.blocks[d]:
            ni, nj = A.dim(i), A.dim(j)
            rho_j = ca.rho_matrix(j)
            for u in range(ni):
                for w in range(nj):
                    c = amb[off + u * nj + w]
                    if not c:
                        continue
                    rho_col = rho_j.column(w)
                    for idx, rc in enumerate(rho_col):
                        if not rc:
                            continue
                        a0, h = idx // nH, idx % nH
                        prod = A.multiply(i, j, unit_vector(f, ni, u), unit_vector(f, nj, a0))
                        for z, pz in enumerate(prod):
                            if pz:
                                out[z * nH + h] = f.add(out[z * nH + h], f.mul(f.mul(c, rc), pz))
        cols.append(out)
    return Matrix.from_columns(f, cols, nrows=target)


def galois_map(ca, coinv, d_max=None):
    """Build A (x)_B A, test beta degreewise, and invert at 1 (x) h.

    Returns GaloisData on success and GaloisFailure naming the first bad
    degree otherwise.
    """
    A, H, f = ca.algebra, ca.hopf, ca.field
    regular_B = A.regular_module().restrict(coinv.emb)
    tensor = tensor_over_sub(regular_B, A, coinv.emb, d_max=d_max)
    beta = {}
    for d in range(tensor.space.d_max + 1):
        m = _beta_matrix(ca, tensor, d)
        expected = A.dim(d) * H.dim
        rank = m.rank()
        if tensor.dim(d) != expected or rank != expected:
            return GaloisFailure(d, expected, tensor.dim(d), rank)
        beta[d] = m
    inv0 = beta[0].inverse()
    nH = H.dim
    n0 = A.dim(0)
    translation = []
    q0 = tensor.quotients[0]
    for k in range(nH):
        tgt = zero_vector(f, n0 * nH)
        for s, c in enumerate(A.unit):
            if c:
                tgt[s * nH + k] = c
        coords = inv0.apply(tgt)
        translation.append(q0.lift(coords))
    gd = GaloisData(ca, coinv, tensor, beta, translation)
    _assert_galois_identities(gd)
    return gd


def _assert_galois_identities(gd):
    A, H, f = gd.comodule.algebra, gd.comodule.hopf, gd.field
    nH, n0 = H.dim, A.dim(0)
    for k in range(nH):
        hvec = unit_vector(f, nH, k)
        # beta(translation(h)) = 1 (x) h
        coords = gd.tensor.quotients[0].project(gd.translation[k])
        img = gd.beta[0].apply(coords)
        want = zero_vector(f, n0 * nH)
        for s, c in enumerate(A.unit):
            if c:
                want[s * nH + k] = c
        if img != want:
            raise MathFailure(f"translation table violates beta at basis element {k}")
        # sum X Y = eps(h) 1
        acc = zero_vector(f, n0)
        for c, s, t in gd.translation_pairs(hvec):
            prod = A.multiply(0, 0, unit_vector(f, n0, s), unit_vector(f, n0, t))
            acc = vec_add(f, acc, vec_scale(f, c, prod))
        want = vec_scale(f, H.counit[k], A.unit)
        if acc != want:
            raise MathFailure(f"sum X^h Y^h != eps(h) 1 at basis element {k}")


def hopf_module_iso(M, gd):
    """Mutually inverse maps M (x)_B A <-> M (x) H for a right A-module M.

    Forward: m (x) a -> sum m a_(0) (x) a_(1); inverse uses the translation
    table. Both composites are verified to be the identity.
    """
    ca = gd.comodule
    A, H, f = ca.algebra, ca.hopf, ca.field
    nH = H.dim
    MB = M.restrict(gd.coinv.emb)
    tensor = tensor_over_sub(MB, A, gd.coinv.emb, d_max=gd.d_max)
    W = tensor.space.d_max
    mh_dims = [M.dim(d) * nH for d in range(W + 1)]
    mh_space = GradedVectorSpace(f, mh_dims, complete=tensor.space.complete and M.complete)
    fwd = {}
    inv = {}
    for d in range(W + 1):
        q = tensor.quotients[d]
        cols = []
        for s in range(q.dim):
            amb = q.lift(unit_vector(f, q.dim, s))
            out = zero_vector(f, mh_dims[d])
            for i, j, off in tensor.blocks[d]:
                ni, nj = M.dim(i), A.dim(j)
                rho_j = ca.rho_matrix(j)
                for u in range(ni):
                    for w in range(nj):
                        c = amb[off + u * nj + w]
                        if not c:
                            continue
                        for idx, rc in enumerate(rho_j.column(w)):
                            if not rc:
                                continue
                            a0, h = idx // nH, idx % nH
                            ma = M.act_vec(i, j, unit_vector(f, ni, u), unit_vector(f, nj, a0))
                            for z, pz in enumerate(ma):
                                if pz:
                                    out[z * nH + h] = f.add(out[z * nH + h],
                                                            f.mul(f.mul(c, rc), pz))
            cols.append(out)
        fwd[d] = Matrix.from_columns(f, cols, nrows=mh_dims[d])
        nMd = M.dim(d)
        icols = []
        for s in range(nMd):
            m = unit_vector(f, nMd, s)
            for k in range(nH):
                acc = zero_vector(f, tensor.dim(d))
                for c, xs, yt in gd.translation_pairs(unit_vector(f, nH, k)):
                    mx = M.act_vec(d, 0, m, unit_vector(f, A.dim(0), xs))
                    pure = tensor.pure(d, 0, mx, unit_vector(f, A.dim(0), yt))
                    acc = vec_add(f, acc, vec_scale(f, c, pure))
                icols.append(acc)
        inv[d] = Matrix.from_columns(f, icols, nrows=tensor.dim(d))
        if fwd[d] @ inv[d] != Matrix.identity(f, mh_dims[d]) or \
           inv[d] @ fwd[d] != Matrix.identity(f, tensor.dim(d)):
            raise MathFailure(f"module/comodule roundtrip fails in degree {d}")
    forward = GradedLinearMap(tensor.space, mh_space, 0, fwd)
    backward = GradedLinearMap(mh_space, tensor.space, 0, inv)
    return forward, backward, tensor, mh_space


def check_b_linear(M, N, f, emb):
    """f(m b) = f(m) b for all basis m, b within the window."""
    B = emb.sub
    for d in sorted(f.mats):
        for j in range(B.d_max + 1):
            if B.dim(j) == 0 or M.dim(d) == 0:
                continue
            if not (M.space.visible(d + j) and N.space.visible(d + j + f.shift)):
                continue
            if (d + j) not in f.mats and M.dim(d + j) and N.dim(d + j + f.shift):
                continue
            for s in range(M.dim(d)):
                m = unit_vector(M.field, M.dim(d), s)
                for t in range(B.dim(j)):
                    b = emb.apply(j, unit_vector(B.field, B.dim(j), t))
                    lhs = f.apply(d + j, M.act_vec(d, j, m, b))
                    rhs = N.act_vec(d + f.shift, j, f.apply(d, m), b)
                    if lhs != rhs:
                        return False
    return True


def h_action_on_hom(gd, M, N, fmap, hvec, check=False):
    """(h . f)(m) = sum f(m X_i^{Sh}) Y_i^{Sh} on a B-linear map of A-modules.

    When f is A-linear this is eps(h) f; in general it is only B-linear.
    """
    ca = gd.comodule
    A, H, f = ca.algebra, ca.hopf, ca.field
    if check and not check_b_linear(M, N, fmap, gd.coinv.emb):
        raise MathFailure("map is not B-linear")
    sh = H.S(hvec)
    pairs = gd.translation_pairs(sh)
    n0 = A.dim(0)
    mats = {}
    for d in sorted(fmap.mats):
        sdim = M.dim(d)
        tdim = N.dim(d + fmap.shift)
        if sdim == 0 or tdim == 0:
            continue
        acc = Matrix.zeros(f, tdim, sdim)
        for c, xs, yt in pairs:
            mx = M.right_mult_matrix(d, 0, unit_vector(f, n0, xs))
            ny = N.right_mult_matrix(d + fmap.shift, 0, unit_vector(f, n0, yt))
            acc = acc + (ny @ fmap.matrix(d) @ mx).scale(c)
        mats[d] = acc
    return GradedLinearMap(fmap.source, fmap.target, fmap.shift, mats)


def verify_translation_identities(gd, d_max=None):
    """Galois identities plus the three-fold integral identity.

    Checks, for every basis element h of H:
      (a) beta(translation(h)) = 1 (x) h,
      (b) sum X_i^h Y_i^h = eps(h) 1,
      (c) sum X_i^t X_j^{Sh} (x) Y_j^{Sh} (x) Y_i^t
            = sum X_i^t (x) X_j^h (x) Y_j^h Y_i^t   in (A (x)_B A (x)_B A),
    with t the right integral. Returns a list of (name, passed, witness).
    """
    ca = gd.comodule
    A, H, f = ca.algebra, ca.hopf, ca.field
    nH, n0 = H.dim, A.dim(0)
    results = []
    try:
        _assert_galois_identities(gd)
        results.append(("beta_translation", True, None))
        results.append(("sum_xy_counit", True, None))
    except MathFailure as exc:
        bad = str(exc)
        results.append(("beta_translation" if "beta" in bad else "sum_xy_counit", False, bad))
        return results
    t = right_integral(H).vector
    window = gd.d_max if d_max is None else min(d_max, gd.d_max)
    t2_as_b = gd.tensor.module.restrict(gd.coinv.emb)
    t3 = tensor_over_sub(t2_as_b, A, gd.coinv.emb, d_max=window)
    pairs_t = gd.translation_pairs(t)
    for k in range(nH):
        h = unit_vector(f, nH, k)
        pairs_h = gd.translation_pairs(h)
        pairs_sh = gd.translation_pairs(H.S(h))
        lhs = zero_vector(f, t3.dim(0))
        for c1, s1, t1 in pairs_t:
            for c2, s2, t2 in pairs_sh:
                prod = A.multiply(0, 0, unit_vector(f, n0, s1), unit_vector(f, n0, s2))
                inner = gd.tensor.pure(0, 0, prod, unit_vector(f, n0, t2))
                outer = t3.pure(0, 0, inner, unit_vector(f, n0, t1))
                lhs = vec_add(f, lhs, vec_scale(f, f.mul(c1, c2), outer))
        rhs = zero_vector(f, t3.dim(0))
        for c1, s1, t1 in pairs_t:
            for c3, s3, t3i in pairs_h:
                inner = gd.tensor.pure(0, 0, unit_vector(f, n0, s1), unit_vector(f, n0, s3))
                tail = A.multiply(0, 0, unit_vector(f, n0, t3i), unit_vector(f, n0, t1))
                outer = t3.pure(0, 0, inner, tail)
                rhs = vec_add(f, rhs, vec_scale(f, c3, vec_scale(f, c1, outer)))
        ok = lhs == rhs
        results.append((f"triple_identity[{H.names[k]}]", ok,
                        None if ok else f"basis element {H.names[k]}"))
    return results


class HModuleAlgebra:
    """Graded algebra with a degreewise left H-module-algebra action.

    Action matrices act[d]: H (x) R_d -> R_d with column index h * dim_R + r.
    """

    def __init__(self, algebra, hopf, action):
        self.algebra = algebra
        self.hopf = hopf
        self.action = dict(action)

    @property
    def field(self):
        return self.algebra.field

    def act_matrix(self, d):
        m = self.action.get(d)
        if m is None:
            n = self.algebra.dim(d)
            return Matrix.zeros(self.field, n, self.hopf.dim * n)
        return m

    def act_single(self, d, k):
        """Matrix of r -> h_k . r on R_d."""
        n = self.algebra.dim(d)
        m = self.act_matrix(d)
        return Matrix.from_columns(self.field,
                                   [m.column(k * n + r) for r in range(n)], nrows=n)

    def act_vec(self, d, hvec, rvec):
        f = self.field
        n = self.algebra.dim(d)
        out = zero_vector(f, n)
        for k, c in enumerate(hvec):
            if c:
                out = vec_add(f, out, vec_scale(f, c, self.act_single(d, k).apply(rvec)))
        return out

    def verify(self):
        R, H, f = self.algebra, self.hopf, self.field
        nH = H.dim
        for d in range(R.d_max + 1):
            n = R.dim(d)
            if n == 0:
                continue
            for r in range(n):
                rv = unit_vector(f, n, r)
                if self.act_vec(d, H.unit, rv) != rv:
                    raise MathFailure(f"unit of H does not act as identity in degree {d}")
            for i in range(nH):
                for j in range(nH):
                    hi, hj = unit_vector(f, nH, i), unit_vector(f, nH, j)
                    prod = H.multiply(hi, hj)
                    lhs = self.act_single(d, i) @ self.act_single(d, j)
                    rhs = Matrix.zeros(f, n, n)
                    for k, c in enumerate(prod):
                        if c:
                            rhs = rhs + self.act_single(d, k).scale(c)
                    if lhs != rhs:
                        raise MathFailure(f"H-action is not a module action in degree {d}")
        # module-algebra law h.(rs) = sum (h1.r)(h2.s), h.1 = eps(h) 1
        for k in range(nH):
            h = unit_vector(f, nH, k)
            if self.act_vec(0, h, R.unit) != vec_scale(f, H.counit[k], R.unit):
                raise MathFailure("H-action does not normalize the unit")
            delta = H.delta(h)
            for i in range(R.d_max + 1):
                for j in range(R.d_max + 1 - i):
                    ni, nj = R.dim(i), R.dim(j)
                    if ni == 0 or nj == 0 or R.dim(i + j) == 0:
                        continue
                    for s in range(ni):
                        x = unit_vector(f, ni, s)
                        for t in range(nj):
                            y = unit_vector(f, nj, t)
                            lhs = self.act_vec(i + j, h, R.multiply(i, j, x, y))
                            rhs = zero_vector(f, R.dim(i + j))
                            for idx, c in enumerate(delta):
                                if not c:
                                    continue
                                k1, k2 = idx // nH, idx % nH
                                term = R.multiply(i, j,
                                                  self.act_single(i, k1).apply(x),
                                                  self.act_single(j, k2).apply(y))
                                rhs = vec_add(f, rhs, vec_scale(f, c, term))
                            if lhs != rhs:
                                raise MathFailure(
                                    f"module-algebra law fails at degrees ({i},{j})")
        return True

    def invariants(self, d):
        """Subspace of R_d fixed by the action: h.r = eps(h) r for all h."""
        f = self.field
        n = self.algebra.dim(d)
        rows = []
        for k in range(self.hopf.dim):
            diff = self.act_single(d, k) - Matrix.identity(f, n).scale(self.hopf.counit[k])
            rows.extend(diff.rows)
        if not rows:
            return Subspace(f, n, [unit_vector(f, n, i) for i in range(n)])
        return Matrix(f, rows, ncols=n).kernel()


def smash_product(ma, validate=True, name=None):
    """R # H with product (r # h)(r' # h') = sum r (h1 . r') # h2 h'.

    Coordinates of (R#H)_d = R_d (x) H: index r * dim_H + h.
    """
    if validate:
        ma.verify()
    R, H, f = ma.algebra, ma.hopf, ma.field
    nH = H.dim
    dims = [R.dim(d) * nH for d in range(R.d_max + 1)]
    space = GradedVectorSpace(f, dims, complete=R.complete)
    mult = {}
    for i in range(R.d_max + 1):
        for j in range(R.d_max + 1 - i):
            ni, nj, nt = R.dim(i), R.dim(j), R.dim(i + j)
            if ni == 0 or nj == 0 or nt == 0:
                continue
            cols = []
            for r in range(ni):
                for h in range(nH):
                    delta = H.delta(unit_vector(f, nH, h))
                    for rp in range(nj):
                        for hp in range(nH):
                            out = zero_vector(f, nt * nH)
                            for idx, c in enumerate(delta):
                                if not c:
                                    continue
                                k1, k2 = idx // nH, idx % nH
                                acted = ma.act_single(j, k1).apply(unit_vector(f, nj, rp))
                                front = R.multiply(i, j, unit_vector(f, ni, r), acted)
                                back = H.multiply(unit_vector(f, nH, k2),
                                                  unit_vector(f, nH, hp))
                                for z, fz in enumerate(front):
                                    if not fz:
                                        continue
                                    for w, bw in enumerate(back):
                                        if bw:
                                            out[z * nH + w] = f.add(
                                                out[z * nH + w], f.mul(c, f.mul(fz, bw)))
                            cols.append(out)
            mult[(i, j)] = Matrix.from_columns(f, cols, nrows=nt * nH)
    unit = zero_vector(f, dims[0])
    for s, c in enumerate(R.unit):
        if c:
            for t, u in enumerate(H.unit):
                if u:
                    unit[s * nH + t] = f.mul(c, u)
    alg = GradedAlgebra(space, unit, mult, name=name or f"{R.name}#H")
    if validate:
        alg.validate()
    return alg


def comodule_from_module(ma, validate=True):
    """View a left H-module algebra as a right H*-comodule algebra.

    rho(x) = sum (h_i . x) (x) h^i over dual bases; the coinvariants of the
    result coincide with the H-invariants of the action (asserted).
    """
    if validate:
        ma.verify()
    R, H, f = ma.algebra, ma.hopf, ma.field
    hd = dual_hopf(H, check=False)
    nH = H.dim
    rho = {}
    for d in range(R.d_max + 1):
        n = R.dim(d)
        if n == 0:
            continue
        act = ma.act_matrix(d)
        rows = [[f.zero()] * n for _ in range(n * nH)]
        for rp in range(n):
            for i in range(nH):
                for r in range(n):
                    rows[rp * nH + i][r] = act.rows[rp][i * n + r]
        rho[d] = Matrix(f, rows, ncols=n)
    ca = ComoduleAlgebra(R, hd, rho, name=R.name)
    ca.verify()
    coinv = coinvariants(ca)
    for d in range(R.d_max + 1):
        if coinv.subspaces[d] != ma.invariants(d):
            raise MathFailure(f"coinvariants and invariants disagree in degree {d}")
    return ca, coinv


def xi_map(gd, M, N, fmap, tensor_na=None, check=False):
    """A-linear map p -> sum f(p X^t_i) (x) Y^t_i into N (x)_B A.

    fmap must be B-linear; t is the right integral of H. Returns the tensor
    module and the resulting A-linear GradedLinearMap.
    """
    ca = gd.comodule
    A, H, f = ca.algebra, ca.hopf, ca.field
    if check and not check_b_linear(M, N, fmap, gd.coinv.emb):
        raise MathFailure("map is not B-linear")
    if tensor_na is None:
        tensor_na = tensor_over_sub(N.restrict(gd.coinv.emb), A, gd.coinv.emb, d_max=gd.d_max)
    t = right_integral(H).vector
    pairs = gd.translation_pairs(t)
    n0 = A.dim(0)
    mats = {}
    for d in sorted(fmap.mats):
        sdim = M.dim(d)
        tdeg = d + fmap.shift
        if sdim == 0 or not tensor_na.space.visible(tdeg) or tensor_na.dim(tdeg) == 0:
            continue
        cols = []
        for s in range(sdim):
            p = unit_vector(f, sdim, s)
            acc = zero_vector(f, tensor_na.dim(tdeg))
            for c, xs, yt in pairs:
                px = M.act_vec(d, 0, p, unit_vector(f, n0, xs))
                fpx = fmap.apply(d, px)
                pure = tensor_na.pure(tdeg, 0, fpx, unit_vector(f, n0, yt))
                acc = vec_add(f, acc, vec_scale(f, c, pure))
            cols.append(acc)
        mats[d] = Matrix.from_columns(f, cols, nrows=tensor_na.dim(tdeg))
    out = GradedLinearMap(M.space, tensor_na.space, fmap.shift, mats)
    return tensor_na, out


def xi_bijectivity(gd, M, N, shift):
    """Rank test: xi as a map Hom_B(M,N) -> Hom_A(M, N (x)_B A) per shift.

    Returns (dim source, dim target, bijective).
    """
    A = gd.comodule.algebra
    MB = M.restrict(gd.coinv.emb)
    NB = N.restrict(gd.coinv.emb)
    source = graded_hom(MB, NB, shift)
    tensor_na = tensor_over_sub(NB, A, gd.coinv.emb, d_max=gd.d_max)
    target = graded_hom(M, tensor_na.module, shift)
    if not source and not target:
        return 0, 0, True
    if not target or not source:
        return len(source), len(target), False
    from .graded import _hom_blocks, flatten_map
    blocks, nflat = _hom_blocks(M, tensor_na.module, shift)
    target_coords = Matrix(gd.field, [flatten_map(blocks, g) for g in target], ncols=nflat)
    cols = []
    for fmap in source:
        _, img = xi_map(gd, M, N, fmap, tensor_na=tensor_na)
        vec = flatten_map(blocks, img)
        coords = target_coords.transpose().solve(vec)
        if coords is None:
            raise MathFailure("xi image leaves the A-linear hom space")
        cols.append(coords)
    mat = Matrix.from_columns(gd.field, cols, nrows=len(target))
    bij = len(source) == len(target) and mat.rank() == len(target)
    return len(source), len(target), bij
