"""Canonical example builders used by tests, acceptance runs and the CLI.

Every fixture verifies its own structure on construction: Hopf axioms,
comodule-algebra laws, Galois bijectivity and the translation identities.
A failure here is a hard error, not a report.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .comodule import (ComoduleAlgebra, GaloisData, GaloisFailure, HModuleAlgebra,
                       coinvariants, galois_map, smash_product)
from .errors import HypothesisError, InputError, MathFailure
from .fields import QQ
from .graded import GradedAlgebra, GradedModule, GradedVectorSpace, module_concentrated
from .hopf import HopfAlgebra, is_cosemisimple, is_semisimple, verify_hopf_axioms
from .linalg import Matrix, unit_vector, vec_add, vec_scale, zero_vector
from .presentations import AlgebraPresentation, Arrow, realize_presentation


@dataclass
class Fixture:
    id: str
    comodule: ComoduleAlgebra
    coinv: object
    galois: object                    # GaloisData or GaloisFailure
    modules: dict
    hopf: HopfAlgebra
    notes: str = ""
    extras: dict = dc_field(default_factory=dict)

    @property
    def algebra(self):
        return self.comodule.algebra

    @property
    def galois_ok(self):
        return isinstance(self.galois, GaloisData)


def cyclic_group_hopf(n, field):
    """Group algebra of Z_n with its standard Hopf structure."""
    f = field
    z, o = f.zero(), f.one()
    mult = [[z] * (n * n) for _ in range(n)]
    for i in range(n):
        for j in range(n):
            mult[(i + j) % n][i * n + j] = o
    unit = [o] + [z] * (n - 1)
    comul = [[z] * n for _ in range(n * n)]
    for k in range(n):
        comul[k * n + k][k] = o
    counit = [o] * n
    S = [[z] * n for _ in range(n)]
    for k in range(n):
        S[(-k) % n][k] = o
    names = ["1"] + [f"g{'' if n == 2 else i}" for i in range(1, n)]
    h = HopfAlgebra(f, mult, unit, comul, counit, S, names=names)
    rep = verify_hopf_axioms(h)
    if not rep.passed:
        raise MathFailure("group algebra failed Hopf axioms (bug)")
    return h


def algebra_from_hopf(h, name="A"):
    """The underlying algebra of a Hopf algebra, graded in degree 0."""
    space = GradedVectorSpace(h.field, (h.dim,), complete=True)
    return GradedAlgebra(space, list(h.unit), {(0, 0): h.mult}, name=name)


def _finalize_fixture(fid, ca, modules, hopf, notes="", extras=None, require_galois=True):
    ca.verify()
    coinv = coinvariants(ca)
    gd = galois_map(ca, coinv)
    if require_galois and isinstance(gd, GaloisFailure):
        raise MathFailure(f"fixture {fid}: {gd.message}")
    return Fixture(fid, ca, coinv, gd, modules, hopf, notes, extras or {})


def fixture_group_algebra(n, field=QQ):
    """A = H = k[Z_n] coacting on itself by the comultiplication; B = k."""
    h = cyclic_group_hopf(n, field)
    A = algebra_from_hopf(h, name=f"kZ{n}")
    rho = {0: h.comul}
    ca = ComoduleAlgebra(A, h, rho, name=A.name)
    modules = {"regular": A.regular_module()}
    f = field
    if n >= 1:
        # one-dimensional module where the generator acts by a root of unity
        # (only +-1 available over Q); include trivial and, for n = 2, sign
        triv = module_concentrated(A, 1, Matrix(f, [[f.one()] * n]), name="k")
        modules["trivial"] = triv
        if n == 2:
            sgn = module_concentrated(A, 1, Matrix(f, [[f.one(), f.neg(f.one())]]), name="sgn")
            modules["sgn"] = sgn
            z, o = f.zero(), f.one()
            both = module_concentrated(
                A, 2,
                Matrix(f, [[o, o, z, z], [z, z, o, f.neg(o)]]), name="k+sgn")
            modules["k+sgn"] = both
    fx = _finalize_fixture(f"kz{n}", ca, modules, h,
                           notes=f"group algebra of Z_{n}, coaction = comultiplication")
    fx.extras["hopf_module_coactions"] = {"regular": {0: h.comul}}
    return fx


def trivial_action(algebra, h):
    """h acts through its counit (every element fixed)."""
    f = algebra.field
    act = {}
    for d in range(algebra.d_max + 1):
        n = algebra.dim(d)
        if n == 0:
            continue
        cols = []
        for k in range(h.dim):
            for r in range(n):
                cols.append(vec_scale(f, h.counit[k], unit_vector(f, n, r)))
        act[d] = Matrix.from_columns(f, cols, nrows=n)
    return HModuleAlgebra(algebra, h, act)


def sign_action_by_degree(algebra, h2):
    """Z_2 acting on a graded algebra by parity of the degree (x -> -x)."""
    f = algebra.field
    act = {}
    for d in range(algebra.d_max + 1):
        n = algebra.dim(d)
        if n == 0:
            continue
        sign = f.one() if d % 2 == 0 else f.neg(f.one())
        cols = []
        # H basis is (1, g); column index is h * dim_R + r
        for r in range(n):
            cols.append(unit_vector(f, n, r))
        for r in range(n):
            cols.append(vec_scale(f, sign, unit_vector(f, n, r)))
        act[d] = Matrix.from_columns(f, cols, nrows=n)
    return HModuleAlgebra(algebra, h2, act)


def truncated_polynomial_algebra(nvars, d_max, field=QQ, nilpotency=None):
    """k[x_1..x_n] (commutative) realized to d_max; optionally mod x^N each."""
    names = ["x", "y", "z"][:nvars]
    arrows = [Arrow(nm, "v", "v") for nm in names]
    rels = []
    one = Fraction(1)
    for i in range(nvars):
        for j in range(i + 1, nvars):
            rels.append([(one, (names[i], names[j])), (-one, (names[j], names[i]))])
    if nilpotency:
        for nm in names:
            rels.append([(one, tuple([nm] * nilpotency))])
    pres = AlgebraPresentation(["v"], arrows, rels)
    return realize_presentation(pres, d_max, field=field)


def fixture_smash(ma, fid, validate=True):
    """A = R # H with the coaction id (x) Delta; coinvariants recover R."""
    R, H, f = ma.algebra, ma.hopf, ma.field
    A = smash_product(ma, validate=validate, name=f"{R.name}#H")
    nH = H.dim
    rho = {}
    for d in range(A.d_max + 1):
        n = R.dim(d)
        if n == 0:
            continue
        cols = []
        for r in range(n):
            for h in range(nH):
                out = zero_vector(f, n * nH * nH)
                for idx, c in enumerate(H.delta(unit_vector(f, nH, h))):
                    if c:
                        h1, h2 = idx // nH, idx % nH
                        out[(r * nH + h1) * nH + h2] = c
                cols.append(out)
        rho[d] = Matrix.from_columns(f, cols, nrows=n * nH * nH)
    ca = ComoduleAlgebra(A, H, rho, name=A.name)
    fx = _finalize_fixture(fid, ca, {"regular": A.regular_module()}, H,
                           notes="smash product with coaction id (x) Delta",
                           extras={"base": R, "action": ma})
    # coinvariants must recover R degreewise
    B = fx.coinv.algebra
    if tuple(B.space.dims) != tuple(R.dim(d) for d in range(B.d_max + 1)):
        raise MathFailure(f"fixture {fid}: coinvariants of the smash do not match the base")
    return fx


# --------------------------------------------------------------------------
# the quiver fixture: a graded Hopf algebra on 2 vertices and 4 arrows


QUIVER_DELTA = {
    "e0": [(1, ("e0",), ("e0",)), (1, ("e1",), ("e1",))],
    "e1": [(1, ("e1",), ("e0",)), (1, ("e0",), ("e1",))],
    "x0": [(1, ("e0",), ("x0",)), (1, ("e1",), ("x1",)), (1, ("x0",), ("e0",)), (1, ("x1",), ("e1",))],
    "y0": [(1, ("e0",), ("y0",)), (1, ("e1",), ("y1",)), (1, ("y0",), ("e0",)), (1, ("y1",), ("e1",))],
    "x1": [(1, ("e1",), ("x0",)), (1, ("x1",), ("e0",)), (1, ("e0",), ("x1",)), (1, ("x0",), ("e1",))],
    "y1": [(1, ("e1",), ("y0",)), (1, ("y1",), ("e0",)), (1, ("e0",), ("y1",)), (1, ("y0",), ("e1",))],
}

QUIVER_EPS = {"e0": 1, "e1": 0, "x0": 0, "x1": 0, "y0": 0, "y1": 0}

QUIVER_ANTIPODE = {
    "e0": [(1, ("e0",))], "e1": [(1, ("e1",))],
    "x0": [(-1, ("x1",))], "y0": [(-1, ("y1",))],
    "x1": [(-1, ("x0",))], "y1": [(-1, ("y0",))],
}


def quiver_presentation():
    one = Fraction(1)
    return AlgebraPresentation(
        ["v0", "v1"],
        [Arrow("x0", "v0", "v1"), Arrow("y0", "v0", "v1"),
         Arrow("x1", "v1", "v0"), Arrow("y1", "v1", "v0")],
        [[(one, ("x0", "y1")), (-one, ("y0", "x1"))],
         [(one, ("x1", "y0")), (-one, ("y1", "x0"))]],
    )


class SplitTensor:
    """Element of the degree-d part of A (x) A stored per (i, j) split."""

    __slots__ = ("blocks",)

    def __init__(self, blocks=None):
        self.blocks = dict(blocks or {})

    def add_term(self, f, i, j, vec_i, vec_j, coeff):
        di = len(vec_j)
        key = (i, j)
        size = len(vec_i) * len(vec_j)
        tgt = self.blocks.setdefault(key, zero_vector(f, size))
        for s, a in enumerate(vec_i):
            if a:
                for t, b in enumerate(vec_j):
                    if b:
                        idx = s * di + t
                        tgt[idx] = f.add(tgt[idx], f.mul(coeff, f.mul(a, b)))

    def product(self, other, alg):
        f = alg.field
        out = SplitTensor()
        for (i, j), u in self.blocks.items():
            for (k, l), v in other.blocks.items():
                if not alg.visible(i + k) or not alg.visible(j + l):
                    continue
                ni, nj = alg.dim(i), alg.dim(j)
                nk, nl = alg.dim(k), alg.dim(l)
                for idx1, c1 in enumerate(u):
                    if not c1:
                        continue
                    s, t = idx1 // nj, idx1 % nj
                    for idx2, c2 in enumerate(v):
                        if not c2:
                            continue
                        sp, tp = idx2 // nl, idx2 % nl
                        left = alg.multiply(i, k, unit_vector(f, ni, s), unit_vector(f, nk, sp))
                        right = alg.multiply(j, l, unit_vector(f, nj, t), unit_vector(f, nl, tp))
                        out.add_term(f, i + k, j + l, left, right, f.mul(c1, c2))
        out.prune()
        return out

    def prune(self):
        self.blocks = {k: v for k, v in self.blocks.items() if any(v)}

    def __eq__(self, other):
        a = {k: tuple(v) for k, v in self.blocks.items() if any(v)}
        b = {k: tuple(v) for k, v in other.blocks.items() if any(v)}
        return a == b

    def flipped(self, alg):
        f = alg.field
        out = SplitTensor()
        for (i, j), u in self.blocks.items():
            nj = alg.dim(j)
            ni = alg.dim(i)
            for idx, c in enumerate(u):
                if c:
                    s, t = idx // nj, idx % nj
                    out.add_term(f, j, i, unit_vector(f, nj, t), unit_vector(f, ni, s), c)
        out.prune()
        return out


class GradedBialgebra:
    """Degree-preserving Delta/eps/S on a realized graded algebra, within window.

    Delta values are stored per basis element as SplitTensors; eps is a row on
    A_0; the antipode is one matrix per degree.
    """

    def __init__(self, realized, delta_vals, eps_row, antipode_mats):
        self.realized = realized
        self.algebra = realized.algebra
        self.delta_vals = delta_vals      # dict d -> list[SplitTensor] per basis elt
        self.eps_row = eps_row
        self.antipode = antipode_mats     # dict d -> Matrix

    def delta_component(self, d, i, j):
        """Matrix of the (i, j)-component of Delta on A_d."""
        f = self.algebra.field
        n = self.algebra.dim(d)
        size = self.algebra.dim(i) * self.algebra.dim(j)
        cols = []
        for s in range(n):
            st = self.delta_vals[d][s]
            cols.append(list(st.blocks.get((i, j), zero_vector(f, size))))
        return Matrix.from_columns(f, cols, nrows=size)

    def eps_value(self, d, vec):
        f = self.algebra.field
        if d != 0:
            return f.zero()
        acc = f.zero()
        for c, e in zip(vec, self.eps_row):
            if c and e:
                acc = f.add(acc, f.mul(c, e))
        return acc


def _extend_multiplicatively(realized, gen_tables, field):
    """Delta on every path class by multiplying the generator images."""
    alg = realized.algebra
    pres = realized.presentation

    def resolve(name):
        return _resolve_gen(realized, name)

    arrow_delta = {}
    vertex_delta = {}
    for name, terms in gen_tables.items():
        st = SplitTensor()
        for coeff, pa, pb in terms:
            da, va = resolve(pa[0]) if len(pa) == 1 else realized.class_of_terms([(Fraction(1), pa)])
            db, vb = resolve(pb[0]) if len(pb) == 1 else realized.class_of_terms([(Fraction(1), pb)])
            st.add_term(field, da, db, va, vb, field.of(coeff))
        if name in pres.arrow_index:
            arrow_delta[name] = st
        else:
            vertex_delta[name] = st
    # path cache: delta of a path = product of arrow deltas (vertex delta for e_v)
    cache = {}

    def delta_of_path(p):
        key = (p.src, p.arrows)
        if key in cache:
            return cache[key]
        if not p.arrows:
            st = vertex_delta[_vertex_gen_name(pres, p.src)]
        else:
            arrows = pres.arrows
            st = arrow_delta[arrows[p.arrows[0]].name]
            for ai in p.arrows[1:]:
                st = st.product(arrow_delta[arrows[ai].name], alg)
        cache[key] = st
        return st

    return delta_of_path


def _vertex_gen_name(pres, vname):
    # generator tables name idempotents e0, e1, ... in vertex declaration order
    return f"e{pres.vertices.index(vname)}"


def _resolve_gen(realized, name):
    pres = realized.presentation
    if name.startswith("e") and name[1:].isdigit() and name not in pres.arrow_index:
        return 0, realized.vertex_idempotent(pres.vertices[int(name[1:])])
    return realized.generator_class(name)


def build_quiver_bialgebra(field, d_max, delta_tables=QUIVER_DELTA,
                           eps_table=QUIVER_EPS, antipode_tables=QUIVER_ANTIPODE):
    """Realize the quiver algebra and install the generator coproduct tables.

    Returns (GradedBialgebra, list of check results). Each check is
    (name, passed, witness). Checks: well-definedness of Delta and S on the
    relations, coassociativity, counit law, multiplicativity of Delta,
    antipode law, and the informational cocommutativity flag.
    """
    realized = realize_presentation(quiver_presentation(), d_max, field=field)
    alg = realized.algebra
    pres = realized.presentation
    f = field
    checks = []

    delta_of_path = _extend_multiplicatively(realized, delta_tables, f)

    # S on generators, extended antimultiplicatively over paths
    s_gen = {}
    for name, terms in antipode_tables.items():
        deg = 0 if name not in pres.arrow_index else pres.arrows[pres.arrow_index[name]].degree
        vec = zero_vector(f, alg.dim(deg))
        for coeff, pa in terms:
            dd, vv = _resolve_gen(realized, pa[0])
            if dd != deg:
                raise InputError("antipode table is not degree-preserving")
            vec = vec_add(f, vec, vec_scale(f, f.of(coeff), vv))
        s_gen[name] = (deg, vec)

    def s_of_path(p):
        if not p.arrows:
            return s_gen[_vertex_gen_name(pres, p.src)][1]
        deg, acc = s_gen[pres.arrows[p.arrows[-1]].name]
        for ai in reversed(p.arrows[:-1]):
            dd, vv = s_gen[pres.arrows[ai].name]
            acc = alg.multiply(deg, dd, acc, vv)
            deg += dd
        return acc

    # antipode law on the generators, straight from the tables: for every
    # generator u, sum S(u_(1)) u_(2) = eps(u) 1 (and the right-handed law)
    eps_of = {}
    for name, val in eps_table.items():
        eps_of[name] = f.of(val)
    gen_names = [f"e{i}" for i in range(len(pres.vertices))] + [a.name for a in pres.arrows]
    law_ok, law_witness = True, None
    for name in gen_names:
        deg = 0 if name not in pres.arrow_index else pres.arrows[pres.arrow_index[name]].degree
        left = zero_vector(f, alg.dim(deg))
        right = zero_vector(f, alg.dim(deg))
        for coeff, pa, pb in delta_tables[name]:
            c = f.of(coeff)
            d1, v1 = _resolve_gen(realized, pa[0])
            d2, v2 = _resolve_gen(realized, pb[0])
            s1 = s_gen[pa[0]][1]
            s2 = s_gen[pb[0]][1]
            left = vec_add(f, left, vec_scale(f, c, alg.multiply(d1, d2, s1, v2)))
            right = vec_add(f, right, vec_scale(f, c, alg.multiply(d1, d2, v1, s2)))
        target = vec_scale(f, eps_of.get(name, f.zero()), alg.unit) if deg == 0 \
            else zero_vector(f, alg.dim(deg))
        if left != target or right != target:
            law_ok, law_witness = False, name
            break
    checks.append(("antipode law on generators", law_ok, law_witness))

    # well-definedness: Delta and S kill the relations
    ok_delta, ok_s, witness_d, witness_s = True, True, None, None
    for terms in pres.relations:
        st = SplitTensor()
        sv = None
        for coeff, path_names in terms:
            d, idx = realized.locate_path(path_names)
            p = realized.paths[d][idx]
            dp = delta_of_path(p)
            for (i, j), v in dp.blocks.items():
                tgt = st.blocks.setdefault((i, j), zero_vector(f, len(v)))
                for z, c in enumerate(v):
                    if c:
                        tgt[z] = f.add(tgt[z], f.mul(f.of(coeff), c))
            term = vec_scale(f, f.of(coeff), s_of_path(p))
            sv = term if sv is None else vec_add(f, sv, term)
        st.prune()
        if st.blocks:
            ok_delta, witness_d = False, str(terms)
        if sv and any(sv):
            ok_s, witness_s = False, str(terms)
    checks.append(("comultiplication well-defined", ok_delta, witness_d))
    checks.append(("antipode well-defined", ok_s, witness_s))
    if not (ok_delta and ok_s and law_ok):
        return None, checks

    # Delta/eps/S on the canonical basis of each degree
    delta_vals = {}
    antipode_mats = {}
    for d in range(alg.d_max + 1):
        n = alg.dim(d)
        q = realized.quotients[d]
        vals = []
        s_cols = []
        for s in range(n):
            amb = q.lift(unit_vector(f, n, s))
            st = SplitTensor()
            sv = zero_vector(f, n)
            for pi, c in enumerate(amb):
                if not c:
                    continue
                p = realized.paths[d][pi]
                dp = delta_of_path(p)
                for (i, j), v in dp.blocks.items():
                    tgt = st.blocks.setdefault((i, j), zero_vector(f, len(v)))
                    for z, cc in enumerate(v):
                        if cc:
                            tgt[z] = f.add(tgt[z], f.mul(c, cc))
                sv = vec_add(f, sv, vec_scale(f, c, s_of_path(p)))
            st.prune()
            vals.append(st)
            s_cols.append(sv)
        delta_vals[d] = vals
        antipode_mats[d] = Matrix.from_columns(f, s_cols, nrows=n)
    eps_row = zero_vector(f, alg.dim(0))
    for name, val in eps_table.items():
        if name.startswith("e"):
            _, vec = realized.generator_class(pres.vertices[int(name[1:])])
            eps_row = vec_add(f, eps_row, vec_scale(f, f.of(val), vec))
        elif f.of(val):
            raise InputError("counit must vanish on positive-degree generators")
    bia = GradedBialgebra(realized, delta_vals, eps_row, antipode_mats)
    checks.extend(verify_graded_hopf(bia))
    return bia, checks


def verify_graded_hopf(bia):
    """Degreewise bialgebra and antipode checks inside the window."""
    alg = bia.algebra
    f = alg.field
    checks = []
    # counit law: (eps (x) id) Delta = id = (id (x) eps) Delta
    ok, witness = True, None
    for d in range(alg.d_max + 1):
        n = alg.dim(d)
        for s in range(n):
            st = bia.delta_vals[d][s]
            left = zero_vector(f, n)
            right = zero_vector(f, n)
            for (i, j), v in st.blocks.items():
                if i == 0 and j == d:
                    for idx, c in enumerate(v):
                        if c:
                            a, b = idx // n, idx % n
                            left = vec_add(f, left, vec_scale(
                                f, f.mul(c, bia.eps_row[a]), unit_vector(f, n, b)))
                if i == d and j == 0:
                    n0 = alg.dim(0)
                    for idx, c in enumerate(v):
                        if c:
                            a, b = idx // n0, idx % n0
                            right = vec_add(f, right, vec_scale(
                                f, f.mul(c, bia.eps_row[b]), unit_vector(f, n, a)))
            e = unit_vector(f, n, s)
            if left != e or right != e:
                ok, witness = False, f"degree {d} basis {s}"
                break
        if not ok:
            break
    checks.append(("counit law", ok, witness))

    # coassociativity: compare (Delta (x) id)Delta with (id (x) Delta)Delta blockwise
    ok, witness = True, None
    for d in range(alg.d_max + 1):
        n = alg.dim(d)
        for s in range(n):
            st = bia.delta_vals[d][s]
            lhs = {}
            rhs = {}
            for (i, j), v in st.blocks.items():
                ni, nj = alg.dim(i), alg.dim(j)
                for idx, c in enumerate(v):
                    if not c:
                        continue
                    a, b = idx // nj, idx % nj
                    inner = bia.delta_vals[i][a]
                    for (i1, i2), w in inner.blocks.items():
                        n2 = alg.dim(i2)
                        for idx2, c2 in enumerate(w):
                            if c2:
                                p1, p2 = idx2 // n2, idx2 % n2
                                key = (i1, i2, j)
                                tgt = lhs.setdefault(key, {})
                                kk = (p1, p2, b)
                                tgt[kk] = f.add(tgt.get(kk, f.zero()), f.mul(c, c2))
                    inner2 = bia.delta_vals[j][b]
                    for (j1, j2), w in inner2.blocks.items():
                        n2 = alg.dim(j2)
                        for idx2, c2 in enumerate(w):
                            if c2:
                                p1, p2 = idx2 // n2, idx2 % n2
                                key = (i, j1, j2)
                                tgt = rhs.setdefault(key, {})
                                kk = (a, p1, p2)
                                tgt[kk] = f.add(tgt.get(kk, f.zero()), f.mul(c, c2))
            lhs = {k: {kk: c for kk, c in v.items() if c} for k, v in lhs.items()}
            rhs = {k: {kk: c for kk, c in v.items() if c} for k, v in rhs.items()}
            lhs = {k: v for k, v in lhs.items() if v}
            rhs = {k: v for k, v in rhs.items() if v}
            if lhs != rhs:
                ok, witness = False, f"degree {d} basis {s}"
                break
        if not ok:
            break
    checks.append(("coassociativity", ok, witness))

    # Delta multiplicative on basis pairs
    ok, witness = True, None
    for i in range(alg.d_max + 1):
        for j in range(alg.d_max + 1 - i):
            ni, nj = alg.dim(i), alg.dim(j)
            if ni == 0 or nj == 0:
                continue
            for s in range(ni):
                for t in range(nj):
                    prod = alg.multiply(i, j, unit_vector(f, ni, s), unit_vector(f, nj, t))
                    expected = SplitTensor()
                    for z, c in enumerate(prod):
                        if c:
                            for key, v in bia.delta_vals[i + j][z].blocks.items():
                                tgt = expected.blocks.setdefault(key, zero_vector(f, len(v)))
                                for idx, cc in enumerate(v):
                                    if cc:
                                        tgt[idx] = f.add(tgt[idx], f.mul(c, cc))
                    got = bia.delta_vals[i][s].product(bia.delta_vals[j][t], alg)
                    expected.prune()
                    if got != expected:
                        ok, witness = False, f"degrees ({i},{j}) basis ({s},{t})"
                        break
                if not ok:
                    break
            if not ok:
                break
        if not ok:
            break
    checks.append(("comultiplication multiplicative", ok, witness))

    # antipode law: m (S (x) id) Delta = eps * unit = m (id (x) S) Delta
    ok, witness = True, None
    for d in range(alg.d_max + 1):
        n = alg.dim(d)
        for s in range(n):
            st = bia.delta_vals[d][s]
            left = zero_vector(f, alg.dim(d))
            right = zero_vector(f, alg.dim(d))
            for (i, j), v in st.blocks.items():
                ni, nj = alg.dim(i), alg.dim(j)
                for idx, c in enumerate(v):
                    if not c:
                        continue
                    a, b = idx // nj, idx % nj
                    sa = bia.antipode[i].apply(unit_vector(f, ni, a))
                    term = alg.multiply(i, j, sa, unit_vector(f, nj, b))
                    left = vec_add(f, left, vec_scale(f, c, term))
                    sb = bia.antipode[j].apply(unit_vector(f, nj, b))
                    term = alg.multiply(i, j, unit_vector(f, ni, a), sb)
                    right = vec_add(f, right, vec_scale(f, c, term))
            target = zero_vector(f, alg.dim(d))
            if d == 0:
                target = vec_scale(f, bia.eps_value(0, unit_vector(f, n, s)), alg.unit)
            if left != target or right != target:
                basis_name = _describe_basis(bia.realized, d, s)
                ok, witness = False, basis_name
                break
        if not ok:
            break
    checks.append(("antipode law", ok, witness))

    # informational: cocommutativity
    cocomm = True
    for d in range(alg.d_max + 1):
        for s in range(alg.dim(d)):
            st = bia.delta_vals[d][s]
            if st.flipped(alg) != st:
                cocomm = False
                break
        if not cocomm:
            break
    checks.append(("cocommutative (informational)", cocomm, None))
    return checks


def _describe_basis(realized, d, s):
    q = realized.quotients[d]
    amb = q.lift(unit_vector(realized.algebra.field, q.dim, s))
    for pi, c in enumerate(amb):
        if c:
            p = realized.paths[d][pi]
            if not p.arrows:
                return f"e({p.src})"
            return " ".join(realized.presentation.arrows[ai].name for ai in p.arrows)
    return f"degree {d} basis {s}"


def fixture_paper_quiver(field=QQ, d_max=5, antipode_tables=QUIVER_ANTIPODE):
    """The two-vertex quiver Hopf algebra with coaction through the
    degree-zero projection. Any structural failure is a hard error.
    """
    bia, checks = build_quiver_bialgebra(field, d_max, antipode_tables=antipode_tables)
    bad = [(name, witness) for name, ok, witness in checks
           if not ok and "informational" not in name]
    if bad or bia is None:
        raise MathFailure(f"quiver bialgebra checks failed: {bad}")
    alg = bia.algebra
    f = field
    n0 = alg.dim(0)
    # H = A_0 with the restricted structure maps
    h_mult = alg.mult_matrix(0, 0)
    h_comul = bia.delta_component(0, 0, 0)
    h = HopfAlgebra(f, h_mult, alg.unit, h_comul, list(bia.eps_row),
                    bia.antipode[0], names=["e0", "e1"])
    hrep = verify_hopf_axioms(h)
    if not hrep.passed:
        raise MathFailure("degree-zero Hopf structure fails axioms")
    rho = {d: bia.delta_component(d, d, 0) for d in range(alg.d_max + 1)}
    ca = ComoduleAlgebra(alg, h, rho, name="A")
    modules = {"regular": alg.regular_module(), "A0": _quiver_trivial_module(alg)}
    fx = _finalize_fixture("paper-quiver", ca, modules, h,
                           notes="quiver Hopf algebra, rho = (id (x) p) Delta",
                           extras={"bialgebra": bia, "checks": checks,
                                   "realized": bia.realized})
    fx.extras["hopf_module_coactions"] = {
        "regular": dict(rho),
        "A0": {0: h.comul},
    }
    if field.char == 2:
        fx.notes += "; char 2: H = kZ_2 is not semisimple here"
    return fx


def _quiver_trivial_module(alg):
    """A_0 as a right A-module through the degree-zero projection."""
    return alg.trivial_module()


def hopf_module_structure_a0(fx):
    """The Hopf-module coaction on the module A_0 (it is H with Delta)."""
    return fx.hopf.comul


# --------------------------------------------------------------------------
# registry used by the CLI


def fixture_x3_smash(field=QQ):
    realized = truncated_polynomial_algebra(1, 6, field=field, nilpotency=3)
    h2 = cyclic_group_hopf(2, field)
    ma = sign_action_by_degree(realized.algebra, h2)
    return fixture_smash(ma, "smash-x3")


def fixture_kxy_smash(field=QQ, d_max=4):
    realized = truncated_polynomial_algebra(2, d_max, field=field)
    h2 = cyclic_group_hopf(2, field)
    ma = sign_action_by_degree(realized.algebra, h2)
    return fixture_smash(ma, "smash-kxy")


FIXTURE_BUILDERS = {
    "paper-quiver": lambda field, d_max: fixture_paper_quiver(field, d_max),
    "kz2": lambda field, d_max: fixture_group_algebra(2, field),
    "kz3": lambda field, d_max: fixture_group_algebra(3, field),
    "smash-x3": lambda field, d_max: fixture_x3_smash(field),
    "smash-kxy": lambda field, d_max: fixture_kxy_smash(field, d_max),
}


def build_fixture(name, field=QQ, d_max=5):
    builder = FIXTURE_BUILDERS.get(name)
    if builder is None:
        raise InputError(f"unknown fixture {name!r}; available: {sorted(FIXTURE_BUILDERS)}")
    return builder(field, d_max)
