"""Finite-dimensional Hopf algebras as explicit structure matrices.

Nothing is assumed: every constructor input goes through verify_hopf_axioms
before it is trusted. Semisimplicity is decided by the counit value of a
right integral, cosemisimplicity by the same test on the dual.
"""

from dataclasses import dataclass

from .errors import DimensionError, MathFailure
from .linalg import Matrix, unit_vector


class HopfAlgebra:
    """dim, multiplication (n x n^2), unit, comultiplication (n^2 x n),
    counit (row), antipode (n x n); optional basis names for reporting."""

    def __init__(self, field, mult, unit, comul, counit, antipode, names=None):
        self.field = field
        self.mult = mult if isinstance(mult, Matrix) else Matrix(field, mult)
        self.unit = list(unit)
        self.comul = comul if isinstance(comul, Matrix) else Matrix(field, comul)
        self.counit = list(counit)
        self.antipode = antipode if isinstance(antipode, Matrix) else Matrix(field, antipode)
        n = len(self.unit)
        self.dim = n
        self.names = list(names) if names else [f"h{i}" for i in range(n)]
        if self.mult.nrows != n or self.mult.ncols != n * n:
            raise DimensionError("multiplication tensor has wrong shape")
        if self.comul.nrows != n * n or self.comul.ncols != n:
            raise DimensionError("comultiplication has wrong shape")
        if len(self.counit) != n or self.antipode.nrows != n or self.antipode.ncols != n:
            raise DimensionError("counit/antipode have wrong shape")

    def multiply(self, x, y):
        n = self.dim
        f = self.field
        out = [f.zero()] * n
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = f.mul(xi, yj)
                col = i * n + j
                for u in range(n):
                    e = self.mult.rows[u][col]
                    if e:
                        out[u] = f.add(out[u], f.mul(c, e))
        return out

    def delta(self, x):
        return self.comul.apply(x)

    def eps(self, x):
        f = self.field
        acc = f.zero()
        for c, e in zip(x, self.counit):
            if c and e:
                acc = f.add(acc, f.mul(c, e))
        return acc

    def S(self, x):
        return self.antipode.apply(x)

    def right_mult_matrix(self, y):
        n = self.dim
        cols = [self.multiply(unit_vector(self.field, n, i), y) for i in range(n)]
        return Matrix.from_columns(self.field, cols, nrows=n)

    def left_mult_matrix(self, x):
        n = self.dim
        cols = [self.multiply(x, unit_vector(self.field, n, j)) for j in range(n)]
        return Matrix.from_columns(self.field, cols, nrows=n)

    def counit_matrix(self):
        return Matrix(self.field, [list(self.counit)], ncols=self.dim)

    def unit_matrix(self):
        return Matrix.from_columns(self.field, [self.unit], nrows=self.dim)

    def __repr__(self):
        return f"HopfAlgebra(dim {self.dim} over {self.field})"


def swap_matrix(field, m, n):
    """Matrix of the flip V (x) W -> W (x) V for dim V = m, dim W = n."""
    zero, one = field.zero(), field.one()
    rows = [[zero] * (m * n) for _ in range(m * n)]
    for i in range(m):
        for j in range(n):
            rows[j * m + i][i * n + j] = one
    return Matrix(field, rows, ncols=m * n)


@dataclass
class AxiomCheck:
    name: str
    passed: bool
    witness: str | None = None


@dataclass
class HopfAxiomReport:
    checks: list
    cocommutative: bool
    commutative: bool

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]


def _first_bad_column(a, b, names):
    for j in range(a.ncols):
        if a.column(j) != b.column(j):
            return names[j % len(names)] if j < len(names) else f"column {j}"
    return None


def verify_hopf_axioms(h):
    """Check every Hopf axiom; report pass/fail with a witness basis element.

    Cocommutativity and commutativity are reported as informational flags,
    not axioms.
    """
    f = h.field
    n = h.dim
    I = Matrix.identity(f, n)
    checks = []

    def check(name, lhs, rhs, witness_names=None):
        ok = lhs == rhs
        witness = None
        if not ok:
            witness = _first_bad_column(lhs, rhs, witness_names or h.names)
        checks.append(AxiomCheck(name, ok, witness))

    m, d = h.mult, h.comul
    check("associativity", m @ m.kron(I), m @ I.kron(m))
    check("left unit", m @ h.unit_matrix().kron(I), I)
    check("right unit", m @ I.kron(h.unit_matrix()), I)
    check("coassociativity", d.kron(I) @ d, I.kron(d) @ d)
    check("left counit", h.counit_matrix().kron(I) @ d, I)
    check("right counit", I.kron(h.counit_matrix()) @ d, I)
    tau = swap_matrix(f, n, n)
    mid = I.kron(tau).kron(I)
    check("comultiplication is multiplicative", d @ m, m.kron(m) @ mid @ d.kron(d))
    unit_ok = h.delta(h.unit) == h.unit_matrix().kron(h.unit_matrix()).column(0)
    checks.append(AxiomCheck("comultiplication preserves the unit", unit_ok,
                             None if unit_ok else "1"))
    check("counit is multiplicative", h.counit_matrix() @ m,
          h.counit_matrix().kron(h.counit_matrix()))
    eps_unit_ok = h.eps(h.unit) == f.one()
    checks.append(AxiomCheck("counit preserves the unit", eps_unit_ok,
                             None if eps_unit_ok else "1"))
    ue = h.unit_matrix() @ h.counit_matrix()
    check("antipode (left)", m @ h.antipode.kron(I) @ d, ue)
    check("antipode (right)", m @ I.kron(h.antipode) @ d, ue)
    s_ok = h.antipode.rank() == n
    checks.append(AxiomCheck("antipode bijective", s_ok, None if s_ok else "rank defect"))
    cocomm = (tau @ d) == d
    comm = (m @ tau) == m
    return HopfAxiomReport(checks, cocommutative=cocomm, commutative=comm)


def dual_hopf(h, check=True):
    """Dual Hopf algebra on the dual basis: all structure maps transpose."""
    dual = HopfAlgebra(
        h.field,
        mult=h.comul.transpose(),
        unit=list(h.counit),
        comul=h.mult.transpose(),
        counit=list(h.unit),
        antipode=h.antipode.transpose(),
        names=[f"{nm}^" for nm in h.names],
    )
    if check:
        rep = verify_hopf_axioms(dual)
        if not rep.passed:
            raise MathFailure(f"dual fails axioms: {[c.name for c in rep.failures()]}")
    return dual


@dataclass
class IntegralElement:
    vector: list
    side: str


def right_integral(h):
    """The (normalized) right integral: t with t*x = eps(x) t for all x.

    The solution space is one-dimensional for a finite-dimensional Hopf
    algebra; anything else signals corrupted input.
    """
    f = h.field
    n = h.dim
    rows = []
    for j in range(n):
        ej = unit_vector(f, n, j)
        R = h.right_mult_matrix(ej)
        eps_j = h.counit[j]
        diff = R - Matrix.identity(f, n).scale(eps_j)
        rows.extend(diff.rows)
    sol = Matrix(f, rows, ncols=n).kernel()
    if sol.dim != 1:
        raise MathFailure(f"right integral space has dimension {sol.dim}, expected 1")
    t = list(sol.basis[0])
    # normalize: first nonzero coordinate 1 (echelon basis already does this)
    return IntegralElement(t, "right")


def is_semisimple(h):
    """Maschke-type test: eps of a right integral is nonzero."""
    t = right_integral(h)
    return bool(h.eps(t.vector))


def is_cosemisimple(h):
    return is_semisimple(dual_hopf(h, check=False))
