"""Truncated reduced bar-complex oracle for Ext dimensions.

Independent of the minimal-resolution pipeline: Ext^n of the trivial module
is read off the homology of Abar^(x)n with the alternating-sum merge
differential, where Abar is the augmentation ideal. Used by the oracle
equivalence tests; intentionally shares no code with resolution/ext.
"""

from itertools import product as iproduct

from .errors import MathFailure
from .linalg import Matrix, Subspace, unit_vector, vec_add, vec_scale, zero_vector


class _Augmented:
    """Graded algebra plus augmentation; bases of the augmentation ideal."""

    def __init__(self, alg, aug_row=None):
        f = alg.field
        self.alg = alg
        n0 = alg.dim(0)
        if aug_row is None:
            # canonical choice needs A_0 = k
            if n0 != 1:
                raise MathFailure("augmentation required when dim A_0 > 1")
            aug_row = [f.inv(alg.unit[0])]
        self.aug_row = list(aug_row)
        # check multiplicative on degree 0 and unit value 1
        if self._aug0(alg.unit) != f.one():
            raise MathFailure("augmentation does not send 1 to 1")
        for i in range(n0):
            for j in range(n0):
                x, y = unit_vector(f, n0, i), unit_vector(f, n0, j)
                lhs = self._aug0(alg.multiply(0, 0, x, y))
                if lhs != f.mul(self._aug0(x), self._aug0(y)):
                    raise MathFailure("augmentation is not multiplicative")
        rows = [list(self.aug_row)]
        self.ideal0 = Matrix(f, rows, ncols=n0).kernel()

    def _aug0(self, vec):
        f = self.alg.field
        acc = f.zero()
        for c, a in zip(vec, self.aug_row):
            if c and a:
                acc = f.add(acc, f.mul(c, a))
        return acc

    def ideal_dim(self, e):
        if e == 0:
            return self.ideal0.dim
        return self.alg.dim(e)

    def ideal_basis_vec(self, e, i):
        f = self.alg.field
        if e == 0:
            return list(self.ideal0.basis[i])
        return unit_vector(f, self.alg.dim(e), i)

    def project_to_ideal(self, e, vec):
        """Coordinates in the ideal basis (degree 0 subtracts the unit part)."""
        f = self.alg.field
        if e == 0:
            c = self._aug0(vec)
            reduced = vec_add(f, vec, vec_scale(f, f.neg(c), self.alg.unit))
            coords = self.ideal0.coordinates(reduced)
            if coords is None:
                raise MathFailure("augmentation ideal projection failed")
            return coords
        return list(vec)


def bar_ext_dims(alg, n_max, d_max=None, aug_row=None):
    """Ext^{n,d} dimensions of the trivial module over an augmented algebra.

    Returns a dict (n, d) -> dim for 0 <= n <= n_max, computed from the
    reduced bar complex truncated at internal degree d_max.
    """
    f = alg.field
    aug = _Augmented(alg, aug_row)
    W = alg.d_max if d_max is None else min(d_max, alg.d_max) if not alg.complete else d_max or alg.d_max
    if W is None:
        W = alg.d_max

    # bases of Abar^(x)n per internal degree: tuples (degrees, indices)
    def tensor_basis(n, total):
        if n == 0:
            return [((), ())] if total == 0 else []
        out = []
        for degs in _compositions(n, total):
            ranges = [range(aug.ideal_dim(e)) for e in degs]
            if any(r.stop == 0 for r in ranges):
                continue
            for idxs in iproduct(*ranges):
                out.append((degs, idxs))
        return out

    bases = {}
    for n in range(n_max + 2):
        for D in range(W + 1):
            bases[(n, D)] = tensor_basis(n, D)

    # product table in ideal coordinates
    prod_cache = {}

    def merge(e1, i1, e2, i2):
        key = (e1, i1, e2, i2)
        if key not in prod_cache:
            v = alg.multiply(e1, e2, aug.ideal_basis_vec(e1, i1), aug.ideal_basis_vec(e2, i2))
            prod_cache[key] = aug.project_to_ideal(e1 + e2, v)
        return prod_cache[key]

    def diff_matrix(n, D):
        """b': C_n -> C_{n-1} at internal degree D."""
        src = bases[(n, D)]
        tgt = bases[(n - 1, D)]
        index = {b: i for i, b in enumerate(tgt)}
        rows = [[f.zero()] * len(src) for _ in range(len(tgt))]
        for col, (degs, idxs) in enumerate(src):
            sign = f.one()
            for i in range(n - 1):
                merged_deg = degs[i] + degs[i + 1]
                coeffs = merge(degs[i], idxs[i], degs[i + 1], idxs[i + 1])
                new_degs = degs[:i] + (merged_deg,) + degs[i + 2:]
                for z, c in enumerate(coeffs):
                    if c:
                        new_idxs = idxs[:i] + (z,) + idxs[i + 2:]
                        r = index.get((new_degs, new_idxs))
                        if r is None:
                            raise MathFailure("bar differential left the basis")
                        rows[r][col] = f.add(rows[r][col], f.mul(sign, c))
                sign = f.neg(sign)
        return Matrix(f, rows, ncols=len(src))

    out = {}
    for n in range(n_max + 1):
        for D in range(W + 1):
            cn = len(bases[(n, D)])
            if cn == 0:
                continue
            rank_in = diff_matrix(n, D).rank() if n >= 1 else 0
            rank_out = diff_matrix(n + 1, D).rank()
            dim = cn - rank_in - rank_out
            if dim:
                out[(n, D)] = dim
    return out


def _compositions(n, total):
    """Degree tuples (e_1..e_n), e_i >= 0, summing to total."""
    if n == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(n - 1, total - first):
            yield (first,) + rest
