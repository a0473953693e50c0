"""Pure-Python row-reduction and matmul kernels.

Reference implementations of the hot loops; hopfext._speedups compiles the
same algorithms. Semantics must stay identical between the two backends:
deterministic pivoting (first nonzero column, first nonzero row), pivots
normalized to 1, full reduction above and below.
"""

from fractions import Fraction

BACKEND = "pure"


def rref_q(rows):
    """Reduce a list-of-lists of Fractions in place; return pivot columns."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = -1
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        prow = rows[r]
        pv = prow[c]
        if pv != 1:
            inv = Fraction(1) / pv
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] *= inv
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                row = rows[i]
                for j in range(c, ncols):
                    if prow[j]:
                        row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rref_fp(rows, p):
    """Same as rref_q over F_p (entries are ints in range(p))."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = -1
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        prow = rows[r]
        pv = prow[c]
        if pv != 1:
            inv = pow(pv, -1, p)
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] = prow[j] * inv % p
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                row = rows[i]
                for j in range(c, ncols):
                    if prow[j]:
                        row[j] = (row[j] - f * prow[j]) % p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def mat_mul_q(a, b):
    """Product of list-of-lists matrices over Q."""
    n = len(a)
    inner = len(b)
    m = len(b[0]) if inner else 0
    zero = Fraction(0)
    out = [[zero] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            f = ai[k]
            if f:
                bk = b[k]
                for j in range(m):
                    if bk[j]:
                        oi[j] += f * bk[j]
    return out


def mat_mul_fp(a, b, p):
    n = len(a)
    inner = len(b)
    m = len(b[0]) if inner else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            f = ai[k]
            if f:
                bk = b[k]
                for j in range(m):
                    if bk[j]:
                        oi[j] = (oi[j] + f * bk[j]) % p
    return out
