# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled row-reduction and matmul kernels.

Mirrors hopfext._pure exactly. Rational paths keep Python objects (exact
Fractions with arbitrary-precision integers) but run the loops in C; the
F_p paths use C int64 arithmetic, which requires p*p < 2**63.
"""

from cpython.list cimport PyList_GET_ITEM, PyList_GET_SIZE
from libc.stdlib cimport free, malloc

from fractions import Fraction

BACKEND = "compiled"

_ONE = Fraction(1)


def rref_q(list rows):
    cdef Py_ssize_t nrows = PyList_GET_SIZE(rows)
    cdef Py_ssize_t ncols = PyList_GET_SIZE(<list>PyList_GET_ITEM(rows, 0)) if nrows else 0
    cdef Py_ssize_t r = 0, c, i, j, pr
    cdef list prow, row, pivots = []
    cdef object pv, f, inv
    for c in range(ncols):
        pr = -1
        for i in range(r, nrows):
            if (<list>PyList_GET_ITEM(rows, i))[c]:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        prow = <list>PyList_GET_ITEM(rows, r)
        pv = prow[c]
        if pv != _ONE:
            inv = _ONE / pv
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] = prow[j] * inv
        for i in range(nrows):
            if i == r:
                continue
            row = <list>PyList_GET_ITEM(rows, i)
            f = row[c]
            if f:
                for j in range(c, ncols):
                    if prow[j]:
                        row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


cdef long long _inv_mod(long long a, long long p):
    # extended Euclid; a is nonzero mod p
    cdef long long t = 0, newt = 1, rr = p, newr = a % p, q, tmp
    while newr != 0:
        q = rr // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = rr - q * newr
        rr = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_fp(list rows, long long p):
    cdef Py_ssize_t nrows = PyList_GET_SIZE(rows)
    cdef Py_ssize_t ncols = PyList_GET_SIZE(<list>PyList_GET_ITEM(rows, 0)) if nrows else 0
    cdef Py_ssize_t r = 0, c, i, j, pr
    cdef list pivots = []
    cdef long long *buf
    cdef long long pv, f, inv
    if nrows == 0 or ncols == 0:
        return pivots
    buf = <long long *>malloc(nrows * ncols * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(nrows):
            row = <list>PyList_GET_ITEM(rows, i)
            for j in range(ncols):
                buf[i * ncols + j] = <long long>row[j] % p
        for c in range(ncols):
            pr = -1
            for i in range(r, nrows):
                if buf[i * ncols + c] != 0:
                    pr = i
                    break
            if pr < 0:
                continue
            if pr != r:
                for j in range(ncols):
                    buf[r * ncols + j], buf[pr * ncols + j] = buf[pr * ncols + j], buf[r * ncols + j]
            pv = buf[r * ncols + c]
            if pv != 1:
                inv = _inv_mod(pv, p)
                for j in range(c, ncols):
                    if buf[r * ncols + j]:
                        buf[r * ncols + j] = buf[r * ncols + j] * inv % p
            for i in range(nrows):
                if i == r:
                    continue
                f = buf[i * ncols + c]
                if f:
                    for j in range(c, ncols):
                        if buf[r * ncols + j]:
                            buf[i * ncols + j] = (buf[i * ncols + j] - f * buf[r * ncols + j]) % p
                            if buf[i * ncols + j] < 0:
                                buf[i * ncols + j] += p
            pivots.append(c)
            r += 1
            if r == nrows:
                break
        for i in range(nrows):
            row = <list>PyList_GET_ITEM(rows, i)
            for j in range(ncols):
                row[j] = buf[i * ncols + j]
    finally:
        free(buf)
    return pivots


def mat_mul_q(list a, list b):
    cdef Py_ssize_t n = PyList_GET_SIZE(a)
    cdef Py_ssize_t inner = PyList_GET_SIZE(b)
    cdef Py_ssize_t m = PyList_GET_SIZE(<list>PyList_GET_ITEM(b, 0)) if inner else 0
    cdef Py_ssize_t i, j, k
    cdef list out = [], ai, bk, oi
    cdef object f
    zero = Fraction(0)
    for i in range(n):
        out.append([zero] * m)
    for i in range(n):
        ai = <list>PyList_GET_ITEM(a, i)
        oi = <list>PyList_GET_ITEM(out, i)
        for k in range(inner):
            f = ai[k]
            if f:
                bk = <list>PyList_GET_ITEM(b, k)
                for j in range(m):
                    if bk[j]:
                        oi[j] = oi[j] + f * bk[j]
    return out


def mat_mul_fp(list a, list b, long long p):
    cdef Py_ssize_t n = PyList_GET_SIZE(a)
    cdef Py_ssize_t inner = PyList_GET_SIZE(b)
    cdef Py_ssize_t m = PyList_GET_SIZE(<list>PyList_GET_ITEM(b, 0)) if inner else 0
    cdef Py_ssize_t i, j, k
    cdef long long *bufb
    cdef long long *acc
    cdef long long f
    cdef list out = [], ai, row
    if n == 0 or m == 0 or inner == 0:
        for i in range(n):
            out.append([0] * m)
        return out
    bufb = <long long *>malloc(inner * m * sizeof(long long))
    acc = <long long *>malloc(m * sizeof(long long))
    if bufb == NULL or acc == NULL:
        free(bufb)
        free(acc)
        raise MemoryError()
    try:
        for k in range(inner):
            row = <list>PyList_GET_ITEM(b, k)
            for j in range(m):
                bufb[k * m + j] = <long long>row[j] % p
        for i in range(n):
            ai = <list>PyList_GET_ITEM(a, i)
            for j in range(m):
                acc[j] = 0
            for k in range(inner):
                f = <long long>ai[k] % p
                if f:
                    for j in range(m):
                        if bufb[k * m + j]:
                            acc[j] = (acc[j] + f * bufb[k * m + j]) % p
            out.append([acc[j] for j in range(m)])
    finally:
        free(bufb)
        free(acc)
    return out
