# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels; same contracts as ``covkit._kernels_py``."""
from math import gcd


def rref_int(list rows, Py_ssize_t ncols):
    cdef list work = [list(src) for src in rows]
    cdef list pivots = []
    cdef list prow, row
    cdef Py_ssize_t nrows = len(work)
    cdef Py_ssize_t r = 0, c, i, j, p
    cdef object piv, a, g, pm, am
    for c in range(ncols):
        if r == nrows:
            break
        p = -1
        for i in range(r, nrows):
            if (<list>work[i])[c] != 0:
                p = i
                break
        if p < 0:
            continue
        work[r], work[p] = work[p], work[r]
        prow = <list>work[r]
        if prow[c] < 0:
            for j in range(c, ncols):
                prow[j] = -prow[j]
        piv = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = <list>work[i]
            a = row[c]
            if a == 0:
                continue
            g = gcd(piv, a)
            pm = piv // g
            am = a // g
            if pm != 1:
                for j in range(c):
                    row[j] = pm * row[j]
            for j in range(c, ncols):
                row[j] = pm * row[j] - am * prow[j]
            g = gcd(*row)
            if g > 1:
                for j in range(ncols):
                    row[j] = row[j] // g
        pivots.append(c)
        r += 1
    return work[:r], pivots


def poly_mul(dict a, dict b):
    cdef dict out = {}
    cdef tuple ea, eb
    cdef Py_ssize_t k, n
    cdef object ca, cb, v
    cdef list e
    for ea, ca in a.items():
        n = len(ea)
        for eb, cb in b.items():
            e = [None] * n
            for k in range(n):
                e[k] = <object>ea[k] + <object>eb[k]
            key = tuple(e)
            v = out.get(key, 0) + ca * cb
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out
