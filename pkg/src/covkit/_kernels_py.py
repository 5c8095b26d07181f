"""Pure-Python implementations of the hot kernels.

Mirrors ``_kernels.pyx`` function for function; ``covkit._backend`` picks
whichever is importable.
"""
from math import gcd


def rref_int(rows, ncols):
    """Integer Gauss-Jordan elimination with row content removal.

    ``rows`` is a list of integer lists of length ``ncols``; it is not
    mutated. Returns ``(echelon_rows, pivots)`` where every returned row is
    primitive, has a positive pivot and is zero in every other pivot column.
    """
    rows = [list(r) for r in rows]
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = -1
        for i in range(r, nrows):
            if rows[i][c] != 0:
                p = i
                break
        if p < 0:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        if prow[c] < 0:
            for j in range(c, ncols):
                prow[j] = -prow[j]
        piv = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            a = row[c]
            if a == 0:
                continue
            g = gcd(piv, a)
            pm = piv // g
            am = a // g
            for j in range(ncols):
                row[j] = pm * row[j] - am * prow[j] if j >= c else pm * row[j]
            g = gcd(*row)
            if g > 1:
                for j in range(ncols):
                    row[j] //= g
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def poly_mul(a, b):
    """Product of two sparse polynomials given as ``{exponent tuple: coeff}``."""
    out = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple([x + y for x, y in zip(ea, eb)])
            v = get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out
