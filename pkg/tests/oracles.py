"""Independent oracles, sharing no code path with the row-reduction pipeline.

Every fixture group acts by signed permutation matrices with a diagonal
+-1 representation, so ``x^e (x) e_k`` is mapped to ``+- x^(g.e) (x) e_k``.
Averaged images of different orbits have disjoint supports, and an orbit
contributes one dimension iff its stabilizer acts on it with sign +1.
"""
from fractions import Fraction
from itertools import product


def _signed_perm(m):
    """(perm, signs) with (m x)_i = signs[i] * x[perm[i]]."""
    perm, signs = [], []
    for row in m.rows:
        nz = [(j, v) for j, v in enumerate(row) if v]
        assert len(nz) == 1 and abs(nz[0][1]) == 1, "not a signed permutation"
        perm.append(nz[0][0])
        signs.append(int(nz[0][1]))
    return perm, signs


def _act(g_src, g_rho, e, k):
    """Image of x^e (x) e_k under P -> rho(g)^{-1} P(g x): returns (sign, e', k)."""
    perm, signs = _signed_perm(g_src)
    # x^e(g x) = prod_i (signs[i] x_perm[i])^e_i
    new = [0] * len(e)
    sign = 1
    for i, ei in enumerate(e):
        new[perm[i]] += ei
        sign *= signs[i] ** ei
    rinv = int(g_rho[k, k])  # +-1 diagonal: inverse equals itself
    assert all(g_rho[a, b] == 0 for a in range(g_rho.nrows) for b in range(g_rho.ncols) if a != b)
    return sign * rinv, tuple(new), k


def orbit_dimension(rep, m, trivial_rho=False):
    """Dimension of degree-m covariants by orbit counting."""
    n, d = rep.n, (1 if trivial_rho else rep.d)
    exps = [e for e in product(range(m + 1), repeat=n) if sum(e) == m]
    seen = set()
    dim = 0
    for e in exps:
        for k in range(d):
            if (e, k) in seen:
                continue
            # walk the orbit, tracking the sign attached to each member
            signs = {(e, k): 1}
            stack = [(e, k)]
            alive = True
            while stack:
                cur = stack.pop()
                for src, rho in rep.elements:
                    r = rho if not trivial_rho else type(rho)([[1]])
                    s, e2, k2 = _act(src, r, *cur)
                    s *= signs[cur]
                    if (e2, k2) in signs:
                        if signs[(e2, k2)] != s:
                            alive = False
                    else:
                        signs[(e2, k2)] = s
                        stack.append((e2, k2))
            seen.update(signs)
            dim += alive
    return dim


def series_coefficients(num, den, order):
    """Power-series coefficients of num/den by naive long division."""
    out = []
    rem = [Fraction(c) for c in num] + [Fraction(0)] * (order + len(den) + 1)
    for m in range(order + 1):
        c = rem[m] / den[0]
        out.append(c)
        for j, dj in enumerate(den):
            rem[m + j] -= c * dj
    return out
