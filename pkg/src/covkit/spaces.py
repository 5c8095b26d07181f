"""Per-degree coordinate spaces of (vector) polynomials.

Degree-m E-valued polynomials are flattened onto the columns
``(monomial, component)`` with monomials in grlex-descending order, so row
reduction picks pivots in a fixed, canonical order.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import DimensionMismatch
from .exact import rref
from .polynomials import Poly, VectorPoly, compose_linear, monomials


@lru_cache(maxsize=None)
def columns(n: int, d: int, m: int):
    cols = tuple((e, k) for e in monomials(n, m) for k in range(d))
    return cols, {c: i for i, c in enumerate(cols)}


def flatten(P: VectorPoly, m: int):
    cols, index = columns(P.n, P.d, m)
    vec = [Fraction(0)] * len(cols)
    for k, comp in enumerate(P.components):
        for e, c in comp.terms.items():
            try:
                vec[index[(e, k)]] = c
            except KeyError:
                raise DimensionMismatch(f"term of degree {sum(e)} in a degree-{m} slice") from None
    return vec


def unflatten(vec, n: int, d: int, m: int) -> VectorPoly:
    cols, _ = columns(n, d, m)
    comps = [dict() for _ in range(d)]
    for (e, k), v in zip(cols, vec):
        if v:
            comps[k][e] = v
    return VectorPoly([Poly._trusted(n, t) for t in comps], n)


def reduced_basis(polys, n: int, d: int, m: int):
    """Canonical (RREF) basis of the span of degree-m vector polynomials."""
    cols, _ = columns(n, d, m)
    rows = [flatten(P, m) for P in polys]
    reduced, _ = rref(rows, len(cols))
    return [unflatten(r, n, d, m) for r in reduced]


def span_rank(polys, n: int, d: int, m: int) -> int:
    cols, _ = columns(n, d, m)
    return len(rref([flatten(P, m) for P in polys], len(cols))[1])


def reynolds_images(rep, m: int):
    """Covariant averages of every ``monomial * e_k`` of degree m."""
    n, d = rep.n, rep.d
    images = []
    w = rep.weight
    rho_inv = [rep.rho_inverse(i) for i in range(rep.order)]
    for e in monomials(n, m):
        mono = Poly.monomial(e)
        moved = [compose_linear(mono, rep.source(i)) for i in range(rep.order)]
        for k in range(d):
            comps = []
            for row in range(d):
                acc = {}
                for gi, q in enumerate(moved):
                    c = rho_inv[gi].rows[row][k]
                    if not c:
                        continue
                    for t, v in q.terms.items():
                        s = acc.get(t, 0) + c * v
                        if s:
                            acc[t] = s
                        else:
                            acc.pop(t, None)
                comps.append(Poly._trusted(n, {t: v * w for t, v in acc.items()}))
            images.append(VectorPoly(comps, n))
    return images


@lru_cache(maxsize=None)
def covariant_space(rep, m: int):
    """Canonical basis (tuple of VectorPoly) of degree-m covariants."""
    if m < 0:
        return ()
    return tuple(reduced_basis(reynolds_images(rep, m), rep.n, rep.d, m))


def invariant_space(rep, m: int):
    """Canonical basis (tuple of Poly) of degree-m invariants."""
    return tuple(P.components[0] for P in covariant_space(rep.trivial(), m))
