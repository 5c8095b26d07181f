"""Group averaging onto invariants and covariants."""
from __future__ import annotations

from .errors import DimensionMismatch
from .polynomials import Poly, VectorPoly, compose_linear, covariant_action


def invariant_average(p: Poly, rep) -> Poly:
    """``(1/|G|) sum_g p(g x)``."""
    if p.n != rep.n:
        raise DimensionMismatch(f"polynomial in {p.n} variables for group on R^{rep.n}")
    acc = Poly.zero(p.n)
    for i in range(rep.order):
        acc = acc + compose_linear(p, rep.source(i))
    return acc * rep.weight


def covariant_average(P: VectorPoly, rep) -> VectorPoly:
    """``(1/|G|) sum_g rho(g)^{-1} P(g x)``; fixes covariant inputs."""
    acc = VectorPoly.zero(rep.n, rep.d)
    for i in range(rep.order):
        acc = acc + covariant_action(i, P, rep)
    return acc * rep.weight
