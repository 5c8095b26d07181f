"""Generating families for the invariant ring and the covariant module.

Per degree, the space of invariants (covariants) is the canonical RREF
basis of averaged monomials. Whatever lower-degree generators already
produce is spanned first; basis members that still raise the rank become
new generators, scanned in basis order, so the choice is canonical.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import MolienMismatch
from .exact import rref
from .molien import molien_covariant, molien_invariant
from .polynomials import Poly, VectorPoly
from .spaces import columns, covariant_space, flatten, invariant_space


@dataclass(frozen=True)
class InvariantBasisTable:
    rep: object = field(repr=False)
    degree_cap: int
    bases: tuple          # bases[m] = tuple of Poly spanning degree-m invariants
    flags: tuple          # flags[m][j] is True when bases[m][j] is a new generator

    @property
    def generators(self):
        return tuple(b for m in range(len(self.bases)) for b, f in zip(self.bases[m], self.flags[m]) if f)

    @property
    def generator_degrees(self):
        return tuple(g.degree() for g in self.generators)

    def basis(self, m):
        if m < 0:
            return ()
        if m < len(self.bases):
            return self.bases[m]
        return invariant_space(self.rep, m)


@dataclass(frozen=True)
class CovariantBasis:
    generators: tuple     # VectorPoly, homogeneous, degrees non-decreasing
    degrees: tuple
    certified_degree: int
    n: int
    d: int

    def __len__(self):
        return len(self.generators)

    def without(self, i):
        """Copy with generator ``i`` removed (for certification experiments)."""
        keep = [j for j in range(len(self.generators)) if j != i]
        return CovariantBasis(
            tuple(self.generators[j] for j in keep),
            tuple(self.degrees[j] for j in keep),
            self.certified_degree, self.n, self.d,
        )


class _Span:
    """Incrementally maintained row space of degree-m vectors."""

    def __init__(self, n, d, m, polys=()):
        self.n, self.d, self.m = n, d, m
        self.ncols = len(columns(n, d, m)[0])
        self.rows, _ = rref([flatten(P, m) for P in polys], self.ncols)

    @property
    def rank(self):
        return len(self.rows)

    def add(self, P) -> bool:
        rows, _ = rref(self.rows + [flatten(P, self.m)], self.ncols)
        grew = len(rows) > len(self.rows)
        self.rows = rows
        return grew


def _as_vector(p: Poly):
    return VectorPoly([p], p.n)


def _module_products(gens, degrees, inv_basis, m):
    out = []
    for P, s in zip(gens, degrees):
        if s <= m:
            for q in inv_basis(m - s):
                out.append(P.scale_by(q))
    return out


def invariant_generators(rep, degree_cap=None) -> InvariantBasisTable:
    """Noether-style search; default ``degree_cap`` is ``|G|``."""
    cap = rep.order if degree_cap is None else degree_cap
    if cap < 1:
        raise ValueError("degree_cap must be at least 1")
    molien = molien_invariant(rep, cap)
    bases, flags = [], []
    gens, gen_degrees = [], []
    for m in range(cap + 1):
        basis = invariant_space(rep, m)
        if len(basis) != molien.coefficient(m):
            raise MolienMismatch(
                f"degree {m}: {len(basis)} invariants found, Molien predicts {molien.coefficient(m)}"
            )
        if m == 0:
            bases.append(basis)
            flags.append(tuple(False for _ in basis))
            continue
        products = [
            g * q for g, s in zip(gens, gen_degrees) for q in bases[m - s]
        ]
        span = _Span(rep.n, 1, m, [_as_vector(p) for p in products])
        row_flags = []
        for b in basis:
            new = span.rank < len(basis) and span.add(_as_vector(b))
            row_flags.append(new)
        for b, f in zip(basis, row_flags):
            if f:
                gens.append(b)
                gen_degrees.append(m)
        bases.append(basis)
        flags.append(tuple(row_flags))
    return InvariantBasisTable(rep, cap, tuple(bases), tuple(flags))


def covariant_generators(rep, inv: InvariantBasisTable = None, degree_cap=None) -> CovariantBasis:
    """Generators of the covariant module up to ``degree_cap`` (default ``|G|``)."""
    cap = rep.order if degree_cap is None else degree_cap
    if inv is None:
        inv = invariant_generators(rep, max(cap, 1))
    molien = molien_covariant(rep, cap)
    gens, degrees = [], []
    for m in range(cap + 1):
        space = covariant_space(rep, m)
        if len(space) != molien.coefficient(m):
            raise MolienMismatch(
                f"degree {m}: {len(space)} covariants found, Molien predicts {molien.coefficient(m)}"
            )
        span = _Span(rep.n, rep.d, m, _module_products(gens, degrees, inv.basis, m))
        for P in space:
            if span.rank == len(space):
                break
            if span.add(P):
                gens.append(P)
                degrees.append(m)
    return CovariantBasis(tuple(gens), tuple(degrees), cap, rep.n, rep.d)


@dataclass(frozen=True)
class CertificationReport:
    passed: bool
    first_failure: int | None
    check_cap: int
    rows: tuple           # (degree, covariant dimension, dimension reached by the basis)


def certify_generators(rep, basis: CovariantBasis, check_cap=None, inv=None) -> CertificationReport:
    """Check that the basis generates every covariant of degree <= ``check_cap``.

    Default ``check_cap`` is ``2|G|``, and never below the certified degree.
    """
    cap = 2 * rep.order if check_cap is None else check_cap
    cap = max(cap, basis.certified_degree)
    inv_basis = inv.basis if inv is not None else (lambda k: invariant_space(rep, k))
    rows = []
    first = None
    for m in range(cap + 1):
        dim = len(covariant_space(rep, m))
        products = _module_products(basis.generators, basis.degrees, inv_basis, m)
        reached = _Span(rep.n, rep.d, m, products).rank
        rows.append((m, dim, reached))
        if reached != dim and first is None:
            first = m
    return CertificationReport(first is None, first, cap, tuple(rows))
