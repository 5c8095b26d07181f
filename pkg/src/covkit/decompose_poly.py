"""Write a covariant polynomial as ``sum_i p_i P_i`` with invariant ``p_i``."""
from __future__ import annotations


from .errors import DegreeBeyondCertification, DimensionMismatch, NotCovariant, NotInModule
from .exact import solve_linear
from .polynomials import Poly, VectorPoly, covariant_action
from .spaces import columns, flatten, invariant_space


def is_covariant(P: VectorPoly, rep) -> bool:
    return all(covariant_action(i, P, rep) == P for i in range(rep.order))


def is_invariant(p: Poly, rep) -> bool:
    return is_covariant(VectorPoly([p], p.n), rep.trivial())


def reassemble(coeffs, basis) -> VectorPoly:
    out = VectorPoly.zero(basis.n, basis.d)
    for p, P in zip(coeffs, basis.generators):
        out = out + P.scale_by(p)
    return out


def decompose(F: VectorPoly, basis, inv=None, rep=None):
    """Invariant coefficients ``(p_1, ..., p_k)`` with ``sum p_i P_i == F``.

    Each homogeneous slice of ``F`` is solved separately; the unknowns are
    coordinates of ``p_i`` in the canonical invariant basis of degree
    ``m - s_i`` and free unknowns are set to zero.
    """
    if rep is None:
        raise TypeError("decompose needs the group representation")
    if F.n != basis.n or F.d != basis.d:
        raise DimensionMismatch("polynomial and basis have different shapes")
    if not is_covariant(F, rep):
        raise NotCovariant("input polynomial is not covariant")
    k = len(basis.generators)
    coeffs = [Poly.zero(F.n) for _ in range(k)]
    if F.is_zero():
        return coeffs
    if F.degree() > basis.certified_degree:
        raise DegreeBeyondCertification(
            f"degree {F.degree()} exceeds certified degree {basis.certified_degree}"
        )
    inv_basis = inv.basis if inv is not None else (lambda j: invariant_space(rep, j))
    for m in F.degrees():
        target = flatten(F.homogeneous_component(m), m)
        unknowns = []
        for i, (P, s) in enumerate(zip(basis.generators, basis.degrees)):
            for q in inv_basis(m - s):
                unknowns.append((i, q, flatten(P.scale_by(q), m)))
        ncols = len(columns(F.n, F.d, m)[0])
        matrix = [[u[2][r] for u in unknowns] for r in range(ncols)]
        if not unknowns:
            raise NotInModule(f"no module elements of degree {m}")
        sol, _ = solve_linear(matrix, target)
        if sol is None:
            raise NotInModule(f"degree-{m} slice is not generated by the basis")
        for (i, q, _), c in zip(unknowns, sol):
            if c:
                coeffs[i] = coeffs[i] + q * c
    return coeffs
