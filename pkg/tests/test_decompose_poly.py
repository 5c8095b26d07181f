import random

import pytest

from covkit.decompose_poly import decompose, is_covariant, is_invariant, reassemble
from covkit.errors import DegreeBeyondCertification, DimensionMismatch, NotCovariant
from covkit.fixtures import FIXTURES
from covkit.generators import covariant_generators, invariant_generators
from covkit.polynomials import Poly, VectorPoly, parse_poly, parse_vector

from conftest import random_fraction


@pytest.fixture(scope="module")
def tables(reps):
    out = {}
    for name in FIXTURES:
        rep = reps[name]
        cap = max(rep.order, 6)
        inv = invariant_generators(rep, cap)
        out[name] = (rep, inv, covariant_generators(rep, inv, cap))
    return out


def random_invariant(rng, inv, top):
    p = Poly.zero(inv.rep.n)
    for m in range(top + 1):
        for q in inv.basis(m):
            if rng.random() < 0.5:
                p = p + q * random_fraction(rng)
    return p


def test_is_covariant_examples(reps):
    x = parse_vector("(x)", 1, 1)
    assert is_covariant(x, reps["c2_sign"])
    assert not is_covariant(x, reps["c2_trivial"])
    assert is_covariant(VectorPoly.zero(1, 1), reps["c2_trivial"])
    with pytest.raises(DimensionMismatch):
        is_covariant(parse_vector("(x, y)", 2, 2), reps["c2_sign"])


def test_decompose_examples(tables):
    rep, inv, basis = tables["c2_sign"]
    (p,) = decompose(parse_vector("(x^5)", 1, 1), basis, inv, rep)
    assert p == parse_poly("x^4", 1)
    zero = decompose(VectorPoly.zero(1, 1), basis, inv, rep)
    assert all(c.is_zero() for c in zero)
    rep, inv, basis = tables["c2xc2_standard"]
    F = parse_vector("(x^3, x^2*y)", 2, 2)
    coeffs = decompose(F, basis, inv, rep)
    assert reassemble(coeffs, basis) == F
    # basis order is canonical: (x, 0) then (0, y)
    assert basis.generators == (parse_vector("(x, 0)", 2, 2), parse_vector("(0, y)", 2, 2))
    assert coeffs == [parse_poly("x^2", 2), parse_poly("x^2", 2)]


def test_errors(tables):
    rep, inv, basis = tables["c2_sign"]
    with pytest.raises(NotCovariant):
        decompose(parse_vector("(x^2)", 1, 1), basis, inv, rep)
    with pytest.raises(DegreeBeyondCertification):
        decompose(parse_vector("(x^9)", 1, 1), basis, inv, rep)


@pytest.mark.parametrize("name", FIXTURES)
def test_round_trip(tables, name):
    rep, inv, basis = tables[name]
    rng = random.Random(hash(name) & 0xFFFF)
    top = basis.certified_degree
    for _ in range(15):
        ps = [random_invariant(rng, inv, top - s) for s in basis.degrees]
        F = reassemble(ps, basis)
        got = decompose(F, basis, inv, rep)
        assert reassemble(got, basis) == F
        for p, s in zip(got, basis.degrees):
            assert is_invariant(p, rep)
            if not p.is_zero():
                assert p.degree() + s <= F.degree()


def test_non_orthogonal_round_trip(c3):
    inv = invariant_generators(c3)
    basis = covariant_generators(c3, inv)
    rng = random.Random(5)
    for _ in range(5):
        ps = [random_invariant(rng, inv, basis.certified_degree - s) for s in basis.degrees]
        F = reassemble(ps, basis)
        assert reassemble(decompose(F, basis, inv, c3), basis) == F
