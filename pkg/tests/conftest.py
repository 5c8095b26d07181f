import random
from fractions import Fraction

import pytest
from hypothesis import settings

from covkit.exact import Matrix
from covkit.fixtures import FIXTURES, load_fixture
from covkit.group_rep import close_group
from covkit.polynomials import Poly, VectorPoly, monomials

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")

ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}: {detail}")


@pytest.fixture(scope="session")
def reps():
    return {name: load_fixture(name) for name in FIXTURES}


@pytest.fixture(params=FIXTURES)
def fixture_rep(request, reps):
    return reps[request.param]


def c3_standard():
    """Order-3 rotation in a non-orthogonal rational basis, rho = source."""
    g = Matrix([[0, -1], [1, -1]])
    return close_group([g], [g], name="c3_standard_skew")


@pytest.fixture(scope="session")
def c3():
    return c3_standard()


def random_fraction(rng, span=5, den=3):
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_poly(rng, n, max_deg=3, max_terms=4, homogeneous=None):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        m = homogeneous if homogeneous is not None else rng.randint(0, max_deg)
        e = rng.choice(monomials(n, m))
        terms[e] = terms.get(e, 0) + random_fraction(rng)
    return Poly(n, terms)


def random_vector_poly(rng, n, d, **kw):
    return VectorPoly([random_poly(rng, n, **kw) for _ in range(d)], n)


@pytest.fixture
def rng():
    return random.Random(20261014)
