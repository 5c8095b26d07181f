from fractions import Fraction

import pytest

from covkit.fixtures import FIXTURES
from covkit.molien import (
    dimension_bruteforce, molien_covariant, molien_invariant, series_expand, upoly_det,
)
from covkit.exact import Matrix
from covkit.group_rep import close_group

from oracles import orbit_dimension, series_coefficients


def test_c2_invariant_series(reps):
    s = molien_invariant(reps["c2_sign"], 9)
    # (1/2)(1/(1-t) + 1/(1+t)): sum of all-ones and alternating signs, halved
    oracle = [Fraction(1 + (-1) ** m, 2) for m in range(10)]
    assert list(s.expansion) == oracle
    assert list(s.denominator) in ([1, 0, -1], [-1, 0, 1])


def test_trivial_group_series():
    triv = close_group([Matrix([[1]])], [Matrix([[1]])])
    assert list(molien_invariant(triv, 6).expansion) == [1] * 7


def test_s2_series_against_orbit_count(reps):
    s = molien_invariant(reps["s2_trivial"], 8)
    assert list(s.expansion)[:7] == [1, 1, 2, 2, 3, 3, 4]
    assert list(s.expansion) == [orbit_dimension(reps["s2_trivial"], m) for m in range(9)]
    # 1/((1-t)(1-t^2)) expanded by naive long division
    assert list(s.expansion) == series_coefficients([1], [1, -1, -1, 1], 8)


def test_covariant_series_examples(reps):
    c2 = molien_covariant(reps["c2_sign"], 7)
    assert list(c2.expansion) == [0, 1, 0, 1, 0, 1, 0, 1]
    assert molien_covariant(reps["c2_trivial"], 8).expansion == molien_invariant(reps["c2_trivial"], 8).expansion
    c22 = molien_covariant(reps["c2xc2_standard"], 6)
    assert list(c22.expansion) == [0, 2, 0, 4, 0, 6, 0]
    assert list(c22.expansion) == [orbit_dimension(reps["c2xc2_standard"], m) for m in range(7)]


def test_bruteforce_examples(reps):
    c2 = reps["c2_sign"]
    assert dimension_bruteforce(c2, 2, "invariant") == 1
    assert dimension_bruteforce(c2, 2, "covariant") == 0
    for rep in reps.values():
        assert dimension_bruteforce(rep, 0, "invariant") == 1
    with pytest.raises(ValueError):
        dimension_bruteforce(c2, 1, "other")


@pytest.mark.parametrize("name", FIXTURES)
def test_molien_matches_oracles(reps, name):
    rep = reps[name]
    inv = molien_invariant(rep, 8)
    cov = molien_covariant(rep, 8)
    for m in range(9):
        assert inv.coefficient(m) == dimension_bruteforce(rep, m, "invariant") == orbit_dimension(rep, m, True)
        assert cov.coefficient(m) == dimension_bruteforce(rep, m, "covariant") == orbit_dimension(rep, m)
        assert inv.coefficient(m).denominator == 1 and inv.coefficient(m) >= 0
        assert cov.coefficient(m).denominator == 1 and cov.coefficient(m) >= 0


def test_non_orthogonal_group(c3):
    inv = molien_invariant(c3, 8)
    cov = molien_covariant(c3, 8)
    for m in range(9):
        assert inv.coefficient(m) == dimension_bruteforce(c3, m, "invariant")
        assert cov.coefficient(m) == dimension_bruteforce(c3, m, "covariant")


def test_upoly_det_and_series():
    # det [[1 - t, t], [t, 1 + t]] = 1 - t^2 - t^2 = 1 - 2t^2
    F = Fraction
    m = [[[F(1), F(-1)], [F(0), F(1)]], [[F(0), F(1)], [F(1), F(1)]]]
    assert upoly_det(m) == [1, 0, -2]
    assert series_expand([F(1)], [F(1), F(-1)], 4) == [1] * 5
    # 3x3 with a zero leading pivot forces a row swap
    z = [[[], [F(1)], []], [[F(1)], [], []], [[], [], [F(1)]]]
    assert upoly_det(z) == [-1]
