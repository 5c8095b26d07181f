import json

import pytest

from covkit.errors import CapExceeded, ConfigParse, NotAHomomorphism
from covkit.exact import Matrix, identity, mat_inverse, mat_mul
from covkit.fixtures import FIXTURES, fixture_path
from covkit.group_rep import (
    check_norm_invariance, close_group, generators_to_dict, load_group, rep_from_dict, validate,
)

EXPECTED_ORDERS = {
    "c2_sign": 2, "c2_trivial": 2, "s2_trivial": 2, "s2_sign": 2,
    "c2xc2_standard": 4, "s3_trivial": 6, "s3_sign": 6,
}


def test_close_examples():
    assert close_group([Matrix([[-1]])], [Matrix([[-1]])]).order == 2
    assert close_group([Matrix([[0, 1], [1, 0]])], [Matrix([[1]])]).order == 2
    with pytest.raises(CapExceeded):
        close_group([Matrix([[2]])], [Matrix([[1]])], cap=1000)


def test_not_a_homomorphism():
    # x -> -x has order 2 but rho = 2 has infinite order: the words g^2 collide
    with pytest.raises(NotAHomomorphism):
        close_group([Matrix([[-1]])], [Matrix([[2]])])
    # two generators with the same source but different rho
    with pytest.raises(NotAHomomorphism):
        close_group([Matrix([[-1]]), Matrix([[-1]])], [Matrix([[1]]), Matrix([[-1]])])


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_closure_invariants(name):
    rep = load_group(fixture_path(name))
    assert rep.order == EXPECTED_ORDERS[name]
    validate(rep)
    assert rep.source(rep.identity_index) == identity(rep.n)
    assert rep.weight * rep.order == 1
    for i in range(rep.order):
        j = rep.inverse_index(i)
        assert rep.rho(j) == mat_inverse(rep.rho(i))
        assert rep.rho_inverse(i) == rep.rho(j)


def test_norm_invariance_examples(c3):
    signed = close_group([Matrix([[0, -1], [1, 0]])], [Matrix([[1]])])
    assert check_norm_invariance(signed) == (True, True)
    shear = Matrix([[1, 1], [0, 1]])
    from covkit.group_rep import _is_orthogonal
    assert not _is_orthogonal(shear)
    pm = close_group([Matrix([[-1, 0], [0, -1]])], [Matrix([[-1]])])
    assert check_norm_invariance(pm) == (True, True)
    assert check_norm_invariance(c3) == (False, False)


def test_json_round_trip_is_bit_exact(tmp_path):
    src = [Matrix([["-1/2", "3/7"], ["0", "1"]])]
    rho = [Matrix([["1"]])]
    data = generators_to_dict(src, rho, name="odd")
    text = json.dumps(data)
    back = json.loads(text)
    assert [Matrix(m) for m in back["source_generators"]] == src
    assert back["source_generators"][0][0] == ["-1/2", "3/7"]


def test_unicode_minus_and_bad_files(tmp_path):
    rep = rep_from_dict({"n": 1, "d": 1, "source_generators": [[["−1"]]], "rho_generators": [[["−1"]]]})
    assert rep.order == 2
    with pytest.raises(ConfigParse):
        rep_from_dict({"n": 1, "d": 1, "source_generators": [[["x"]]], "rho_generators": [[["1"]]]})
    with pytest.raises(ConfigParse):
        rep_from_dict({"n": 2, "d": 1, "source_generators": [[["1"]]], "rho_generators": [[["1"]]]})
    with pytest.raises(ConfigParse):
        rep_from_dict({"n": 1, "d": 1, "source_generators": [[["0"]]], "rho_generators": [[["1"]]]})
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigParse):
        load_group(bad)


def test_product_index_consistent(reps):
    rep = reps["s3_sign"]
    for i in range(rep.order):
        for j in range(rep.order):
            k = rep.product_index(i, j)
            assert rep.rho(k) == mat_mul(rep.rho(i), rep.rho(j))
