"""The compiled kernels and the pure-Python fallback must agree exactly."""
import importlib

import pytest
from hypothesis import given, strategies as st

from covkit import _backend, _kernels_py

try:
    compiled = importlib.import_module("covkit._kernels")
except ImportError:  # extension not built
    compiled = None

IMPLS = [_kernels_py] + ([compiled] if compiled is not None else [])

int_rows = st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c), min_size=0, max_size=6).map(
        lambda rows: (rows, c)
    )
)
sparse = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-5, 5).filter(bool), max_size=5
)


def test_backend_reports_choice():
    assert _backend.BACKEND in ("compiled", "python")


@pytest.mark.parametrize("impl", IMPLS, ids=lambda m: m.__name__)
def test_rref_int_example(impl):
    rows, piv = impl.rref_int([[2, 4, 6], [1, 3, 5]], 3)
    assert piv == [0, 1]
    assert rows == [[1, 0, -1], [0, 1, 2]]


@pytest.mark.parametrize("impl", IMPLS, ids=lambda m: m.__name__)
def test_rref_int_does_not_mutate(impl):
    rows = [[0, 3], [2, 1]]
    impl.rref_int(rows, 2)
    assert rows == [[0, 3], [2, 1]]


@pytest.mark.parametrize("impl", IMPLS, ids=lambda m: m.__name__)
def test_poly_mul_example(impl):
    # (x + y) * (x - y) = x^2 - y^2
    a = {(1, 0): 1, (0, 1): 1}
    b = {(1, 0): 1, (0, 1): -1}
    assert impl.poly_mul(a, b) == {(2, 0): 1, (0, 2): -1}


@pytest.mark.skipif(compiled is None, reason="compiled kernels not built")
@given(int_rows)
def test_rref_backends_agree(case):
    rows, c = case
    assert compiled.rref_int(rows, c) == _kernels_py.rref_int(rows, c)


@pytest.mark.skipif(compiled is None, reason="compiled kernels not built")
@given(sparse, sparse)
def test_poly_mul_backends_agree(a, b):
    assert compiled.poly_mul(a, b) == _kernels_py.poly_mul(a, b)
