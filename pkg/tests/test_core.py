from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cess.core import (
    SchemeId, SchemeParams, bandwidth_bound_symbols, co_bound_symbols, co_lower_bound, rate_capacity,
    validate_access,
)
from cess.errors import InvalidD, InvalidParams


def test_rate_capacity():
    assert rate_capacity(7, 4, 1) == 2
    assert rate_capacity(3, 1, 1) == 1
    assert rate_capacity(5, 0, 0) == 5
    with pytest.raises(InvalidParams):
        rate_capacity(3, 2, 1)


def test_bound_in_symbols():
    assert co_bound_symbols(2, 1, 3, 3) == 3
    assert bandwidth_bound_symbols(2, 1, 3, 3) == 9
    assert co_bound_symbols(2, 1, 7, 3) == 1
    assert bandwidth_bound_symbols(2, 1, 7, 3) == 7
    assert co_lower_bound(4, 0, 5) == 0


def test_bound_table():
    assert [co_lower_bound(2, 1, d) for d in range(3, 8)] == [
        Fraction(1), Fraction(2, 3), Fraction(1, 2), Fraction(2, 5), Fraction(1, 3)]
    with pytest.raises(InvalidD):
        co_lower_bound(2, 1, 1)


@given(st.integers(1, 20), st.integers(0, 10), st.integers(1, 10))
def test_bound_decreases_in_d(k, z, gap):
    d = z + gap
    assert co_lower_bound(k, z, d) >= co_lower_bound(k, z, d + 1) >= 0


def test_validate_access():
    p = SchemeParams(7, 4, 1, 11)
    assert validate_access([1, 2, 3], p) == "authorized"
    assert validate_access([5], p) == "blocked"
    assert validate_access([1, 6], p) == "intermediate"
    with pytest.raises(InvalidParams):
        validate_access([8], p)


def test_params_validation():
    assert SchemeParams(7, 4, 1, 11).k == 2
    with pytest.raises(InvalidParams):
        SchemeParams(7, 4, 1, 11, k=1)
    with pytest.raises(InvalidParams):
        SchemeParams(7, 4, 1, 12)
    with pytest.raises(InvalidParams):
        SchemeParams(7, 4, 1, 7)


def test_scheme_labels():
    assert SchemeId.CE_RS.label == "ce-rs"
    assert SchemeId.from_label("ce-random") is SchemeId.CE_RANDOM
