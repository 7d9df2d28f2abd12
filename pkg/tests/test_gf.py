import itertools

import pytest
from hypothesis import given, strategies as st

from cess.errors import DivisionByZero, ModulusMismatch, NotPrime
from cess.gf import FieldElement, PrimeField, add, inv, is_prime, mul, next_prime, power, symbol_bytes

F7, F11 = PrimeField(7), PrimeField(11)


def test_add_examples():
    assert add(F11(3), F11(9)) == F11(1)
    assert add(F11(0), F11(7)) == F11(7)
    assert add(F11(5), F11(6)) == F11(0)


def test_mul_examples():
    assert mul(F11(7), F11(7)) == F11(5)
    assert mul(F11(4), F11(4)) == F11(5)
    assert mul(F11(9), F11(1)) == F11(9)


def test_inverse_examples():
    assert inv(F11(1)) == F11(1)
    assert inv(F11(7)) == F11(8)
    assert inv(F7(2)) == F7(4)


def test_power_examples():
    assert power(F11(7), 2) == F11(5)
    assert power(F7(6), 3) == F7(6)
    assert power(F7(0), 0) == F7(1)
    assert power(F11(3), 0) == F11(1)
    assert power(F11(2), -1) == F11(6)


def test_inverse_matches_search():
    for q in (7, 11, 13):
        for a in range(1, q):
            found = [b for b in range(1, q) if a * b % q == 1]
            assert inv(FieldElement(a, q)).value == found[0]


def test_zero_has_no_inverse():
    with pytest.raises(DivisionByZero):
        inv(F11(0))
    with pytest.raises(ZeroDivisionError):
        F7(3) / F7(0)


def test_mixed_fields_rejected():
    with pytest.raises(ModulusMismatch):
        F7(1) + F11(1)
    with pytest.raises(ModulusMismatch):
        mul(F7(1), F11(1))


def test_composite_modulus_rejected():
    with pytest.raises(NotPrime):
        FieldElement(1, 12)
    with pytest.raises(NotPrime):
        PrimeField(1)


@pytest.mark.parametrize("q", [7, 11])
def test_field_axioms_exhaustive(q):
    F = list(PrimeField(q))
    zero, one = F[0], F[1]
    for a, b in itertools.product(F, repeat=2):
        assert a + b == b + a
        assert a * b == b * a
    for a, b, c in itertools.product(F, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
    for a in F:
        assert a + zero == a and a * one == a
        assert a + (-a) == zero
        if a != zero:
            assert a * a.inverse() == one
            assert a ** (q - 1) == one


@given(st.sampled_from([2, 3, 5, 7, 11, 13, 257, 65537]), st.integers(), st.integers())
def test_matches_integer_arithmetic(q, a, b):
    x, y = FieldElement(a, q), FieldElement(b, q)
    assert (x + y).value == (a + b) % q
    assert (x - y).value == (a - b) % q
    assert (x * y).value == (a * b) % q
    if b % q:
        assert (x / y) * y == x


@given(st.sampled_from([7, 11, 257, 65537, 2**31 - 1]), st.integers(min_value=0))
def test_bytes_roundtrip(q, v):
    x = FieldElement(v, q)
    data = x.to_bytes()
    assert len(data) == symbol_bytes(q)
    assert FieldElement.from_bytes(data, q) == x


def test_primes():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert next_prime(257) == 257
    assert next_prime(258) == 263
    assert symbol_bytes(257) == 2 and symbol_bytes(256) == 1 and symbol_bytes(11) == 1
