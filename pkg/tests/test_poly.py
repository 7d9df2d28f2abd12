import random

import pytest
from hypothesis import given, settings, strategies as st

from cess.errors import DuplicateAbscissa, IncompleteTail
from cess.gf import PrimeField
from cess.poly import DensePolynomial, horner, interpolate, interpolate_ints, interpolate_with_known_tail

F7, F11 = PrimeField(7), PrimeField(11)


def test_evaluate_examples():
    p = DensePolynomial((1, 1, 1), 11)  # m1 + m2 x + k x^2
    assert p(F11(4)) == F11(10)
    assert DensePolynomial((), 11)(F11(6)) == F11(0)
    assert DensePolynomial((1, 4, 1, 1), 7)(F7(1)) == F7(0)


def test_cubic_roots():
    f = DensePolynomial((1, 4, 1, 1), 7)
    assert [f(x).value for x in range(1, 4)] == [0, 0, 0]
    assert all(f(x).value for x in range(4, 7))


def test_normalization():
    p = DensePolynomial((3, 0, 11, 0), 11)
    assert p.coeffs == (3,) and p.degree == 0
    assert DensePolynomial((), 7).degree == -1
    assert p.coefficient(5) == F11(0)
    assert p.padded(3) == (3, 0, 0)


def test_constant_fit():
    pts = [(F11(x), F11(6)) for x in (1, 2, 3)]
    assert interpolate(pts).coeffs == (6,)


def test_three_party_shares():
    m1, m2, k = 2, 3, 1
    shares = [(x, (m1 + m2 * x + k * x * x) % 11) for x in (1, 2, 3)]
    poly = interpolate([(F11(x), F11(y)) for x, y in shares])
    assert poly.padded(3) == (2, 3, 1)


def test_duplicate_abscissa():
    with pytest.raises(DuplicateAbscissa):
        interpolate([(F11(1), F11(2)), (F11(1), F11(3))])


@settings(max_examples=60)
@given(st.sampled_from([7, 11, 13, 257]), st.data())
def test_interpolation_roundtrip(q, data):
    deg = data.draw(st.integers(min_value=0, max_value=min(q - 2, 8)))
    coeffs = data.draw(st.lists(st.integers(0, q - 1), min_size=deg + 1, max_size=deg + 1))
    xs = data.draw(st.lists(st.integers(1, q - 1), min_size=deg + 1, max_size=deg + 1, unique=True))
    ys = [horner(coeffs, x, q) for x in xs]
    assert interpolate_ints(xs, ys, q) == coeffs


def test_known_tail_recovers_low_coefficients():
    # f = k1 + m1 x + ... + m6 x^6 from the seven-node ladder; g has already yielded m4..m6
    coeffs = [9, 1, 2, 3, 4, 5, 6]
    xs = [2, 3, 5, 7]
    pts = [(F11(x), F11(horner(coeffs, x, 11))) for x in xs]
    tail = {4: F11(4), 5: F11(5), 6: F11(6)}
    poly = interpolate_with_known_tail(pts, tail, 4)
    assert poly.padded(7) == tuple(coeffs)


def test_empty_tail_matches_interpolate():
    rng = random.Random(3)
    coeffs = [rng.randrange(13) for _ in range(4)]
    pts = [(PrimeField(13)(x), PrimeField(13)(horner(coeffs, x, 13))) for x in (1, 4, 6, 9)]
    assert interpolate_with_known_tail(pts, {}, 4) == interpolate(pts)


def test_wrong_tail_fails_held_out_point():
    coeffs = [9, 1, 2, 3, 4, 5, 6]
    xs = [1, 2, 3, 4]
    pts = [(F11(x), F11(horner(coeffs, x, 11))) for x in xs]
    bad = {4: F11(4), 5: F11(5), 6: F11(7)}
    poly = interpolate_with_known_tail(pts, bad, 4)
    assert poly(F11(6)).value != horner(coeffs, 6, 11)


def test_incomplete_tail():
    pts = [(F11(x), F11(x)) for x in (1, 2)]
    with pytest.raises(IncompleteTail):
        interpolate_with_known_tail(pts, {3: F11(1)}, 2)
    with pytest.raises(IncompleteTail):
        interpolate_with_known_tail(pts, {1: F11(1)}, 2)
