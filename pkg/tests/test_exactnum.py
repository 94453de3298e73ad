from __future__ import annotations

import cmath

import pytest
from hypothesis import given
from hypothesis import strategies as st

from birank.exactnum import CycInt, cyc_add, cyc_make, cyc_mul, is_prime, zeta

PRIMES = [5, 7, 11, 13]


def numeric(x: CycInt) -> complex:
    """Independent oracle: evaluate the basis form at exp(2 pi i / t)."""
    w = cmath.exp(2j * cmath.pi / x.order)
    return sum(c * w**k for k, c in enumerate(x.coeffs))


def naive_value(t: int, terms) -> complex:
    w = cmath.exp(2j * cmath.pi / t)
    return sum(c * w**k for k, c in terms)


@st.composite
def cyc(draw, t=None):
    t = t or draw(st.sampled_from(PRIMES))
    terms = draw(st.lists(st.tuples(st.integers(-30, 30), st.integers(-50, 50)), max_size=8))
    return CycInt.from_terms(t, terms), terms


def test_make_unit():
    assert cyc_make(5, [(0, 1)]) == CycInt.from_int(5, 1)


def test_sum_of_all_roots_vanishes():
    assert cyc_make(5, [(k, 1) for k in range(5)]) == CycInt.from_int(5, 0)
    assert not cyc_make(5, [(k, 1) for k in range(5)])


def test_top_power_is_eliminated():
    assert cyc_make(5, [(4, 1)]).coeffs == (-1, -1, -1, -1)


def test_zeta_times_zeta4():
    assert cyc_mul(zeta(5), zeta(5, 4)) == 1


def test_square_of_zeta_plus_inverse():
    x = zeta(5) + zeta(5, 4)
    assert x * x == cyc_make(5, [(0, 2), (2, 1), (3, 1)])


def test_multiply_by_one():
    x = cyc_make(5, [(0, 1), (2, 1), (3, 1)])
    assert x * 1 == x


def test_additive_cases():
    assert cyc_add(zeta(5), -zeta(5)) == 0
    assert (zeta(5) + zeta(5, 4)) + (zeta(5, 2) + zeta(5, 3)) == -1
    five = CycInt.from_int(5, 2) + 3
    assert five.is_integer() and five.to_int() == 5


@given(cyc())
def test_from_terms_matches_numeric(pair):
    x, terms = pair
    assert abs(numeric(x) - naive_value(x.order, terms)) < 1e-6 * (1 + sum(abs(c) for _, c in terms))


@given(st.data())
def test_ring_laws_against_numeric(data):
    t = data.draw(st.sampled_from(PRIMES))
    (a, _), (b, _), (c, _) = (data.draw(cyc(t)) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert abs(numeric(a * b) - numeric(a) * numeric(b)) < 1e-6 * (1 + abs(numeric(a)) * abs(numeric(b)))


@given(st.sampled_from(PRIMES), st.integers(-40, 40), st.integers(0, 12))
def test_zeta_powers(t, k, n):
    z = zeta(t, k)
    assert z.root_of_unity_exponent() == (1, k % t)
    assert z ** t == 1
    assert z * z.unit_inverse() == 1
    assert z**n == zeta(t, k * n)


@given(st.data())
def test_galois_is_a_ring_map(data):
    t = data.draw(st.sampled_from(PRIMES))
    g = data.draw(st.integers(1, t - 1))
    (a, _), (b, _) = data.draw(cyc(t)), data.draw(cyc(t))
    assert (a * b).galois(g) == a.galois(g) * b.galois(g)
    assert (a + b).galois(g) == a.galois(g) + b.galois(g)


def test_canonical_form_hashes_equal():
    a = cyc_make(7, [(7, 1), (8, 2)])
    b = cyc_make(7, [(0, 1), (1, 2)])
    assert a == b and hash(a) == hash(b)


def test_mixed_orders_rejected():
    with pytest.raises((TypeError, ValueError)):
        zeta(5) + zeta(7)


def test_render():
    assert "z" in zeta(5).render()
    assert CycInt.from_int(5, 3).render() == "3"


@pytest.mark.parametrize("n,expected", [(1, False), (2, True), (9, False), (11, True), (25, False), (97, True)])
def test_is_prime(n, expected):
    assert is_prime(n) is expected


@pytest.mark.parametrize("t", [2, 3, 4, 9])
def test_order_must_be_prime_at_least_five(t):
    with pytest.raises(ValueError):
        CycInt.from_int(t, 1)
