from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from birank.exactnum import CycInt, zeta
from birank.qseries import (
    QSeries,
    ZLaurent,
    dissect,
    euler_E,
    euler_E_product,
    jacobi_J,
    pochhammer,
    pochhammer_inf,
    qs_inv,
    substitute_qpower,
    theta_sum,
    zl_build,
    zl_theta,
)


def naive_mul(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * n
    for i, x in enumerate(a[:n]):
        for j, y in enumerate(b[: n - i]):
            out[i + j] += x * y
    return out


def dense(s: QSeries, n: int) -> list:
    return [s[k] for k in range(n)]


def partition_counts(n: int) -> list[int]:
    """Coin-change DP: an oracle for 1/E(q) that shares no code with the series layer."""
    p = [1] + [0] * (n - 1)
    for part in range(1, n):
        for k in range(part, n):
            p[k] += p[k - part]
    return p


coeff_lists = st.lists(st.integers(-20, 20), min_size=1, max_size=25)


@given(coeff_lists, coeff_lists, st.integers(-5, 5), st.integers(-5, 5))
def test_product_matches_naive_convolution(a, b, va, vb):
    n = min(len(a), len(b))
    sa = QSeries.from_dict({va + i: c for i, c in enumerate(a)}, va + n)
    sb = QSeries.from_dict({vb + i: c for i, c in enumerate(b)}, vb + n)
    prod = sa * sb
    expect = naive_mul(a, b, n)
    for k in range(n):
        assert prod[va + vb + k] == expect[k]


@given(coeff_lists)
def test_inverse_contract(a):
    if a[0] not in (1, -1):
        a = [1] + a
    s = QSeries.from_dict(dict(enumerate(a)), len(a))
    assert (s * qs_inv(s)).compare(QSeries.one(len(a))) is None


def test_telescoping():
    n = 15
    geo = QSeries.from_dict({k: 1 for k in range(n)}, n)
    assert (geo.mul_binomial(1, 1)) == QSeries.one(n)


def test_valuation_arithmetic():
    a = QSeries.monomial(1, -2, 10)
    b = QSeries.monomial(1, 3, 10)
    c = a * b
    assert c.valuation == 1 and c[1] == 1


def test_partition_numbers():
    assert dense(qs_inv(euler_E(9)), 9) == [1, 1, 2, 3, 5, 7, 11, 15, 22]
    assert dense(qs_inv(euler_E(60)), 60) == partition_counts(60)


def test_ten_bipartitions_of_three():
    assert (qs_inv(euler_E(10)) ** 2)[3] == 10


def test_inverse_of_one():
    assert qs_inv(QSeries.one(10)) == QSeries.one(10)


def test_pentagonal():
    assert euler_E(8) == QSeries.from_dict({0: 1, 1: -1, 2: -1, 5: 1, 7: 1}, 8)
    assert euler_E(1) == QSeries.one(1)
    assert euler_E(30) == euler_E_product(30)
    assert euler_E(200) == euler_E_product(200)


def test_pochhammer_definition_coincidence():
    assert pochhammer_inf(1, 1, 1, 40) == euler_E(40)


def test_jacobi_triple_product_at_minus_one():
    p = 40
    lhs = pochhammer_inf(-1, 1, 2, p) * pochhammer_inf(-1, 1, 2, p) * pochhammer_inf(1, 2, 2, p)
    assert lhs == theta_sum(1, 0, 1, p)
    assert dense(theta_sum(1, 0, 1, 10), 10) == [1, 2, 0, 0, 2, 0, 0, 0, 0, 2]


def test_hl_product_against_jacobi_forms():
    # (zq;q)(z^-1 q;q)(q;q) at z = zeta is J-product data; expand both sides independently
    p = 12
    z = zeta(5)
    lhs = pochhammer_inf(z, 1, 1, p) * pochhammer_inf(z.unit_inverse(), 1, 1, p) * euler_E(p)
    # triple product: (z;q)(q/z;q)(q;q) = sum (-1)^n z^n q^{n(n-1)/2}
    rhs = theta_sum(-z, -1, 1, 2 * p)
    rhs = QSeries.from_dict({k // 2: c for k, c in rhs.terms() if k % 2 == 0 and k // 2 < p}, p, 5)
    assert (lhs * (1 - z)).compare(rhs) is None


def test_J15_expansion():
    # three Pochhammer factors expanded: 1 - q - q^4 + q^7 + ...
    assert dense(jacobi_J(1, 5, 12), 12) == [1, -1, 0, 0, -1, 0, 0, 1, 0, 0, 0, 0]


@pytest.mark.parametrize("a,m", [(1, 5), (2, 5), (3, 10), (7, 50)])
def test_J_symmetry(a, m):
    assert jacobi_J(a, m, 60) == jacobi_J(m - a, m, 60)


def test_J12_signs():
    j = jacobi_J(1, 2, 10)
    assert (j[0], j[1], j[4]) == (1, -2, 2)


def test_theta_cases():
    assert dense(theta_sum(-1, 0, 1, 10), 10) == [1, -2, 0, 0, 2, 0, 0, 0, 0, -2]
    t = theta_sum(1, 0, 1, 5)
    assert (t[0], t[1]) == (1, 2)


def test_dissect_trivial_cases():
    s = QSeries.from_dict({0: 1, 1: 1, 5: 1}, 10)
    assert dissect(s, 0, 5) == QSeries.from_dict({0: 1, 1: 1}, 2)
    s2 = QSeries.from_dict({2: 1, 7: 3, 8: 1}, 10)
    assert dissect(s2, 2, 5) == QSeries.from_dict({0: 1, 1: 3}, 2)
    e = euler_E(10)
    assert dissect(e, 0, 1) == e


@given(coeff_lists, st.integers(2, 7))
def test_dissect_reassembles(a, t):
    s = QSeries.from_dict(dict(enumerate(a)), len(a))
    back = QSeries.zero(len(a))
    for r in range(t):
        back = back + substitute_qpower(dissect(s, r, t), t).shift(r).truncate(len(a))
    assert back.compare(s) is None


def test_substitution():
    assert substitute_qpower(QSeries.from_dict({0: 1, 1: -1}, 2), 5) == QSeries.from_dict({0: 1, 5: -1}, 10)
    e = euler_E(20)
    assert substitute_qpower(substitute_qpower(e, 2), 3) == substitute_qpower(e, 6)
    assert substitute_qpower(euler_E(10), 24)[24] == -1


def test_precision_is_pessimistic():
    a = QSeries.one(10)
    b = QSeries.one(7)
    assert (a + b).precision == 7
    assert (b * QSeries.monomial(1, 2, 10)).precision == 9
    assert (a * QSeries.monomial(1, 2, 7)).precision == 7


def test_mixed_rings_promote():
    s = QSeries.one(5) + QSeries.monomial(zeta(5), 1, 5)
    assert s.order == 5
    assert s[0] == CycInt.from_int(5, 1)


def test_galois_on_series():
    s = QSeries.monomial(zeta(5), 1, 5)
    assert s.galois(2)[1] == zeta(5, 2)


def test_json_round_trip():
    s = QSeries.from_dict({-1: zeta(5), 3: CycInt.from_int(5, -2)}, 8, 5)
    d = json.loads(s.to_json())
    assert set(d) >= {"ring", "t", "valuation", "precision", "coeffs"}
    assert QSeries.from_json(s.to_json()) == s
    e = euler_E(20)
    assert QSeries.from_json(e.to_json()) == e


def test_render_shape():
    assert euler_E(3).render() == "1 - q - q^2 + O(q^3)"
    assert "(" in QSeries.monomial(zeta(5) + 1, 2, 4).render()


def test_compare_reports_first_mismatch():
    a = euler_E(20)
    b = a + QSeries.monomial(1, 7, 20)
    m = a.compare(b)
    assert m is not None and m.exponent == 7


def test_zlaurent_theta_functional_equation():
    # Theta(z q^2, q) = z^-1 q^-1 Theta(z, q), compared on every z-power
    th = zl_theta(1, 0, 1, 40)
    assert th.shift_z(2).compare(th.mul_monomial(1, -1, -1)) is None
    assert th.shift_z(2).compare(th.mul_monomial(1, -1, 0)) is not None


def test_zlaurent_product_and_coeff():
    p = 20
    a = zl_theta(1, 0, 1, p)
    b = zl_theta(1, 0, 1, p)
    prod = a * b
    # z^0 coefficient: sum_n q^{2n^2}
    zero = prod.coeff_z(0)
    expect = QSeries.from_dict({2 * n * n: (1 if n == 0 else 2) for n in range(4)}, prod.qprec)
    assert zero.truncate(prod.qprec).compare(expect.truncate(prod.qprec)) is None


def test_zlaurent_evaluate_at_one():
    p = 25
    t = zl_theta(1, 0, 1, p)
    assert t.evaluate(1) == theta_sum(1, 0, 1, p)
    assert t.twist(-1).evaluate(1) == theta_sum(-1, 0, 1, p)


def test_zl_build_merges_terms():
    z = zl_build(None, [(1, 2, 1), (1, 2, 4), (-1, 0, 1)], 10)
    assert z.coeff_z(1)[2] == 5
    assert z.coeff_z(-1)[0] == 1
    assert z.coeff_z(3).is_zero()


def test_finite_pochhammer_and_inverse():
    p = 15
    fin = pochhammer(1, 1, 1, 3, p)
    assert dense(fin, 8) == naive_mul(naive_mul([1, -1], [1, 0, -1], 8), [1, 0, 0, -1], 8)
    assert fin * pochhammer(1, 1, 1, 3, p, inverse=True) == QSeries.one(p)


def test_zlaurent_rejects_short_coefficients():
    with pytest.raises(ValueError):
        ZLaurent({0: QSeries.one(5)}, 10)
