"""Named q-series and a registry of identities checked by truncated expansion.

Every identity is certified only up to the precision it is run at: a passing
:class:`IdentityCheck` means the two sides agree coefficient by coefficient
below ``q^N`` for the stated ``N``.  Nothing here is a proof.

Series are built from the primitives in :mod:`birank.qseries`.  Anything that
involves a fifth root of unity lives in ``Z[zeta_5]``; the multirank identities
run over ``Z[zeta_t]`` for t in {5, 7, 11, 13}.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Optional, Sequence, Union

from .exactnum import CycInt
from .multistat import class_count, family_for
from .partitions import enumerate_five_cores, five_core_crank
from .qseries import (
    Mismatch,
    QSeries,
    ZLaurent,
    _theta_range,
    dissect,
    euler_E,
    jacobi_J,
    pochhammer,
    pochhammer_inf,
    qs_inv,
    substitute_qpower,
    theta_sum,
    zl_build,
    zl_mul,
    zl_theta,
)

__all__ = [
    "NamedSeries",
    "SERIES",
    "build_series",
    "IdentityCheck",
    "SubCheck",
    "IDENTITIES",
    "DEFAULT_PRECISION",
    "verify_identity",
    "verify_all",
    "dissection_report",
    "lattice_points",
    "T_ZETA_WEIGHTS",
    "U_ZETA_WEIGHTS",
]

Series = Union[QSeries, ZLaurent]

# z-exponent of a lattice point n = (n0..n4) in the 5-core sum
T_ZETA_WEIGHTS = (0, 1, 3, 1, 0)
# zeta-exponent of a lattice point in U(z, q), read off its five-theta product
U_ZETA_WEIGHTS = (4, 1, 0, 1, 4)
_B = (0, 1, 2, 3, 4)


def _z(t: int, *exps: int) -> CycInt:
    """sum of zeta_t^e over the given exponents."""
    return CycInt.from_terms(t, [(e, 1) for e in exps])


ZETA = CycInt.zeta(5)
ONE5 = CycInt.from_int(5, 1)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _at_power(builder: Callable[[int], QSeries], k: int, prec: int) -> QSeries:
    """builder(q) with q -> q^k, known to O(q^prec)."""
    return substitute_qpower(builder(_ceil_div(prec, k) + 1), k).truncate(prec)


# ---------------------------------------------------------------------------
# lattice sums


def _coord_min(quad: int, lin: int) -> int:
    n0 = -lin // (2 * quad)
    return min(quad * n * n + lin * n for n in (n0 - 1, n0, n0 + 1, n0 + 2))


def lattice_points(
    quad: int, lin: Sequence[int], bound: int, zero_sum: bool = False
) -> Iterator[tuple[tuple[int, ...], int]]:
    """Integer vectors n with ``quad*|n|^2 + lin.n < bound``, with that value.

    Per-coordinate ranges come from the quadratic form, using the minima of
    the remaining coordinates as slack, so no qualifying point is missed.
    With ``zero_sum`` only vectors whose entries sum to 0 are produced.
    """
    dim = len(lin)
    mins = [_coord_min(quad, l) for l in lin]
    suffix = [0] * (dim + 1)
    for i in range(dim - 1, -1, -1):
        suffix[i] = suffix[i + 1] + mins[i]

    def rec(i: int, acc: int, vec: tuple[int, ...], s: int):
        if i == dim:
            yield vec, acc
            return
        if zero_sum and i == dim - 1:
            n = -s
            v = acc + quad * n * n + lin[i] * n
            if v < bound:
                yield vec + (n,), v
            return
        for n in _theta_range(lin[i], quad, bound - acc - suffix[i + 1]):
            yield from rec(i + 1, acc + quad * n * n + lin[i] * n, vec + (n,), s + n)

    yield from rec(0, 0, (), 0)


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


@lru_cache(maxsize=None)
def _t_points(prec: int) -> tuple[tuple[int, int], ...]:
    """(z-exponent, q-exponent) for every 5-core lattice point below q^prec."""
    out = []
    for n, v in lattice_points(5, [2 * b for b in _B], 2 * prec, zero_sum=True):
        if v % 2:
            raise ArithmeticError(f"odd doubled exponent at {n}")
        out.append((_dot(T_ZETA_WEIGHTS, n), v // 2))
    return tuple(out)


def t_series(prec: int) -> ZLaurent:
    """T(z, q): the 5-core-crank generating function over 5-cores, from the lattice."""
    return zl_build(None, [(zk, qk, 1) for zk, qk in _t_points(prec)], prec)


def t_at_zeta(k: int, prec: int) -> QSeries:
    """T(zeta^k, q) from the lattice sum."""
    terms: dict[int, CycInt] = {}
    for zk, qk in _t_points(prec):
        terms[qk] = terms.get(qk, CycInt.from_int(5, 0)) + CycInt.zeta(5, k * zk)
    return QSeries.from_dict(terms, prec, 5)


def t_enumerated(prec: int) -> ZLaurent:
    """T(z, q) by listing 5-cores and their 5-core-cranks."""
    mons = []
    for n in range(prec):
        for p in enumerate_five_cores(n):
            mons.append((five_core_crank(p), n, 1))
    return zl_build(None, mons, prec)


def u_lattice(prec: int, weights: Sequence[int] = U_ZETA_WEIGHTS) -> ZLaurent:
    """U(z, q) = sum over Z^5 of z^(n.1) zeta^(w.n) q^(5|n|^2 + 2 b.n)."""
    mons = [
        (sum(n), v, CycInt.zeta(5, _dot(weights, n)))
        for n, v in lattice_points(5, [2 * b for b in _B], prec)
    ]
    return zl_build(5, mons, prec)


def u_lattice_at(sign: int, a: int, e: int, prec: int) -> QSeries:
    """U(z, q) at z = sign * zeta^a * q^e, summed directly over the lattice."""
    terms: dict[int, CycInt] = {}
    for n, v in lattice_points(5, [2 * b + e for b in _B], prec):
        s = sum(n)
        c = CycInt.zeta(5, a * s + _dot(U_ZETA_WEIGHTS, n)) * (sign**s if s >= 0 else sign ** (-s))
        terms[v] = terms.get(v, CycInt.from_int(5, 0)) + c
    return QSeries.from_dict(terms, prec, 5)


def _zl_product(factors: Callable[[int], list[ZLaurent]], prec: int) -> ZLaurent:
    """Multiply ZLaurents built at a padded precision until the result covers prec."""
    pad = 4
    while True:
        fs = factors(prec + pad)
        out = fs[0]
        for f in fs[1:]:
            out = zl_mul(out, f)
        if out.qprec >= prec:
            return out.truncate(prec)
        pad += prec - out.qprec


def u_product(prec: int) -> ZLaurent:
    """U(z, q) as the product of five theta functions in q^5."""
    spec = [(4, 0), (1, 2), (0, 4), (1, 6), (4, 8)]
    return _zl_product(lambda p: [zl_theta(CycInt.zeta(5, a), e, 5, p) for a, e in spec], prec)


# ---------------------------------------------------------------------------
# the A, B, C, D, phi, psi family


def _J(a: int, m: int, prec: int) -> QSeries:
    return jacobi_J(a, m, prec)


def _e5_squared(prec: int) -> QSeries:
    e5 = _E_at(5, prec)
    return e5 * e5


def series_A(prec: int) -> QSeries:
    """E^2(q^5) J_{2,5} / J_{1,5}^2."""
    return _e5_squared(prec) * _J(2, 5, prec) * qs_inv(_J(1, 5, prec) ** 2)


def series_B(prec: int) -> QSeries:
    """E^2(q^5) / J_{1,5}."""
    return _e5_squared(prec) * qs_inv(_J(1, 5, prec))


def series_C(prec: int) -> QSeries:
    """E^2(q^5) / J_{2,5}."""
    return _e5_squared(prec) * qs_inv(_J(2, 5, prec))


def series_D(prec: int) -> QSeries:
    """E^2(q^5) J_{1,5} / J_{2,5}^2."""
    return _e5_squared(prec) * _J(1, 5, prec) * qs_inv(_J(2, 5, prec) ** 2)


def _hyper_sum(a: int, prec: int) -> QSeries:
    """-1 + sum_n q^(5n^2) / ((q^a;q^5)_(n+1) (q^(5-a);q^5)_n)."""
    total = QSeries.monomial(-1, 0, prec)
    n = 0
    while 5 * n * n < prec:
        term = QSeries.monomial(1, 5 * n * n, prec)
        term = term * pochhammer(1, a, 5, n + 1, prec, inverse=True)
        if n:
            term = term * pochhammer(1, 5 - a, 5, n, prec, inverse=True)
        total = total + term
        n += 1
    return total


def phi_hypergeometric(prec: int) -> QSeries:
    return _hyper_sum(1, prec)


def psi_hypergeometric(prec: int) -> QSeries:
    return _hyper_sum(2, prec + 1).shift(-1)


def _lambert(a: int, prec: int) -> QSeries:
    """(q / E(q^5)) sum_m (-1)^m q^(15m(m+1)/2) / (1 - q^(5m+a))."""
    inner_prec = prec - 1
    total = QSeries.zero(inner_prec)
    m = 0
    while 15 * m * (m + 1) // 2 < inner_prec:
        k = 5 * m + a
        e = 15 * m * (m + 1) // 2
        total = total + QSeries.monomial((-1) ** m, e, inner_prec).div_binomial(1, k)
        m += 1
    m = -1
    while True:
        k = -(5 * m + a)  # 1/(1 - q^-k) = -q^k/(1 - q^k)
        e = 15 * m * (m + 1) // 2 + k
        if e >= inner_prec:
            break
        total = total + QSeries.monomial(-((-1) ** m), e, inner_prec).div_binomial(1, k)
        m -= 1
    inv_e5 = _at_power(lambda p: qs_inv(euler_E(p)), 5, inner_prec)
    return (total * inv_e5).shift(1)


def phi_lambert(prec: int) -> QSeries:
    return _lambert(1, prec)


def psi_lambert(prec: int) -> QSeries:
    return _lambert(2, prec)


# ---------------------------------------------------------------------------
# W, R and the five F_j


def series_W(prec: int) -> QSeries:
    """J_{2,5}^3 (J_{10,25} - q (1 + zeta^2 + zeta^3) J_{5,25}) over Z[zeta_5]."""
    c = _z(5, 0, 2, 3)
    inner = _J(10, 25, prec) - (_J(5, 25, prec) * c).shift(1).truncate(prec)
    return _J(2, 5, prec) ** 3 * inner


def series_R(prec: int) -> QSeries:
    return _J(1, 5, prec) * qs_inv(_J(2, 5, prec))


# coefficients (a0, a1, a2, a3) in W(q^10)(a0 + a1 q^2 R + a2 q^4 R^2 - a3 q^6 R^3)
F_COEFFS: dict[int, tuple[CycInt, CycInt, CycInt, CycInt]] = {
    0: (_z(5, 0), _z(5, 0), _z(5, 2, 3), _z(5, 2, 3)),
    1: (_z(5, 4), _z(5, 1), _z(5, 0, 1), _z(5, 2, 3)),
    2: (_z(5, 0), _z(5, 4), _z(5, 0, 1), _z(5, 0, 4)),
    3: (_z(5, 0), _z(5, 1), _z(5, 0, 4), _z(5, 0, 1)),
    4: (_z(5, 1), _z(5, 4), _z(5, 0, 4), _z(5, 2, 3)),
}


def _wr_combo(coeffs: Sequence[CycInt], step: int, prec: int) -> QSeries:
    """W(q^s)(a0 + a1 q^(s/5) R + a2 q^(2s/5) R^2 - a3 q^(3s/5) R^3) with R = R(q^s)."""
    w = _at_power(series_W, step, prec)
    r = _at_power(series_R, step, prec)
    d = step // 5
    poly = QSeries.monomial(coeffs[0], 0, prec, 5)
    rk = QSeries.one(prec, 5)
    for k, c in enumerate(coeffs[1:], start=1):
        rk = rk * r
        term = (rk * c).shift(d * k).truncate(prec)
        poly = poly - term if k == 3 else poly + term
    return w * poly


def series_F(j: int, prec: int) -> QSeries:
    return _wr_combo(F_COEFFS[j], 10, prec)


def t5_dissection_rhs(prec: int) -> QSeries:
    """W(q^5)(1 + q R + q^2 (zeta^2+zeta^3) R^2 - q^3 (zeta^2+zeta^3) R^3), R = R(q^5)."""
    return _wr_combo(F_COEFFS[0], 5, prec)


def tt_rhs(prec: int) -> QSeries:
    """W(q^5) W'(q^5) (1 + 2 q^5 R^5 + q R (2 - q^5 R^5)), R = R(q^5).

    W' is W with zeta -> zeta^2, so the prefactor is the rational series
    J_{2,5}^6 (J_{10,25}^2 - q J_{10,25} J_{5,25} - q^2 J_{5,25}^2) at q^5.
    """
    w = _at_power(series_W, 5, prec)
    r = _at_power(series_R, 5, prec)
    r5 = (r**5).shift(5).truncate(prec)
    poly = 1 + r5 * 2 + (r * (2 - r5)).shift(1).truncate(prec)
    return w * w.galois(2) * poly


# ---------------------------------------------------------------------------
# S_j and V


def _s_exponent(m: int, e: int = 0) -> int:
    return m * m + (4 + e) * m


def series_S(j: int, prec: int) -> ZLaurent:
    """S_j(z, q) = sum over m = j mod 5 of z^m q^(m^2 + 4m)."""
    mons = []
    for n in _theta_range(10 * j + 20, 25, prec - j * j - 4 * j):
        m = 5 * n + j
        mons.append((m, _s_exponent(m), 1))
    return zl_build(None, mons, prec)


def s_at(j: int, sign: int, a: int, e: int, prec: int) -> QSeries:
    """S_j(z, q) at z = sign * zeta^a * q^e."""
    terms: dict[int, CycInt] = {}
    for n in _theta_range(10 * j + 20 + 5 * e, 25, prec - j * j - (4 + e) * j):
        m = 5 * n + j
        c = CycInt.zeta(5, a * m) * (sign ** abs(m))
        x = _s_exponent(m, e)
        terms[x] = terms.get(x, CycInt.from_int(5, 0)) + c
    return QSeries.from_dict(terms, prec, 5)


def series_V(prec: int) -> ZLaurent:
    """V(z, q) = sum_j F_j(q) S_j(z, q)."""
    pad = 6
    total: Optional[ZLaurent] = None
    for j in range(5):
        term = series_S(j, prec + pad) * series_F(j, prec + pad)
        total = term if total is None else total + term
    assert total is not None and total.qprec >= prec
    return total.truncate(prec)


def v_at(sign: int, a: int, e: int, prec: int) -> QSeries:
    """V(z, q) at z = sign * zeta^a * q^e."""
    pad = 8 * e + 50
    total = QSeries.zero(prec, 5)
    for j in range(5):
        s = s_at(j, sign, a, e, prec + pad)
        f = series_F(j, prec + pad - min(s.val, 0))
        total = total + (s * f).truncate(prec)
    return total


# ---------------------------------------------------------------------------
# rank, crank and birank generating functions at roots of unity


def rank_at(c: CycInt, prec: int) -> QSeries:
    """f(c, q) = 1 + sum_n q^(n^2) / ((c q;q)_n (c^-1 q;q)_n)."""
    total = QSeries.one(prec, c.order)
    ci = c.unit_inverse()
    n = 1
    while n * n < prec:
        term = QSeries.monomial(1, n * n, prec, c.order)
        for k in range(1, n + 1):
            if n * n + k >= prec:
                break
            term = term.div_binomial(c, k).div_binomial(ci, k)
        total = total + term
        n += 1
    return total


def pair_inverse(c: CycInt, prec: int) -> QSeries:
    """1 / ((c q;q)_inf (c^-1 q;q)_inf)."""
    return pochhammer_inf(c, 1, 1, prec, inverse=True) * pochhammer_inf(
        c.unit_inverse(), 1, 1, prec, inverse=True
    )


def pair_product(c: CycInt, prec: int) -> QSeries:
    """(c q;q)_inf (c^-1 q;q)_inf."""
    return pochhammer_inf(c, 1, 1, prec) * pochhammer_inf(c.unit_inverse(), 1, 1, prec)


def crank_at(c: CycInt, prec: int) -> QSeries:
    """F(c, q) = (q;q)_inf / ((c q;q)_inf (c^-1 q;q)_inf)."""
    return pair_inverse(c, prec) * euler_E(prec)


def hl_product(t: int, ks: Sequence[int], prec: int) -> QSeries:
    """prod over k of 1 / ((zeta_t^k q;q)_inf (zeta_t^-k q;q)_inf)."""
    out = QSeries.one(prec, t)
    for k in ks:
        out = out * pair_inverse(CycInt.zeta(t, k), prec)
    return out


def _inv_E_at(k: int, prec: int) -> QSeries:
    return _at_power(lambda p: qs_inv(euler_E(p)), k, prec)


def _E_at(k: int, prec: int) -> QSeries:
    return _at_power(euler_E, k, prec)


def fc_birank_at_zeta(prec: int) -> QSeries:
    """T(zeta, q) T(zeta^2, q) / E^10(q^5)."""
    tt = t_at_zeta(1, prec) * t_at_zeta(2, prec)
    return tt * _inv_E_at(5, prec) ** 10


# bivariate generating functions ------------------------------------------------


def rank_genfunc(prec: int) -> ZLaurent:
    total = zl_build(None, [(0, 0, 1)], prec)
    n = 1
    while n * n < prec:
        term = zl_build(None, [(0, n * n, 1)], prec)
        for k in range(1, n + 1):
            term = term.div_binomial(1, 1, k).div_binomial(1, -1, k)
        total = total + term.truncate(prec)
        n += 1
    return total


def hl_genfunc(prec: int) -> ZLaurent:
    g = zl_build(None, [(0, 0, 1)], prec)
    for k in range(1, prec):
        g = g.div_binomial(1, 1, k).div_binomial(1, -1, k)
    return g


def crank_genfunc(prec: int) -> ZLaurent:
    """F(z, q), the crank generating function over extended partitions."""
    return hl_genfunc(prec) * euler_E(prec)


def five_core_crank_genfunc(prec: int) -> ZLaurent:
    return t_series(prec) * _inv_E_at(5, prec) ** 5


# ---------------------------------------------------------------------------
# named series registry


@dataclass(frozen=True)
class NamedSeries:
    name: str
    description: str
    build: Callable[[int], Series]
    ring: str
    bivariate: bool = False


def _ns(name, desc, fn, ring="integer", bivariate=False) -> NamedSeries:
    return NamedSeries(name, desc, fn, ring, bivariate)


_SERIES_LIST = [
    _ns("E", "Euler product prod (1 - q^n), pentagonal sum", euler_E),
    _ns("E-inverse", "1/E(q), the partition generating function", lambda p: qs_inv(euler_E(p))),
    _ns("A", "E^2(q^5) J_{2,5} / J_{1,5}^2", series_A),
    _ns("B", "E^2(q^5) / J_{1,5}", series_B),
    _ns("C", "E^2(q^5) / J_{2,5}", series_C),
    _ns("D", "E^2(q^5) J_{1,5} / J_{2,5}^2", series_D),
    _ns("phi", "q-hypergeometric form of phi", phi_hypergeometric),
    _ns("phi-lambert", "Lambert-type form of phi", phi_lambert),
    _ns("psi", "q-hypergeometric form of psi", psi_hypergeometric),
    _ns("psi-lambert", "Lambert-type form of psi", psi_lambert),
    _ns("W", "J_{2,5}^3 (J_{10,25} - q(1+z^2+z^3) J_{5,25})", series_W, "Z[zeta_5]"),
    _ns("R", "J_{1,5} / J_{2,5}", series_R),
    *[
        _ns(f"F{j}", f"F_{j}(q) built from W(q^10) and R(q^10)", (lambda j: lambda p: series_F(j, p))(j), "Z[zeta_5]")
        for j in range(5)
    ],
    *[
        _ns(f"S{j}", f"S_{j}(z,q): sum over m = {j} mod 5 of z^m q^(m^2+4m)", (lambda j: lambda p: series_S(j, p))(j), bivariate=True)
        for j in range(5)
    ],
    _ns("T", "T(z,q) over 5-cores, lattice sum", t_series, bivariate=True),
    _ns("T-enumerated", "T(z,q) by listing 5-cores", t_enumerated, bivariate=True),
    _ns("T-zeta", "T(zeta,q)", lambda p: t_at_zeta(1, p), "Z[zeta_5]"),
    _ns("T-zeta2", "T(zeta^2,q)", lambda p: t_at_zeta(2, p), "Z[zeta_5]"),
    _ns("t5-dissection-rhs", "W(q^5)(1 + qR + q^2(z^2+z^3)R^2 - q^3(z^2+z^3)R^3)", t5_dissection_rhs, "Z[zeta_5]"),
    _ns("U", "U(z,q), lattice sum over Z^5", u_lattice, "Z[zeta_5]", True),
    _ns("U-product", "U(z,q) as five theta functions in q^5", u_product, "Z[zeta_5]", True),
    _ns("V", "V(z,q) = sum F_j S_j", series_V, "Z[zeta_5]", True),
    _ns("f-zeta", "rank generating function f(zeta,q)", lambda p: rank_at(ZETA, p), "Z[zeta_5]"),
    _ns("F-zeta", "crank generating function F(zeta,q)", lambda p: crank_at(ZETA, p), "Z[zeta_5]"),
    _ns("hl-genfunc-at-zeta", "1/((zeta q)_inf (zeta^-1 q)_inf)", lambda p: pair_inverse(ZETA, p), "Z[zeta_5]"),
    _ns(
        "f-zeta-sq-product",
        "f(zeta,q) f(zeta^2,q), the Dyson-birank series",
        lambda p: rank_at(ZETA, p) * rank_at(ZETA**2, p),
        "Z[zeta_5]",
    ),
    _ns("F-zeta-squared", "F(zeta,q)^2, the bicrank-1 series", lambda p: crank_at(ZETA, p) ** 2, "Z[zeta_5]"),
    _ns(
        "F-zeta-F-zeta2",
        "F(zeta,q) F(zeta^2,q), the bicrank-2 series",
        lambda p: crank_at(ZETA, p) * crank_at(ZETA**2, p),
        "Z[zeta_5]",
    ),
    _ns("fc-birank-at-zeta", "T(zeta,q) T(zeta^2,q) / E^10(q^5)", fc_birank_at_zeta, "Z[zeta_5]"),
    _ns("rank-genfunc", "f(z,q), rank generating function", rank_genfunc, bivariate=True),
    _ns("crank-genfunc", "F(z,q), crank generating function", crank_genfunc, bivariate=True),
    _ns("hl-genfunc", "1/((zq)_inf (z^-1 q)_inf)", hl_genfunc, bivariate=True),
    _ns("five-core-crank-genfunc", "T(z,q) / E^5(q^5)", five_core_crank_genfunc, bivariate=True),
]

SERIES: dict[str, NamedSeries] = {s.name: s for s in _SERIES_LIST}


def build_series(name: str, prec: int) -> Series:
    """Build a registered series to O(q^prec)."""
    try:
        ns = SERIES[name]
    except KeyError:
        raise ValueError(f"unknown series {name!r}; choose from {sorted(SERIES)}") from None
    if prec < 1:
        raise ValueError("precision must be >= 1")
    return ns.build(prec)


def dissection_report(name: str, t: int, prec: int) -> list[QSeries]:
    """The t subseries sum a(t n + r) q^n, r = 0..t-1, of a univariate series."""
    if t < 1:
        raise ValueError("modulus must be >= 1")
    s = build_series(name, prec)
    if isinstance(s, ZLaurent):
        raise ValueError(f"{name} is bivariate; dissection needs a univariate series")
    return [dissect(s, r, t) for r in range(t)]


# ---------------------------------------------------------------------------
# identity checks


@dataclass
class SubCheck:
    label: str
    precision: int
    mismatch: Optional[Mismatch] = None

    @property
    def passed(self) -> bool:
        return self.mismatch is None

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "precision": self.precision,
            "pass": self.passed,
            "first_mismatch": None if self.mismatch is None else self.mismatch.as_dict(),
        }


@dataclass
class IdentityCheck:
    name: str
    left: str
    right: str
    precision: int
    checks: list[SubCheck] = field(default_factory=list)
    best_effort: bool = False

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def result(self) -> str:
        return "pass" if self.passed else "fail"

    @property
    def first_mismatch(self) -> Optional[Mismatch]:
        for c in self.checks:
            if c.mismatch is not None:
                return c.mismatch
        return None

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "left": self.left,
            "right": self.right,
            "precision": self.precision,
            "result": self.result,
            "best_effort": self.best_effort,
            "verified_to": f"O(q^{self.precision})" if self.passed else None,
            "checks": [c.as_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

    def tsv_rows(self) -> list[str]:
        rows = []
        for c in self.checks:
            m = c.mismatch
            detail = "" if m is None else f"q^{m.exponent}: {m.lhs} != {m.rhs}"
            rows.append(f"{self.name}\t{c.label}\t{c.precision}\t{'pass' if c.passed else 'fail'}\t{detail}")
        return rows


class _Collector:
    def __init__(self) -> None:
        self.checks: list[SubCheck] = []

    def same(self, label: str, lhs: Series, rhs: Series) -> None:
        if isinstance(lhs, ZLaurent) != isinstance(rhs, ZLaurent):
            raise TypeError("cannot compare a univariate series with a bivariate one")
        if isinstance(lhs, ZLaurent):
            prec = min(lhs.qprec, rhs.qprec)
        else:
            prec = min(lhs.prec, rhs.prec)
        self.checks.append(SubCheck(label, prec, lhs.compare(rhs, label)))

    def zero(self, label: str, s: QSeries) -> None:
        self.same(label, s, QSeries.zero(s.prec, s.ring))

    def flag(self, label: str, ok: bool, prec: int, detail: Optional[Mismatch] = None) -> None:
        self.checks.append(SubCheck(label, prec, None if ok else detail or Mismatch(prec, 0, 0, label)))


def _enum_series(family: str, stat: str, t: int, nmax: int, r: Optional[int] = None) -> QSeries:
    """sum_n (sum_m counts[m] zeta_t^m) q^n from exact class tables, n <= nmax."""
    fam = family_for(family, r)
    terms = {n: class_count(fam, stat, n, t).cyclotomic_sum() for n in range(nmax + 1)}
    return QSeries.from_dict(terms, nmax + 1, t)


_ENUM_MAX = 15


def _check_rank_dissection(prec: int, c: _Collector) -> None:
    lhs = rank_at(ZETA, prec)
    a, b, cc, d = (_at_power(f, 5, prec) for f in (series_A, series_B, series_C, series_D))
    phi5 = _at_power(phi_hypergeometric, 5, prec)
    psi5 = _at_power(psi_hypergeometric, 5, prec)
    rhs = (
        a
        - phi5 * _z(5, 0, 0, 0, 2, 3)
        + b.shift(1)
        + (cc * _z(5, 1, 4)).shift(2)
        + (d * _z(5, 0, 2, 3) + psi5 * _z(5, 0, 2, 2, 3, 3)).shift(3)
    ).truncate(prec)
    c.same("f(zeta,q) = A - (3+z^2+z^3)phi + qB + q^2(z+z^4)C + q^3(...)", lhs, rhs)


def _check_abcd1(prec: int, c: _Collector) -> None:
    a, b, cc, d = series_A(prec), series_B(prec), series_C(prec), series_D(prec)
    c.same("B^2 = A C", b * b, a * cc)
    c.same("C^2 = B D", cc * cc, b * d)


def _check_abcd2(prec: int, c: _Collector) -> None:
    c.same("A D = B C", series_A(prec) * series_D(prec), series_B(prec) * series_C(prec))


def _vanish(c: _Collector, label: str, s: QSeries, residues: Sequence[int], t: int = 5) -> None:
    for r in residues:
        c.zero(f"{label}: U_{{{r},{t}}} = 0", dissect(s, r, t))


def _vanish_enum(
    c: _Collector, family: str, stat: str, residues: Sequence[int], t: int = 5, r: Optional[int] = None
) -> None:
    nmax = _ENUM_MAX
    for n in range(nmax + 1):
        if n % t in residues:
            tab = class_count(family_for(family, r), stat, n, t)
            c.flag(
                f"{stat} classes equal at n={n}",
                not tab.cyclotomic_sum(),
                n + 1,
                Mismatch(n, tab.cyclotomic_sum(), 0, f"{stat} n={n}"),
            )


def _check_dyson_vanish(prec: int, c: _Collector) -> None:
    s = rank_at(ZETA, prec) * rank_at(ZETA**2, prec)
    _vanish(c, "f(zeta)f(zeta^2)", s, (2, 4))
    c.same("f(zeta)f(zeta^2) vs Dyson-birank class tables", s.truncate(_ENUM_MAX + 1), _enum_series("bipartition", "dyson-birank", 5, _ENUM_MAX))
    _vanish_enum(c, "bipartition", "dyson-birank", (2, 4))


def _check_phi_psi(prec: int, c: _Collector) -> None:
    s = rank_at(ZETA, prec) * rank_at(ZETA**2, prec)
    lhs = dissect(s, 3, 5)
    p = lhs.prec
    rhs = phi_hypergeometric(p) * psi_hypergeometric(p) * 5
    c.same("U_{3,5}(f(zeta)f(zeta^2)) = 5 phi psi", lhs, rhs)
    c.same("phi: hypergeometric = Lambert", phi_hypergeometric(prec), phi_lambert(prec))
    c.same("psi: hypergeometric = Lambert", psi_hypergeometric(prec), psi_lambert(prec))


def _check_hl_dissection(prec: int, c: _Collector) -> None:
    lhs = pair_inverse(ZETA, prec)
    mid = pair_product(ZETA**2, prec) * euler_E(prec) * _inv_E_at(5, prec)
    inv15 = _at_power(lambda p: qs_inv(_J(1, 5, p)), 5, prec)
    inv25 = _at_power(lambda p: qs_inv(_J(2, 5, p)), 5, prec)
    rhs = _E_at(25, prec) * (inv15 + (inv25 * _z(5, 1, 4)).shift(1).truncate(prec))
    c.same("1/((zq)(z^-1 q)) = (z^2q)(z^-2q)(q)/(q^5;q^5)", lhs, mid)
    c.same("... = (q^25;q^25)(1/J_{1,5}(q^5) + (z+z^-1) q/J_{2,5}(q^5))", lhs, rhs)
    _vanish(c, "HL at zeta", lhs, (2, 3, 4))
    c.same("HL series vs class tables", lhs.truncate(_ENUM_MAX + 1), _enum_series("bipartition", "hl-birank", 5, _ENUM_MAX))
    _vanish_enum(c, "bipartition", "hl-birank", (2, 3, 4))


def _check_t5_dissect(prec: int, c: _Collector) -> None:
    # the W/R right-hand side is the dissection of T at zeta^2
    c.same("T(zeta^2,q) = W(q^5)(1 + qR + ...)", t_at_zeta(2, prec), t5_dissection_rhs(prec))
    n = min(prec, 21)
    c.same("T(z,q): lattice = 5-core enumeration", t_series(n), t_enumerated(n))


def _check_tt(prec: int, c: _Collector) -> None:
    lhs = t_at_zeta(1, prec) * t_at_zeta(2, prec)
    c.same("T(zeta)T(zeta^2) = W W'(q^5)(1 + 2q^5R^5 + qR(2 - q^5R^5))", lhs, tt_rhs(prec))


def _check_fc_vanish(prec: int, c: _Collector) -> None:
    s = fc_birank_at_zeta(prec)
    _vanish(c, "T(zeta)T(zeta^2)/E^10(q^5)", s, (2, 3, 4))
    n = min(prec, _ENUM_MAX + 1)
    c.same("5-core-birank series vs class tables", s.truncate(n), _enum_series("bipartition", "five-core-birank", 5, n - 1))
    _vanish_enum(c, "bipartition", "five-core-birank", (2, 3, 4))


def _check_u_id(prec: int, c: _Collector) -> None:
    c.same("U(z,q) = sum F_j(q) S_j(z,q)", u_lattice(prec), series_V(prec))
    u2 = u_lattice(2 * prec)
    z0 = u2.coeff_z(0)
    halved = QSeries.from_dict({e // 2: x for e, x in z0.terms() if e % 2 == 0}, prec, 5)
    odd = [e for e, _ in z0.terms() if e % 2]
    c.flag("z^0 coefficient of U has only even q-powers", not odd, 2 * prec)
    c.same("z^0 coefficient of U(z,q), q^2 -> q, equals T(zeta^2,q)", halved, t_at_zeta(2, prec))


def _check_u_functional(prec: int, c: _Collector) -> None:
    for label, s in (("U", u_lattice(prec + 45)), ("V", series_V(prec + 45))):
        lhs = s.shift_z(10)
        rhs = s.mul_monomial(1, -5, -45)
        c.same(f"{label}(z q^10, q) = z^-5 q^-45 {label}(z,q)", lhs, rhs)


def _check_u_prod(prec: int, c: _Collector) -> None:
    c.same("U lattice = five-fold theta product", u_lattice(prec), u_product(prec))


# (j, z0 = (sign, zeta-exp, q-exp)) -> None for 0, else (coefficient zeta-exponent, sign, q-exp, J index)
_Z0 = {
    "-zeta q^5": (-1, 1, 5),
    "-q^3 zeta^4": (-1, 4, 3),
    "-q": (-1, 0, 1),
    "-zeta^4 q^9": (-1, 4, 9),
    "-zeta q^7": (-1, 1, 7),
}

S_VALUES: dict[tuple[str, int], Optional[tuple[int, int, int, int]]] = {
    ("-zeta q^5", 0): (0, -1, -20, 2),
    ("-zeta q^5", 1): (1, 1, -20, 2),
    ("-zeta q^5", 2): (2, -1, -18, 1),
    ("-zeta q^5", 3): None,
    ("-zeta q^5", 4): (4, 1, -18, 1),
    ("-q^3 zeta^4", 0): (0, -1, -10, 1),
    ("-q^3 zeta^4", 1): (4, 1, -12, 2),
    ("-q^3 zeta^4", 2): (3, -1, -12, 2),
    ("-q^3 zeta^4", 3): (2, 1, -10, 1),
    ("-q^3 zeta^4", 4): None,
    ("-q", 0): None,
    ("-q", 1): (0, 1, -4, 1),
    ("-q", 2): (0, -1, -6, 2),
    ("-q", 3): (0, 1, -6, 2),
    ("-q", 4): (0, -1, -4, 1),
    ("-zeta^4 q^9", 0): (0, -1, -40, 1),
    ("-zeta^4 q^9", 1): None,
    ("-zeta^4 q^9", 2): (3, 1, -40, 1),
    ("-zeta^4 q^9", 3): (2, -1, -42, 2),
    ("-zeta^4 q^9", 4): (1, 1, -42, 2),
    ("-zeta q^7", 0): (0, -1, -30, 2),
    ("-zeta q^7", 1): (1, 1, -28, 1),
    ("-zeta q^7", 2): None,
    ("-zeta q^7", 3): (3, -1, -28, 1),
    ("-zeta q^7", 4): (4, 1, -30, 2),
}


def _check_s_values(prec: int, c: _Collector) -> None:
    for (zname, j), val in S_VALUES.items():
        sign, a, e = _Z0[zname]
        lhs = s_at(j, sign, a, e, prec)
        if val is None:
            rhs = QSeries.zero(prec, 5)
        else:
            ze, sg, qe, which = val
            j10 = _at_power(lambda p: _J(which, 5, p), 10, prec - qe)
            rhs = (j10 * (CycInt.zeta(5, ze) * sg)).shift(qe)
        c.same(f"S_{j}({zname}, q)", lhs, rhs)


def _check_v_zeros(prec: int, c: _Collector) -> None:
    for zname, (sign, a, e) in _Z0.items():
        c.zero(f"V({zname}, q) = 0", v_at(sign, a, e, prec))
        c.zero(f"U({zname}, q) = 0", u_lattice_at(sign, a, e, prec))


def _jq(a: int, m: int, k: int, prec: int) -> QSeries:
    return _at_power(lambda p: _J(a, m, p), k, prec)


def _check_theta_evals(prec: int, c: _Collector) -> None:
    z = lambda *e: _z(5, *e)  # noqa: E731
    zz = lambda k: CycInt.zeta(5, k)  # noqa: E731
    p = prec
    # one J index per 5-dissection below differs from the commonly printed
    # form; these are the ones the triple product actually gives

    def combo(parts):
        out = QSeries.zero(p, 5)
        for coef, qe, (a, m, k) in parts:
            if qe < p:
                out = out + (_jq(a, m, k, p - qe) * coef).shift(qe)
        return out

    c.same(
        "Theta(-zeta^4, q^5)",
        theta_sum(-zz(4), 0, 5, p),
        combo([(ONE5, 0, (1, 2, 125)), (z(0, 2, 3), 5, (3, 10, 25)), (z(2, 3), 20, (1, 10, 25))]),
    )
    c.same(
        "Theta(-zeta q^2, q^5)",
        theta_sum(-zz(1), 2, 5, p),
        combo(
            [
                (ONE5, 0, (27, 50, 5)),
                (zz(3), 16, (7, 50, 5)),
                (-zz(1), 7, (13, 50, 5)),
                (-zz(4), 3, (17, 50, 5)),
                (zz(2), 24, (3, 50, 5)),
            ]
        ),
    )
    c.same(
        "Theta(-q^4, q^5)",
        theta_sum(-ONE5, 4, 5, p),
        combo(
            [
                (ONE5, 0, (21, 50, 5)),
                (-ONE5, 1, (19, 50, 5)),
                (ONE5, 12, (9, 50, 5)),
                (ONE5, 28, (1, 50, 5)),
                (-ONE5, 9, (11, 50, 5)),
            ]
        ),
    )
    c.same(
        "q Theta(-zeta q^6, q^5)",
        theta_sum(-zz(1), 6, 5, p + 1).shift(1).truncate(p),
        combo(
            [
                (-zz(4), 0, (21, 50, 5)),
                (ONE5, 1, (19, 50, 5)),
                (-zz(1), 12, (9, 50, 5)),
                (-zz(2), 28, (1, 50, 5)),
                (zz(3), 9, (11, 50, 5)),
            ]
        ),
    )
    c.same(
        "q^3 Theta(-zeta^4 q^8, q^5)",
        theta_sum(-zz(4), 8, 5, p + 3).shift(3).truncate(p),
        combo(
            [
                (-zz(1), 0, (23, 50, 5)),
                (-zz(4), 16, (7, 50, 5)),
                (zz(2), 7, (13, 50, 5)),
                (ONE5, 3, (17, 50, 5)),
                (-zz(3), 24, (3, 50, 5)),
            ]
        ),
    )
    s = [s_at(j, -1, 0, 0, p) for j in range(5)]
    j1_10 = _jq(1, 10, 5, p)
    j3_10 = _jq(3, 10, 5, p + 3)
    c.same("S_0(-1,q) = J_{1,10}(q^5)", s[0], j1_10)
    c.same("S_1(-1,q) = J_{1,10}(q^5)", s[1], j1_10)
    c.same("S_2(-1,q) = -q^-3 J_{3,10}(q^5)", s[2], -j3_10.shift(-3))
    c.same("S_4(-1,q) = -q^-3 J_{3,10}(q^5)", s[4], -j3_10.shift(-3))
    c.same("S_3(-1,q) = q^-4 J_{1,2}(q^25)", s[3], _jq(1, 2, 25, p + 4).shift(-4))


def _check_crank_dissection(prec: int, c: _Collector) -> None:
    lhs = crank_at(ZETA, prec)
    a, b, cc, d = (_at_power(f, 5, prec) for f in (series_A, series_B, series_C, series_D))
    zz4 = _z(5, 1, 4)
    rhs = (a - (b * (zz4 * zz4)).shift(1) + (cc * _z(5, 2, 3)).shift(2) - (d * zz4).shift(3)).truncate(prec)
    c.same("F(zeta,q) = A - q(z+z^4)^2 B + q^2(z^2+z^3)C - q^3(z+z^4)D", lhs, rhs)
    c.same(
        "F(zeta,q) vs crank class tables",
        lhs.truncate(_ENUM_MAX + 1),
        _enum_series("extended-partition", "crank", 5, _ENUM_MAX),
    )


def _check_bicrank1(prec: int, c: _Collector) -> None:
    s = crank_at(ZETA, prec) ** 2
    _vanish(c, "F(zeta)^2", s, (3,))
    c.same("F(zeta)^2 vs bicrank-1 class tables", s.truncate(_ENUM_MAX + 1), _enum_series("extended-bipartition", "bicrank-1", 5, _ENUM_MAX))
    _vanish_enum(c, "extended-bipartition", "bicrank-1", (3,))


def _check_bicrank2(prec: int, c: _Collector) -> None:
    s = crank_at(ZETA, prec) * crank_at(ZETA**2, prec)
    _vanish(c, "F(zeta)F(zeta^2)", s, (2, 4))
    c.same("F(zeta)F(zeta^2) vs bicrank-2 class tables", s.truncate(_ENUM_MAX + 1), _enum_series("extended-bipartition", "bicrank-2", 5, _ENUM_MAX))
    _vanish_enum(c, "extended-bipartition", "bicrank-2", (2, 4))


GHL_MODULI = (5, 7, 11, 13)
_SMALL_ENUM = {5: 12, 7: 10, 11: 8, 13: 6}


def _quotient(t: int, prec: int) -> QSeries:
    """(q;q)_inf / (q^t;q^t)_inf."""
    return euler_E(prec) * _inv_E_at(t, prec)


def _check_ghl_product(prec: int, c: _Collector) -> None:
    for t in GHL_MODULI:
        h = (t - 1) // 2
        g = hl_product(t, range(1, h + 1), prec)
        c.same(f"t={t}: prod 1/((z^k q)(z^-k q)) = (q)/(q^t;q^t)", g, _quotient(t, prec).to_ring(t))
        n = _SMALL_ENUM[t]
        c.same(
            f"t={t}: vs gHL-multirank class tables",
            g.truncate(n + 1),
            _enum_series("multipartition", "ghl-multirank", t, n, r=t - 1),
        )


def _check_ghl_pentagonal(prec: int, c: _Collector) -> None:
    big = 24 * prec
    for t in GHL_MODULI:
        h = (t - 1) // 2
        g = hl_product(t, range(1, h + 1), prec)
        lhs = substitute_qpower(g, 24).shift(1).truncate(big)
        terms: dict[int, int] = {}
        for n in _theta_range(12, 36, big - 1):
            terms[(6 * n + 1) ** 2] = (-1) ** n
        rhs = QSeries.from_dict(terms, big) * _inv_E_at(24 * t, big)
        c.same(f"t={t}: sum zeta^gHL q^(24|pi|+1) = sum (-1)^n q^((6n+1)^2) / E(q^(24t))", lhs, rhs.to_ring(t))


def _check_ghl_jtp(prec: int, c: _Collector) -> None:
    for t in (5, 7, 11):
        h = (t - 1) // 2
        zh = CycInt.zeta(t, h)
        one = CycInt.from_int(t, 1)
        g3 = hl_product(t, range(1, (t - 3) // 2 + 1), prec)
        mid = pair_product(zh, prec) * euler_E(prec) * _inv_E_at(t, prec)
        c.same(f"t={t}: gHL on P^(t-3) = (z^h q)(z^-h q)(q)/(q^t;q^t)", g3, mid)
        # 1 - zeta^h is not a unit, so compare both sides multiplied through by it
        lhs = g3 * _E_at(t, prec) * (one - zh)
        terms: dict[int, CycInt] = {}
        for m in range(prec + 2):  # the summand is symmetric under m -> -1-m
            e = m * (m + 1) // 2
            if e < prec:
                v = (CycInt.zeta(t, (m + 1) * h) - CycInt.zeta(t, -m * h)) * (1 if m % 2 else -1)
                terms[e] = terms.get(e, CycInt.from_int(t, 0)) + v
        c.same(f"t={t}: (1-z^h)(q^t;q^t) G = sum_(m>=0) (-1)^(m+1)(z^((m+1)h) - z^(-mh)) q^(m(m+1)/2)", lhs, QSeries.from_dict(terms, prec, t))
        big = 8 * prec
        lhs8 = substitute_qpower(g3, 8).shift(1).truncate(big) * _E_at(8 * t, big) * (one - zh)
        terms = {}
        for m in range(prec + 2):
            e = (2 * m + 1) ** 2
            if e < big:
                v = CycInt.zeta(t, -m * h) * (CycInt.zeta(t, (2 * m + 1) * h) - 1) * (1 if m % 2 else -1)
                terms[e] = terms.get(e, CycInt.from_int(t, 0)) + v
        c.same(f"t={t}: q^(8|pi|+1) form times (1-z^h) E(q^(8t))", lhs8, QSeries.from_dict(terms, big, t))


def _mc1_series(t: int, count: int, prec: int) -> QSeries:
    out = QSeries.one(prec, t)
    for k in range(1, count + 1):
        out = out * crank_at(CycInt.zeta(t, k), prec)
    return out * qs_inv(euler_E(prec)) ** count


def _check_mc1(prec: int, c: _Collector) -> None:
    for t in GHL_MODULI:
        h = (t - 1) // 2
        lhs = _mc1_series(t, h, prec)
        c.same(f"t={t}: prod F(z^k)/E^h = prod 1/((z^k q)(z^-k q))", lhs, hl_product(t, range(1, h + 1), prec))
        c.same(f"t={t}: ... = (q)/(q^t;q^t)", lhs, _quotient(t, prec).to_ring(t))
        lhs3 = _mc1_series(t, h - 1, prec)
        c.same(f"t={t}: (t-3)/2 version", lhs3, hl_product(t, range(1, h), prec))
        n = _SMALL_ENUM[t]
        c.same(
            f"t={t}: vs multicrank-I class tables",
            lhs.truncate(n + 1),
            _enum_series("extended-multipartition-I", "multicrank-I", t, n, r=t - 1),
        )


def _check_mc2(prec: int, c: _Collector) -> None:
    for t in GHL_MODULI:
        h = (t - 1) // 2
        lhs = crank_at(CycInt.zeta(t, 1), prec) * crank_at(CycInt.zeta(t, 2), prec) * hl_product(t, range(3, h + 1), prec)
        e = euler_E(prec)
        c.same(f"t={t}: F(z)F(z^2) prod_(k>=3) = (q)^3/(q^t;q^t)", lhs, (e**3 * _inv_E_at(t, prec)).to_ring(t))
        big = 8 * prec
        lhs8 = substitute_qpower(lhs, 8).shift(1).truncate(big)
        terms = {}
        n = 0
        while (2 * n + 1) ** 2 < big:
            terms[(2 * n + 1) ** 2] = (-1) ** n * (2 * n + 1)
            n += 1
        rhs8 = QSeries.from_dict(terms, big) * _inv_E_at(8 * t, big)
        c.same(f"t={t}: q^(8|pi|+1) form = sum (-1)^n (2n+1) q^((2n+1)^2) / E(q^(8t))", lhs8, rhs8.to_ring(t))
        n = _SMALL_ENUM[t]
        c.same(
            f"t={t}: vs multicrank-II class tables",
            lhs.truncate(n + 1),
            _enum_series("extended-multipartition-II", "multicrank-II", t, n, r=t - 3),
        )


def _check_bridge(prec: int, c: _Collector) -> None:
    for t in GHL_MODULI:
        h = (t - 1) // 2
        c.same(f"t={t}: gHL on P^(t-1) = multicrank-I on E^h x P^h", hl_product(t, range(1, h + 1), prec), _mc1_series(t, h, prec))
        c.same(f"t={t}: gHL on P^(t-3) = multicrank-I on E^(h-1) x P^(h-1)", hl_product(t, range(1, h), prec), _mc1_series(t, h - 1, prec))
    for t in (5, 7, 11):
        n = _SMALL_ENUM[t]
        for r in (t - 1, t - 3):
            a = _enum_series("multipartition", "ghl-multirank", t, n, r=r)
            b = _enum_series("extended-multipartition-I", "multicrank-I", t, n, r=r)
            c.same(f"t={t}, r={r}: class-table sums agree for n <= {n}", a, b)


@dataclass(frozen=True)
class _Identity:
    name: str
    left: str
    right: str
    default_prec: int
    run: Callable[[int, _Collector], None]
    best_effort: bool = False


_IDENTITY_LIST = [
    _Identity("rank-dissection", "f(zeta,q)", "A/B/C/D/phi/psi combination", 100, _check_rank_dissection),
    _Identity("abcd-1", "B^2, C^2", "A C, B D", 100, _check_abcd1),
    _Identity("abcd-2", "A D", "B C", 100, _check_abcd2),
    _Identity("dyson-birank-vanish", "U_{r,5} f(zeta)f(zeta^2), r=2,4", "0", 100, _check_dyson_vanish),
    _Identity("phi-psi", "U_{3,5} f(zeta)f(zeta^2)", "5 phi psi", 100, _check_phi_psi),
    _Identity("hl-dissection", "1/((zeta q)(zeta^-1 q))", "J-product forms", 100, _check_hl_dissection),
    _Identity("t5-dissect", "T(zeta^2,q) lattice", "W(q^5)(1 + qR + ...)", 40, _check_t5_dissect),
    _Identity("tt-id", "T(zeta)T(zeta^2)", "W W'(q^5)(...)", 40, _check_tt),
    _Identity("fc-birank-vanish", "U_{r,5} T(zeta)T(zeta^2)/E^10(q^5), r=2,3,4", "0", 40, _check_fc_vanish),
    _Identity("u-id", "U(z,q)", "sum F_j S_j", 30, _check_u_id),
    _Identity("u-functional", "U(zq^10,q), V(zq^10,q)", "z^-5 q^-45 U, V", 30, _check_u_functional),
    _Identity("u-prod", "U lattice", "five theta product", 30, _check_u_prod),
    _Identity("s-special-values", "S_j(z0,q)", "J_{a,5}(q^10) monomials", 30, _check_s_values),
    _Identity("v-zeros", "V(z0,q), U(z0,q)", "0", 30, _check_v_zeros),
    _Identity("theta-evals", "Theta and S_j at z=-1", "J-product 5-dissections", 30, _check_theta_evals, True),
    _Identity("crank-dissection", "F(zeta,q)", "A/B/C/D combination", 100, _check_crank_dissection),
    _Identity("bicrank1-vanish", "U_{3,5} F(zeta)^2", "0", 100, _check_bicrank1),
    _Identity("bicrank2-vanish", "U_{r,5} F(zeta)F(zeta^2), r=2,4", "0", 100, _check_bicrank2),
    _Identity("ghl-product", "prod 1/((z^k q)(z^-k q))", "(q)/(q^t;q^t)", 100, _check_ghl_product),
    _Identity("ghl-pentagonal", "q G(q^24)", "sum (-1)^n q^((6n+1)^2)/E(q^(24t))", 100, _check_ghl_pentagonal),
    _Identity("ghl-jtp", "gHL on P^(t-3)", "triple-product forms", 100, _check_ghl_jtp),
    _Identity("mc1-product", "prod F(z^k)/E^h", "(q)/(q^t;q^t)", 100, _check_mc1),
    _Identity("mc2-jacobi", "F(z)F(z^2) prod", "(q)^3/(q^t;q^t)", 100, _check_mc2),
    _Identity("ghl-mc-bridge", "gHL multirank series", "multicrank-I series", 100, _check_bridge),
]

IDENTITIES: dict[str, _Identity] = {i.name: i for i in _IDENTITY_LIST}
DEFAULT_PRECISION: dict[str, int] = {i.name: i.default_prec for i in _IDENTITY_LIST}


def verify_identity(name: str, prec: Optional[int] = None) -> IdentityCheck:
    """Expand both sides of a registered identity and compare to O(q^prec)."""
    try:
        ident = IDENTITIES[name]
    except KeyError:
        raise ValueError(f"unknown identity {name!r}; choose from {sorted(IDENTITIES)}") from None
    p = ident.default_prec if prec is None else prec
    if p < 1:
        raise ValueError("precision must be >= 1")
    col = _Collector()
    ident.run(p, col)
    return IdentityCheck(ident.name, ident.left, ident.right, p, col.checks, ident.best_effort)


def verify_all(
    names: Optional[Sequence[str]] = None,
    prec: Optional[int] = None,
    threads: int = 1,
) -> list[IdentityCheck]:
    """Run several identity checks; results come back in the order requested."""
    todo = list(names) if names is not None else [i.name for i in _IDENTITY_LIST]
    for n in todo:
        if n not in IDENTITIES:
            raise ValueError(f"unknown identity {n!r}")
    if threads <= 1:
        return [verify_identity(n, prec) for n in todo]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda n: verify_identity(n, prec), todo))
