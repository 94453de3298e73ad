"""Truncated Laurent series in q over Z or Z[zeta_t].

A :class:`QSeries` is known modulo ``q^prec``; it stores a dense coefficient
list starting at its valuation.  Precision is propagated pessimistically by
every operation, and comparisons only look at the overlap of two precisions.

:class:`ZLaurent` layers finite Laurent polynomials in a second variable ``z``
on top, with one QSeries per z-power.  The precision of the ``z^k``
coefficient is the affine function ``qprec + slope*k``; the slope becomes
nonzero only after a substitution ``z -> z q^s``.
"""

from __future__ import annotations

import json
import math
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

from .exactnum import CycInt, _check_order, _reduce

__all__ = [
    "QSeries",
    "ZLaurent",
    "Mismatch",
    "qs_mul",
    "qs_inv",
    "euler_E",
    "euler_E_product",
    "pochhammer",
    "pochhammer_inf",
    "jacobi_J",
    "theta_sum",
    "dissect",
    "substitute_qpower",
    "zl_build",
    "zl_theta",
    "zl_mul",
    "zl_coeff_z",
    "zl_shift_z",
]

Ring = Optional[int]
Scalar = Union[int, CycInt]

# Products with both factors at least this long go through Kronecker packing.
_KRONECKER_MIN = 12


def _zero(ring: Ring) -> Scalar:
    return 0 if ring is None else CycInt.from_int(ring, 0)


def _elem(ring: Ring, x: Scalar) -> Scalar:
    if ring is None:
        if isinstance(x, CycInt):
            return x.to_int()
        return int(x)
    if isinstance(x, CycInt):
        if x.order != ring:
            raise ValueError(f"coefficient lives in Z[zeta_{x.order}], series in Z[zeta_{ring}]")
        return x
    return CycInt.from_int(ring, int(x))


def _join_rings(a: Ring, b: Ring) -> Ring:
    if a is None:
        return b
    if b is None or a == b:
        return a
    raise ValueError(f"ring mismatch: Z[zeta_{a}] vs Z[zeta_{b}]")


def _ring_of(x: Scalar) -> Ring:
    return x.order if isinstance(x, CycInt) else None


def _unit_power(c: Scalar, n: int, ring: Ring) -> Scalar:
    """c**n for a signed root of unity c (n may be negative)."""
    if isinstance(c, CycInt):
        return c ** n
    if n >= 0:
        return _elem(ring, c ** n)
    if c not in (1, -1):
        raise ValueError(f"{c} is not invertible")
    return _elem(ring, c ** (-n))


# ---------------------------------------------------------------------------
# raw coefficient-list kernels


def _conv_naive(a: Sequence[Scalar], b: Sequence[Scalar], n: int, ring: Ring) -> list[Scalar]:
    out = [_zero(ring)] * n
    for i, x in enumerate(a[:n]):
        if not x:
            continue
        lim = min(len(b), n - i)
        for j in range(lim):
            y = b[j]
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def _pack(values: Iterable[int], bits: int) -> int:
    acc = 0
    for v in values:
        acc = (acc << bits) + v
    return acc


def _unpack(big: int, bits: int, count: int) -> list[int]:
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    full = 1 << bits
    out = []
    for _ in range(count):
        low = big & mask
        if low >= half:
            low -= full
        out.append(low)
        big = (big - low) >> bits
    return out


def _conv_kronecker_int(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    a = a[:n]
    b = b[:n]
    ma = max((abs(x) for x in a), default=0)
    mb = max((abs(x) for x in b), default=0)
    if ma == 0 or mb == 0:
        return [0] * n
    bits = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 2
    prod = _pack(reversed(a), bits) * _pack(reversed(b), bits)
    return _unpack(prod, bits, n)


def _conv_kronecker_cyc(a: Sequence[CycInt], b: Sequence[CycInt], n: int, t: int) -> list[CycInt]:
    # slot (i, j) holds the zeta^j part of q^i; products occupy j < 2t-3
    a = a[:n]
    b = b[:n]
    width = 2 * t - 3
    pad = (0,) * (width - (t - 1))
    ma = max((abs(v) for x in a for v in x.coeffs), default=0)
    mb = max((abs(v) for x in b for v in x.coeffs), default=0)
    if ma == 0 or mb == 0:
        return [CycInt.from_int(t, 0)] * n
    bits = (
        ma.bit_length() + mb.bit_length() + ((t - 1) * min(len(a), len(b))).bit_length() + 2
    )

    def flat(seq: Sequence[CycInt]) -> Iterator[int]:
        for x in reversed(seq):
            yield from reversed(pad)
            yield from reversed(x.coeffs)

    prod = _pack(flat(a), bits) * _pack(flat(b), bits)
    slots = _unpack(prod, bits, n * width)
    out = []
    for i in range(n):
        row = slots[i * width:(i + 1) * width]
        full = row[:t]
        for j in range(t, width):
            full[j - t] += row[j]
        out.append(CycInt._raw(t, _reduce(full, t)))
    return out


def _conv(a: Sequence[Scalar], b: Sequence[Scalar], n: int, ring: Ring) -> list[Scalar]:
    """First n coefficients of the product of two coefficient lists."""
    if n <= 0:
        return []
    if min(len(a), len(b)) < _KRONECKER_MIN:
        return _conv_naive(a, b, n, ring)
    if ring is None:
        return _conv_kronecker_int(a, b, n)
    return _conv_kronecker_cyc(a, b, n, ring)


# ---------------------------------------------------------------------------


class Mismatch:
    """First disagreeing coefficient found by :meth:`QSeries.compare`."""

    __slots__ = ("exponent", "lhs", "rhs", "label")

    def __init__(self, exponent: int, lhs: Scalar, rhs: Scalar, label: str = "") -> None:
        self.exponent = exponent
        self.lhs = lhs
        self.rhs = rhs
        self.label = label

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "exponent": self.exponent,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
        }

    def __repr__(self) -> str:
        where = f"{self.label}: " if self.label else ""
        return f"Mismatch({where}q^{self.exponent}: {self.lhs} != {self.rhs})"


class QSeries:
    """Truncated Laurent series ``sum_{n >= val} c_n q^n + O(q^prec)``."""

    __slots__ = ("ring", "val", "coeffs", "prec")

    def __init__(
        self,
        coeffs: Sequence[Scalar] = (),
        val: int = 0,
        prec: Optional[int] = None,
        ring: Ring = None,
    ) -> None:
        coeffs = list(coeffs)
        if ring is None:
            for c in coeffs:
                if isinstance(c, CycInt):
                    ring = c.order
                    break
        if ring is not None:
            _check_order(ring)
        if prec is None:
            prec = val + len(coeffs)
        coeffs = [_elem(ring, c) for c in coeffs[: max(prec - val, 0)]]
        # strip leading zeros so that coeffs[0] is the valuation coefficient
        k = 0
        while k < len(coeffs) and not coeffs[k]:
            k += 1
        if k == len(coeffs):
            val, coeffs = prec, []
        else:
            val, coeffs = val + k, coeffs[k:]
        coeffs += [_zero(ring)] * (prec - val - len(coeffs))
        self.ring = ring
        self.val = val
        self.coeffs = coeffs
        self.prec = prec

    @classmethod
    def _from_dense(cls, coeffs: list[Scalar], val: int, prec: int, ring: Ring) -> QSeries:
        # trusted constructor: coeffs already in ring and of length prec - val
        k = 0
        n = len(coeffs)
        while k < n and not coeffs[k]:
            k += 1
        obj = object.__new__(cls)
        obj.ring = ring
        if k == n:
            obj.val, obj.coeffs = prec, []
        else:
            obj.val, obj.coeffs = val + k, coeffs[k:] if k else coeffs
        obj.prec = prec
        return obj

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, prec: int, ring: Ring = None) -> QSeries:
        return cls._from_dense([], prec, prec, ring)

    @classmethod
    def one(cls, prec: int, ring: Ring = None) -> QSeries:
        return cls.monomial(1, 0, prec, ring)

    @classmethod
    def monomial(cls, c: Scalar, e: int, prec: int, ring: Ring = None) -> QSeries:
        ring = _join_rings(ring, _ring_of(c))
        if e >= prec:
            return cls.zero(prec, ring)
        coeffs = [_zero(ring)] * (prec - e)
        coeffs[0] = _elem(ring, c)
        return cls._from_dense(coeffs, e, prec, ring)

    @classmethod
    def from_dict(cls, terms: dict[int, Scalar], prec: int, ring: Ring = None) -> QSeries:
        for c in terms.values():
            ring = _join_rings(ring, _ring_of(c))
        live = [e for e, c in terms.items() if e < prec]
        if not live:
            return cls.zero(prec, ring)
        v = min(live)
        coeffs = [_zero(ring)] * (prec - v)
        for e in live:
            coeffs[e - v] = coeffs[e - v] + _elem(ring, terms[e])
        return cls._from_dense(coeffs, v, prec, ring)

    # basic access ---------------------------------------------------------

    @property
    def order(self) -> Optional[int]:
        """Cyclotomic order t, or None for integer coefficients."""
        return self.ring

    @property
    def valuation(self) -> int:
        return self.val

    @property
    def precision(self) -> int:
        return self.prec

    def __getitem__(self, n: int) -> Scalar:
        if n >= self.prec:
            raise IndexError(f"coefficient of q^{n} is beyond the precision O(q^{self.prec})")
        if n < self.val:
            return _zero(self.ring)
        return self.coeffs[n - self.val]

    def coefficients(self, start: int = 0, stop: Optional[int] = None) -> list[Scalar]:
        stop = self.prec if stop is None else stop
        return [self[n] for n in range(start, stop)]

    def terms(self) -> Iterator[tuple[int, Scalar]]:
        """Nonzero (exponent, coefficient) pairs in increasing order."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.val + i, c

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_ring(self, t: Ring) -> QSeries:
        if t == self.ring:
            return self
        if self.ring is not None:
            if t is None:
                return QSeries._from_dense(
                    [c.to_int() for c in self.coeffs], self.val, self.prec, None
                )
            raise ValueError(f"ring mismatch: Z[zeta_{self.ring}] vs Z[zeta_{t}]")
        return QSeries._from_dense(
            [CycInt.from_int(t, c) for c in self.coeffs], self.val, self.prec, t
        )

    def truncate(self, prec: int) -> QSeries:
        prec = min(prec, self.prec)
        if prec <= self.val:
            return QSeries.zero(prec, self.ring)
        return QSeries._from_dense(self.coeffs[: prec - self.val], self.val, prec, self.ring)

    def map_coeffs(self, f: Callable[[Scalar], Scalar], ring: Ring = None) -> QSeries:
        ring = self.ring if ring is None else ring
        return QSeries._from_dense(
            [_elem(ring, f(c)) for c in self.coeffs], self.val, self.prec, ring
        )

    def galois(self, a: int) -> QSeries:
        """Apply zeta -> zeta^a to every coefficient."""
        if self.ring is None:
            return self
        return QSeries._from_dense([c.galois(a) for c in self.coeffs], self.val, self.prec, self.ring)

    # arithmetic -----------------------------------------------------------

    def _aligned(self, other: QSeries) -> tuple[QSeries, QSeries, Ring]:
        ring = _join_rings(self.ring, other.ring)
        return self.to_ring(ring), other.to_ring(ring), ring

    def __add__(self, other: Union[QSeries, Scalar]) -> QSeries:
        if not isinstance(other, QSeries):
            other = QSeries.monomial(other, 0, self.prec, _join_rings(self.ring, _ring_of(other)))
        a, b, ring = self._aligned(other)
        prec = min(a.prec, b.prec)
        v = min(a.val, b.val, prec)
        out = [_zero(ring)] * (prec - v)
        for s in (a, b):
            off = s.val - v
            for i in range(max(0, min(len(s.coeffs), prec - s.val))):
                out[off + i] = out[off + i] + s.coeffs[i]
        return QSeries._from_dense(out, v, prec, ring)

    __radd__ = __add__

    def __neg__(self) -> QSeries:
        return QSeries._from_dense([-c for c in self.coeffs], self.val, self.prec, self.ring)

    def __sub__(self, other: Union[QSeries, Scalar]) -> QSeries:
        return self + (-other)

    def __rsub__(self, other: Scalar) -> QSeries:
        return (-self) + other

    def __mul__(self, other: Union[QSeries, Scalar]) -> QSeries:
        if isinstance(other, QSeries):
            return qs_mul(self, other)
        if isinstance(other, (int, CycInt)):
            ring = _join_rings(self.ring, _ring_of(other))
            c = _elem(ring, other)
            s = self.to_ring(ring)
            return QSeries._from_dense([x * c for x in s.coeffs], s.val, s.prec, ring)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: QSeries) -> QSeries:
        return qs_mul(self, qs_inv(other))

    def __pow__(self, n: int) -> QSeries:
        if n < 0:
            return qs_inv(self) ** (-n)
        if n == 0:
            return QSeries.one(self.prec - self.val, self.ring)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else qs_mul(result, base)
            n >>= 1
            if n:
                base = qs_mul(base, base)
        return result

    def shift(self, k: int) -> QSeries:
        """Multiply by q^k."""
        return QSeries._from_dense(list(self.coeffs), self.val + k, self.prec + k, self.ring)

    def mul_binomial(self, c: Scalar, a: int) -> QSeries:
        """Multiply by (1 - c q^a), a >= 1."""
        if a < 1:
            raise ValueError("binomial exponent must be positive")
        ring = _join_rings(self.ring, _ring_of(c))
        s = self.to_ring(ring)
        c = _elem(ring, c)
        out = list(s.coeffs)
        for i in range(len(out) - 1, a - 1, -1):
            x = s.coeffs[i - a]
            if x:
                out[i] = out[i] - c * x
        return QSeries._from_dense(out, s.val, s.prec, ring)

    def div_binomial(self, c: Scalar, a: int) -> QSeries:
        """Divide by (1 - c q^a), a >= 1."""
        if a < 1:
            raise ValueError("binomial exponent must be positive")
        ring = _join_rings(self.ring, _ring_of(c))
        s = self.to_ring(ring)
        c = _elem(ring, c)
        out = list(s.coeffs)
        for i in range(a, len(out)):
            x = out[i - a]
            if x:
                out[i] = out[i] + c * x
        return QSeries._from_dense(out, s.val, s.prec, ring)

    # comparison -----------------------------------------------------------

    def compare(self, other: QSeries, label: str = "") -> Optional[Mismatch]:
        """First coefficient disagreement below the common precision, or None."""
        ring = _join_rings(self.ring, other.ring)
        a, b = self.to_ring(ring), other.to_ring(ring)
        prec = min(a.prec, b.prec)
        for n in range(min(a.val, b.val), prec):
            x, y = a[n], b[n]
            if x != y:
                return Mismatch(n, x, y, label)
        return None

    def agrees_with(self, other: QSeries) -> bool:
        return self.compare(other) is None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QSeries):
            if self.prec != other.prec:
                return False
            return self.compare(other) is None
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    # rendering ------------------------------------------------------------

    def __repr__(self) -> str:
        return f"QSeries({self.render(max_terms=8)})"

    def __str__(self) -> str:
        return self.render()

    def render(self, max_terms: Optional[int] = None) -> str:
        pieces = []
        for n, c in self.terms():
            if max_terms is not None and len(pieces) >= max_terms:
                pieces.append("...")
                break
            if n == 0:
                mono = ""
            elif n == 1:
                mono = "q"
            else:
                mono = f"q^{n}"
            if isinstance(c, CycInt) and not c.is_integer():
                coef = f"({c})"
                pieces.append(f"{coef}*{mono}" if mono else coef)
            else:
                v = int(c) if not isinstance(c, CycInt) else c.to_int()
                if mono:
                    pieces.append(mono if v == 1 else ("-" + mono if v == -1 else f"{v}*{mono}"))
                else:
                    pieces.append(str(v))
        pieces.append(f"O(q^{self.prec})")
        out = pieces[0]
        for p in pieces[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def to_json_dict(self) -> dict:
        if self.ring is None:
            rows = [[c] for c in self.coeffs]
        else:
            rows = [list(c.coeffs) for c in self.coeffs]
        return {
            "ring": "integer" if self.ring is None else "cyclotomic",
            "t": self.ring,
            "valuation": self.val,
            "precision": self.prec,
            "coeffs": rows,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, d: dict) -> QSeries:
        ring = d.get("t") if d.get("ring") == "cyclotomic" else None
        if ring is None:
            coeffs = [row[0] for row in d["coeffs"]]
        else:
            coeffs = [CycInt(ring, row) for row in d["coeffs"]]
        return cls(coeffs, d["valuation"], d["precision"], ring)

    @classmethod
    def from_json(cls, text: str) -> QSeries:
        return cls.from_json_dict(json.loads(text))


# ---------------------------------------------------------------------------
# series operations


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product, known to min(a.prec + b.val, b.prec + a.val)."""
    ring = _join_rings(a.ring, b.ring)
    a, b = a.to_ring(ring), b.to_ring(ring)
    v = a.val + b.val
    prec = min(a.prec + b.val, b.prec + a.val)
    if a.is_zero() or b.is_zero():
        return QSeries.zero(prec, ring)
    return QSeries._from_dense(_conv(a.coeffs, b.coeffs, prec - v, ring), v, prec, ring)


def _inverse_unit(c: Scalar, ring: Ring) -> Scalar:
    if isinstance(c, CycInt):
        if not c.is_unit_root():
            raise ValueError(f"leading coefficient {c} is not a unit")
        return c.unit_inverse()
    if c not in (1, -1):
        raise ValueError(f"leading coefficient {c} is not a unit")
    return c


def qs_inv(a: QSeries) -> QSeries:
    """Multiplicative inverse; the leading coefficient must be +-zeta^k."""
    if a.is_zero():
        raise ZeroDivisionError("series is zero to its precision")
    ring = a.ring
    u_inv = _inverse_unit(a.coeffs[0], ring)
    n = a.prec - a.val
    # normalised series 1 + ...
    norm = [c * u_inv for c in a.coeffs]
    if n <= 2 * _KRONECKER_MIN:
        inv = [_zero(ring)] * n
        inv[0] = _elem(ring, 1)
        for k in range(1, n):
            acc = _zero(ring)
            for j in range(1, k + 1):
                x = norm[j]
                if x:
                    y = inv[k - j]
                    if y:
                        acc = acc + x * y
            inv[k] = -acc
    else:
        inv = [_elem(ring, 1)]
        k = 1
        while k < n:
            k2 = min(2 * k, n)
            e = _conv(norm[:k2], inv, k2, ring)
            # inv <- inv * (2 - norm*inv)
            e = [-x for x in e]
            e[0] = e[0] + 2
            inv = _conv(inv, e, k2, ring)
            k = k2
    inv = [c * u_inv for c in inv]
    return QSeries._from_dense(inv, -a.val, a.prec - 2 * a.val, ring)


def dissect(s: QSeries, r: int, t: int) -> QSeries:
    """Extract ``sum a(t n + r) q^n`` from ``sum a(n) q^n`` (0 <= r < t)."""
    if not 0 <= r < t:
        raise ValueError("residue must satisfy 0 <= r < t")
    prec = -((r - s.prec) // t)  # ceil((prec - r)/t): exponents n with tn + r < prec
    lo = -((r - s.val) // t)
    lo = min(lo, prec)
    coeffs = [s[t * n + r] for n in range(lo, prec)]
    return QSeries._from_dense(coeffs, lo, prec, s.ring)


def substitute_qpower(s: QSeries, k: int) -> QSeries:
    """Replace q by q^k (k >= 1)."""
    if k < 1:
        raise ValueError("substitution power must be >= 1")
    if k == 1:
        return s
    zero = _zero(s.ring)
    out = []
    for i, c in enumerate(s.coeffs):
        out.append(c)
        if i < len(s.coeffs) - 1:
            out.extend([zero] * (k - 1))
    prec = k * s.prec
    v = k * s.val
    out.extend([zero] * (prec - v - len(out)))
    return QSeries._from_dense(out, v, prec, s.ring)


# ---------------------------------------------------------------------------
# standard constructors


def euler_E(prec: int) -> QSeries:
    """E(q) = prod (1 - q^n) via the pentagonal number theorem."""
    if prec < 1:
        raise ValueError("precision must be >= 1")
    coeffs = [0] * prec
    n = 0
    while True:
        hit = False
        for m in ((n, -n) if n else (0,)):
            e = m * (3 * m + 1) // 2
            if e < prec:
                coeffs[e] += -1 if m % 2 else 1
                hit = True
        if not hit:
            break
        n += 1
    return QSeries._from_dense(coeffs, 0, prec, None)


def euler_E_product(prec: int) -> QSeries:
    """E(q) expanded factor by factor; an independent check on :func:`euler_E`."""
    s = QSeries.one(prec)
    for n in range(1, prec):
        s = s.mul_binomial(1, n)
    return s


def pochhammer(c: Scalar, a: int, m: int, n: int, prec: int, inverse: bool = False) -> QSeries:
    """(c q^a; q^m)_n = prod_{k<n} (1 - c q^{a+km}), or its reciprocal."""
    if a < 1 or m < 1:
        raise ValueError("pochhammer needs a >= 1 and m >= 1")
    s = QSeries.one(prec, _ring_of(c))
    for k in range(n):
        e = a + k * m
        if e >= prec:
            break
        s = s.div_binomial(c, e) if inverse else s.mul_binomial(c, e)
    return s


def pochhammer_inf(c: Scalar, a: int, m: int, prec: int, inverse: bool = False) -> QSeries:
    """(c q^a; q^m)_infinity truncated at q^prec, or its reciprocal."""
    if a < 1:
        raise ValueError("(c q^a; q^m)_inf with a < 1 is not a power series unit")
    if m < 1:
        raise ValueError("step m must be >= 1")
    n = max(0, -((a - prec) // m))  # factors with a + km < prec
    return pochhammer(c, a, m, n, prec, inverse)


def jacobi_J(a: int, m: int, prec: int) -> QSeries:
    """J_{a,m}(q) = (q^a;q^m)_inf (q^{m-a};q^m)_inf (q^m;q^m)_inf."""
    if not 1 <= a < m:
        raise ValueError(f"J_{{a,m}} needs 1 <= a < m, got a={a}, m={m}")
    s = QSeries.one(prec)
    for start in (a, m - a, m):
        e = start
        while e < prec:
            s = s.mul_binomial(1, e)
            e += m
    return s


def _theta_range(e: int, m: int, bound: int) -> range:
    """Integers n with e*n + m*n^2 < bound (m >= 1)."""
    # roots of m n^2 + e n - bound = 0
    disc = e * e + 4 * m * bound
    if disc < 0:
        return range(0)
    r = math.isqrt(disc)
    lo = (-e - r) // (2 * m) - 1
    hi = (-e + r) // (2 * m) + 1
    while lo <= hi and e * lo + m * lo * lo >= bound:
        lo += 1
    while hi >= lo and e * hi + m * hi * hi >= bound:
        hi -= 1
    return range(lo, hi + 1)


def theta_sum(c: Scalar, e: int, m: int, prec: int) -> QSeries:
    """Theta(c q^e, q^m) = sum_n c^n q^{e n + m n^2}, truncated at q^prec."""
    if m < 1:
        raise ValueError("theta_sum needs m >= 1")
    ring = _ring_of(c)
    terms: dict[int, Scalar] = {}
    for n in _theta_range(e, m, prec):
        x = e * n + m * n * n
        terms[x] = terms.get(x, _zero(ring)) + _unit_power(c, n, ring)
    return QSeries.from_dict(terms, prec, ring)


# ---------------------------------------------------------------------------
# bivariate layer


class ZLaurent:
    """Finite Laurent polynomial in z with truncated QSeries coefficients.

    ``terms`` maps a z-exponent to its q-series.  Absent exponents are zero to
    the precision ``qprec + slope*k``.
    """

    __slots__ = ("ring", "terms", "qprec", "slope")

    def __init__(
        self, terms: dict[int, QSeries], qprec: int, ring: Ring = None, slope: int = 0
    ) -> None:
        for s in terms.values():
            ring = _join_rings(ring, s.ring)
        self.ring = ring
        self.qprec = qprec
        self.slope = slope
        clean: dict[int, QSeries] = {}
        for k in sorted(terms):
            s = terms[k]
            p = qprec + slope * k
            if s.prec < p:
                raise ValueError(
                    f"z^{k} coefficient known only to O(q^{s.prec}), need O(q^{p})"
                )
            s = s.truncate(p).to_ring(ring)
            if not s.is_zero():
                clean[k] = s
        self.terms = clean

    def precision_at(self, k: int) -> int:
        return self.qprec + self.slope * k

    def coeff_z(self, k: int) -> QSeries:
        s = self.terms.get(k)
        if s is None:
            return QSeries.zero(self.precision_at(k), self.ring)
        return s

    def truncate(self, qprec: int) -> ZLaurent:
        """Drop everything at or beyond q^(qprec + slope*k) in the z^k coefficient."""
        if qprec > self.qprec:
            raise ValueError(f"cannot raise precision from {self.qprec} to {qprec}")
        return ZLaurent(dict(self.terms), qprec, self.ring, self.slope)

    def min_valuation(self) -> int:
        """Lower bound on the q-valuation of every z-coefficient (slope 0)."""
        v = self.qprec
        for s in self.terms.values():
            v = min(v, s.val)
        return v

    def z_exponents(self) -> list[int]:
        return sorted(self.terms)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other: ZLaurent) -> ZLaurent:
        if self.slope != other.slope:
            raise ValueError("cannot add ZLaurents with different precision slopes")
        ring = _join_rings(self.ring, other.ring)
        qprec = min(self.qprec, other.qprec)
        keys = set(self.terms) | set(other.terms)
        terms = {k: self.coeff_z(k) + other.coeff_z(k) for k in keys}
        return ZLaurent(terms, qprec, ring, self.slope)

    def __neg__(self) -> ZLaurent:
        return ZLaurent({k: -s for k, s in self.terms.items()}, self.qprec, self.ring, self.slope)

    def __sub__(self, other: ZLaurent) -> ZLaurent:
        return self + (-other)

    def __mul__(self, other: Union[ZLaurent, QSeries, Scalar]) -> ZLaurent:
        if isinstance(other, ZLaurent):
            return zl_mul(self, other)
        if isinstance(other, QSeries):
            if self.slope:
                raise ValueError("z-free products need slope 0")
            ring = _join_rings(self.ring, other.ring)
            qprec = min(self.qprec + other.val, other.prec + self.min_valuation())
            terms = {k: (s * other).truncate(qprec) for k, s in self.terms.items()}
            return ZLaurent(terms, qprec, ring, 0)
        if isinstance(other, (int, CycInt)):
            ring = _join_rings(self.ring, _ring_of(other))
            return ZLaurent(
                {k: s * other for k, s in self.terms.items()}, self.qprec, ring, self.slope
            )
        return NotImplemented

    __rmul__ = __mul__

    def mul_monomial(self, c: Scalar, zexp: int, qexp: int) -> ZLaurent:
        """Multiply by c z^zexp q^qexp."""
        ring = _join_rings(self.ring, _ring_of(c))
        terms = {k + zexp: (s * c).shift(qexp) for k, s in self.terms.items()}
        return ZLaurent(terms, self.qprec - self.slope * zexp + qexp, ring, self.slope)

    def shift_z(self, s: int) -> ZLaurent:
        """Substitute z -> z q^s."""
        terms = {k: c.shift(s * k) for k, c in self.terms.items()}
        return ZLaurent(terms, self.qprec, self.ring, self.slope + s)

    def twist(self, c: Scalar) -> ZLaurent:
        """Substitute z -> c z for a signed root of unity c."""
        ring = _join_rings(self.ring, _ring_of(c))
        terms = {k: s * _unit_power(c, k, ring) for k, s in self.terms.items()}
        return ZLaurent(terms, self.qprec, ring, self.slope)

    def evaluate(self, c: Scalar) -> QSeries:
        """Set z = c (a signed root of unity); requires slope 0."""
        if self.slope:
            raise ValueError("evaluation needs slope 0")
        ring = _join_rings(self.ring, _ring_of(c))
        out = QSeries.zero(self.qprec, ring)
        for k, s in self.terms.items():
            out = out + s * _unit_power(c, k, ring)
        return out

    def div_binomial(self, c: Scalar, zexp: int, qexp: int) -> ZLaurent:
        """Divide by (1 - c z^zexp q^qexp) with qexp >= 1 (slope 0)."""
        if qexp < 1:
            raise ValueError("q-exponent must be >= 1")
        ring = _join_rings(self.ring, _ring_of(c))
        span = self.qprec - self.min_valuation()
        geo = []
        j = 0
        while j * qexp < span:
            geo.append((j * zexp, j * qexp, _unit_power(c, j, ring) if j else 1))
            j += 1
        return zl_mul(self, zl_build(ring, geo, span))

    def mul_binomial(self, c: Scalar, zexp: int, qexp: int) -> ZLaurent:
        """Multiply by (1 - c z^zexp q^qexp)."""
        return self + self.mul_monomial(-_elem(_join_rings(self.ring, _ring_of(c)), c), zexp, qexp)

    # comparison -----------------------------------------------------------

    def compare(self, other: ZLaurent, label: str = "") -> Optional[Mismatch]:
        """First disagreement over all z-powers, on the overlap of precisions."""
        for k in sorted(set(self.terms) | set(other.terms)):
            m = self.coeff_z(k).compare(other.coeff_z(k))
            if m is not None:
                tag = f"{label} z^{k}" if label else f"z^{k}"
                return Mismatch(m.exponent, m.lhs, m.rhs, tag)
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ZLaurent):
            return NotImplemented
        return (
            self.qprec == other.qprec
            and self.slope == other.slope
            and self.compare(other) is None
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = ", ".join(f"z^{k}: {s.render(max_terms=4)}" for k, s in self.terms.items())
        return f"ZLaurent({{{body}}}, qprec={self.qprec}, slope={self.slope})"


def zl_build(ring: Ring, terms: Iterable[tuple[int, int, Scalar]], qprec: int) -> ZLaurent:
    """ZLaurent from (z-exponent, q-exponent, coefficient) monomials."""
    by_z: dict[int, dict[int, Scalar]] = {}
    for zk, qk, c in terms:
        ring = _join_rings(ring, _ring_of(c))
        if qk >= qprec:
            continue
        d = by_z.setdefault(zk, {})
        d[qk] = d.get(qk, 0) + c
    series = {k: QSeries.from_dict(d, qprec, ring) for k, d in by_z.items()}
    if not series and qprec <= 0:
        raise ValueError("empty ZLaurent needs a positive q-precision")
    return ZLaurent(series, qprec, ring)


def zl_mul(a: ZLaurent, b: ZLaurent) -> ZLaurent:
    if a.slope or b.slope:
        raise ValueError("products are only defined for slope-0 ZLaurents")
    ring = _join_rings(a.ring, b.ring)
    qprec = min(a.qprec + b.min_valuation(), b.qprec + a.min_valuation())
    acc: dict[int, QSeries] = {}
    for i, x in a.terms.items():
        for j, y in b.terms.items():
            if x.val + y.val >= qprec:
                continue
            p = qs_mul(x, y).truncate(qprec)
            k = i + j
            acc[k] = acc[k] + p if k in acc else p
    return ZLaurent(acc, qprec, ring)


def zl_coeff_z(f: ZLaurent, k: int) -> QSeries:
    return f.coeff_z(k)


def zl_shift_z(f: ZLaurent, s: int) -> ZLaurent:
    return f.shift_z(s)


def zl_theta(c: Scalar, e: int, m: int, qprec: int) -> ZLaurent:
    """Theta(c z q^e, q^m) = sum_n c^n z^n q^{e n + m n^2} as a ZLaurent."""
    if m < 1:
        raise ValueError("zl_theta needs m >= 1")
    ring = _ring_of(c)
    mons = [
        (n, e * n + m * n * n, _unit_power(c, n, ring)) for n in _theta_range(e, m, qprec)
    ]
    return zl_build(ring, mons, qprec)
