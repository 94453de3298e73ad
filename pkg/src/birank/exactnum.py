"""Exact arithmetic in the cyclotomic integer ring Z[zeta_t], t prime.

Elements are stored in the power basis ``1, z, ..., z^(t-2)`` where ``z`` is a
primitive t-th root of unity; ``z^(t-1)`` is always eliminated with
``1 + z + ... + z^(t-1) = 0``.  Coefficients are Python ints, so there is no
overflow at any size.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Union

__all__ = ["CycInt", "cyc_make", "cyc_add", "cyc_mul", "is_prime", "zeta"]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@lru_cache(maxsize=None)
def _check_order(t: int) -> int:
    if not isinstance(t, int) or t < 5 or not is_prime(t):
        raise ValueError(f"cyclotomic order must be a prime >= 5, got {t!r}")
    return t


def _reduce(full: list[int], t: int) -> tuple[int, ...]:
    """Reduce a length-t vector (coefficients of z^0..z^(t-1)) to the basis."""
    top = full[t - 1]
    if top:
        return tuple(c - top for c in full[: t - 1])
    return tuple(full[: t - 1])


class CycInt:
    """An element of Z[zeta_t] in canonical power-basis form.

    >>> z = CycInt.zeta(5)
    >>> str(z * z**4)
    '1'
    >>> str((z + z**4) ** 2)
    '2 + z^2 + z^3'
    """

    __slots__ = ("_t", "_c", "_hash")

    def __init__(self, t: int, coeffs: Iterable[int] = ()) -> None:
        _check_order(t)
        c = list(coeffs)
        if len(c) > t - 1:
            # accept a full length-t vector and reduce it
            full = [0] * t
            for i, v in enumerate(c):
                full[i % t] += int(v)
            c = list(_reduce(full, t))
        else:
            c = [int(v) for v in c] + [0] * (t - 1 - len(c))
        self._t = t
        self._c = tuple(c)
        self._hash = None

    @classmethod
    def _raw(cls, t: int, c: tuple[int, ...]) -> CycInt:
        obj = object.__new__(cls)
        obj._t = t
        obj._c = c
        obj._hash = None
        return obj

    # constructors ---------------------------------------------------------

    @classmethod
    def from_int(cls, t: int, n: int) -> CycInt:
        _check_order(t)
        return cls._raw(t, (int(n),) + (0,) * (t - 2))

    @classmethod
    def zeta(cls, t: int, k: int = 1) -> CycInt:
        """The root of unity ``zeta_t^k``."""
        return cls.from_terms(t, [(k, 1)])

    @classmethod
    def from_terms(cls, t: int, terms: Iterable[tuple[int, int]]) -> CycInt:
        """Build ``sum c * zeta^e`` from (exponent, coefficient) pairs."""
        _check_order(t)
        full = [0] * t
        for e, c in terms:
            full[e % t] += int(c)
        return cls._raw(t, _reduce(full, t))

    # accessors ------------------------------------------------------------

    @property
    def order(self) -> int:
        return self._t

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    def is_integer(self) -> bool:
        return not any(self._c[1:])

    def to_int(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not in the integer subring")
        return self._c[0]

    def root_of_unity_exponent(self) -> tuple[int, int] | None:
        """Return ``(sign, k)`` with ``self == sign * zeta^k``, or None."""
        t = self._t
        c = self._c
        nz = [i for i, v in enumerate(c) if v]
        if len(nz) == 1 and c[nz[0]] in (1, -1):
            return c[nz[0]], nz[0]
        # zeta^(t-1) = -(1 + z + ... + z^(t-2))
        if all(v == c[0] for v in c) and c[0] in (1, -1):
            return -c[0], t - 1
        return None

    def is_unit_root(self) -> bool:
        return self.root_of_unity_exponent() is not None

    # ring operations ------------------------------------------------------

    def _coerce(self, other: object) -> CycInt:
        if isinstance(other, CycInt):
            if other._t != self._t:
                raise ValueError(
                    f"cannot combine elements of Z[zeta_{self._t}] and Z[zeta_{other._t}]"
                )
            return other
        if isinstance(other, int):
            return CycInt.from_int(self._t, other)
        return NotImplemented

    def __add__(self, other: Union[CycInt, int]) -> CycInt:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return CycInt._raw(self._t, tuple(a + b for a, b in zip(self._c, o._c)))

    __radd__ = __add__

    def __neg__(self) -> CycInt:
        return CycInt._raw(self._t, tuple(-a for a in self._c))

    def __pos__(self) -> CycInt:
        return self

    def __sub__(self, other: Union[CycInt, int]) -> CycInt:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return CycInt._raw(self._t, tuple(a - b for a, b in zip(self._c, o._c)))

    def __rsub__(self, other: Union[CycInt, int]) -> CycInt:
        return (-self) + other

    def __mul__(self, other: Union[CycInt, int]) -> CycInt:
        if isinstance(other, int):
            if other == 1:
                return self
            return CycInt._raw(self._t, tuple(a * other for a in self._c))
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        t = self._t
        full = [0] * t
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(o._c):
                    if b:
                        full[(i + j) % t] += a * b
        return CycInt._raw(t, _reduce(full, t))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> CycInt:
        if n < 0:
            return self.unit_inverse() ** (-n)
        result = CycInt.from_int(self._t, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def unit_inverse(self) -> CycInt:
        """Inverse of a signed root of unity.  Other units are not supported."""
        r = self.root_of_unity_exponent()
        if r is None:
            raise ValueError(f"{self} is not a signed root of unity")
        sign, k = r
        return CycInt.from_terms(self._t, [(-k, sign)])

    def galois(self, a: int) -> CycInt:
        """Apply the automorphism zeta -> zeta^a (a coprime to t)."""
        t = self._t
        if a % t == 0:
            raise ValueError("automorphism exponent must be coprime to t")
        return CycInt.from_terms(t, [(a * i, c) for i, c in enumerate(self._c) if c])

    # comparison -----------------------------------------------------------

    def __bool__(self) -> bool:
        return any(self._c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycInt):
            return self._t == other._t and self._c == other._c
        if isinstance(other, int):
            return self._c[0] == other and not any(self._c[1:])
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_integer():
                self._hash = hash(self._c[0])
            else:
                self._hash = hash((self._t, self._c))
        return self._hash

    # rendering ------------------------------------------------------------

    def __repr__(self) -> str:
        return f"CycInt({self._t}, {list(self._c)})"

    def __str__(self) -> str:
        return self.render()

    def render(self, symbol: str = "z") -> str:
        parts: list[str] = []
        for i, c in enumerate(self._c):
            if not c:
                continue
            if i == 0:
                mono = ""
            elif i == 1:
                mono = symbol
            else:
                mono = f"{symbol}^{i}"
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts) if parts else "0"


def cyc_make(t: int, terms: Iterable[tuple[int, int]]) -> CycInt:
    """Canonical element ``sum c * zeta_t^e`` for (exponent, coefficient) pairs."""
    return CycInt.from_terms(t, terms)


def cyc_add(a: CycInt, b: CycInt) -> CycInt:
    return a + b


def cyc_mul(a: CycInt, b: CycInt) -> CycInt:
    return a * b


def zeta(t: int, k: int = 1) -> CycInt:
    return CycInt.zeta(t, k)
