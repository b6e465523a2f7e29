"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(m)-1) with a
single common denominator, so every coefficient is a Python integer until it
is handed back as a Fraction.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence

MAX_ORDER = 10_000


def euler_phi(m: int) -> int:
    result = m
    p = 2
    n = m
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def _mobius(n: int) -> int:
    sign = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            sign = -sign
        p += 1
    if n > 1:
        sign = -sign
    return sign


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _poly_exact_div(num: list[int], den: Sequence[int]) -> list[int]:
    # den is monic; coefficients run from low to high degree
    num = list(num)
    dn = len(den) - 1
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        q = num[i]
        quot[i - dn] = q
        if q:
            for k in range(dn + 1):
                num[i - dn + k] -= q * den[k]
    if any(num[:dn]):
        raise ArithmeticError("polynomial division left a remainder")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first.

    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if m < 1:
        raise ValueError(f"cyclotomic_polynomial needs m >= 1, got {m}")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in _divisors(m)[:-1]:
        poly = _poly_exact_div(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Row k holds the power-basis coordinates of zeta_m^k, 0 <= k < m."""
    phi_poly = cyclotomic_polynomial(m)
    deg = len(phi_poly) - 1
    rows = []
    cur = [1] + [0] * (deg - 1)
    for _ in range(m):
        rows.append(tuple(cur))
        lead = cur[-1]
        cur = [0] + cur[:-1]
        if lead:
            for i in range(deg):
                cur[i] -= lead * phi_poly[i]
    return tuple(rows)


@lru_cache(maxsize=None)
def _basis_traces(m: int) -> tuple[Fraction, ...]:
    # normalized trace Tr(zeta^k)/phi(m), which does not depend on the ambient field
    out = []
    for k in range(euler_phi(m)):
        g = math.gcd(k, m)
        e = m // g
        out.append(Fraction(_mobius(e), euler_phi(e)))
    return tuple(out)


def _check_order(m: int) -> None:
    if m < 1:
        raise ValueError(f"cyclotomic order must be positive, got {m}")
    if m > MAX_ORDER:
        raise ValueError(f"cyclotomic order {m} exceeds the cap {MAX_ORDER}")


def _reduce_exponents(m: int, vec: Sequence[int]) -> list[int]:
    table = _reduction_table(m)
    deg = len(table[0])
    out = [0] * deg
    for k, v in enumerate(vec):
        if v:
            row = table[k % m]
            for i in range(deg):
                if row[i]:
                    out[i] += v * row[i]
    return out


class Cyclotomic:
    """An element of Q(zeta_m) in the power basis reduced modulo Phi_m.

    Instances are immutable. Binary operations between different orders
    work in Q(zeta_L) with L the lcm of the two orders.
    """

    __slots__ = ("order", "_num", "_den")

    def __init__(self, order: int, coeffs: Iterable):
        _check_order(order)
        fr = [Fraction(c) for c in coeffs]
        if len(fr) != euler_phi(order):
            raise ValueError(
                f"order {order} needs {euler_phi(order)} coefficients, got {len(fr)}"
            )
        den = math.lcm(*(f.denominator for f in fr)) if fr else 1
        self._set(order, [f.numerator * (den // f.denominator) for f in fr], den)

    def _set(self, order: int, num: list[int], den: int) -> None:
        if den < 0:
            num = [-v for v in num]
            den = -den
        g = math.gcd(den, *num)
        if g > 1:
            num = [v // g for v in num]
            den //= g
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_num", tuple(num))
        object.__setattr__(self, "_den", den)

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic values are immutable")

    def __reduce__(self):
        return (Cyclotomic._raw, (self.order, list(self._num), self._den))

    @classmethod
    def _raw(cls, order: int, num: list[int], den: int = 1) -> "Cyclotomic":
        obj = cls.__new__(cls)
        obj._set(order, num, den)
        return obj

    @classmethod
    def from_exponents(cls, order: int, vec: Sequence[int], den: int = 1) -> "Cyclotomic":
        """Build (sum_k vec[k] * zeta_order^k) / den from integer weights."""
        _check_order(order)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        return cls._raw(order, _reduce_exponents(order, vec), den)

    @classmethod
    def rational(cls, r) -> "Cyclotomic":
        r = Fraction(r)
        return cls._raw(1, [r.numerator], r.denominator)

    @classmethod
    def zero(cls, order: int = 1) -> "Cyclotomic":
        _check_order(order)
        return cls._raw(order, [0] * euler_phi(order), 1)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self._den) for v in self._num)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self._num[0], self._den)

    def coerce(self, order: int) -> "Cyclotomic":
        """Embed into Q(zeta_order); order must be a multiple of self.order."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot embed Q(zeta_{self.order}) into Q(zeta_{order})")
        _check_order(order)
        step = order // self.order
        vec = [0] * order
        for k, v in enumerate(self._num):
            vec[k * step] = v
        return Cyclotomic._raw(order, _reduce_exponents(order, vec), self._den)

    def _common(self, other: "Cyclotomic") -> tuple["Cyclotomic", "Cyclotomic"]:
        if self.order == other.order:
            return self, other
        L = math.lcm(self.order, other.order)
        return self.coerce(L), other.coerce(L)

    @staticmethod
    def _lift(other) -> "Cyclotomic | None":
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Rational)):
            return Cyclotomic.rational(other)
        return None

    def __add__(self, other):
        if isinstance(other, (int, Rational)):
            r = Fraction(other)
            num = list(self._num)
            num = [v * r.denominator for v in num]
            num[0] += r.numerator * self._den
            return Cyclotomic._raw(self.order, num, self._den * r.denominator)
        other = self._lift(other)
        if other is None:
            return NotImplemented
        x, y = self._common(other)
        den = x._den * y._den // math.gcd(x._den, y._den)
        fx, fy = den // x._den, den // y._den
        return Cyclotomic._raw(
            x.order, [a * fx + b * fy for a, b in zip(x._num, y._num)], den
        )

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.order, [-v for v in self._num], self._den)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scalar_mul(self, r) -> "Cyclotomic":
        r = Fraction(r)
        return Cyclotomic._raw(
            self.order, [v * r.numerator for v in self._num], self._den * r.denominator
        )

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scalar_mul(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        x, y = self._common(other)
        m = x.order
        n = len(x._num)
        prod = [0] * (2 * n - 1)
        for i, a in enumerate(x._num):
            if a:
                for j, b in enumerate(y._num):
                    if b:
                        prod[i + j] += a * b
        return Cyclotomic._raw(m, _reduce_exponents(m, prod), x._den * y._den)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = Cyclotomic._raw(self.order, [1] + [0] * (len(self._num) - 1), 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> "Cyclotomic":
        """Complex conjugation, zeta_m -> zeta_m^(m-1)."""
        m = self.order
        vec = [0] * m
        for k, v in enumerate(self._num):
            vec[(-k) % m] += v
        return Cyclotomic._raw(m, _reduce_exponents(m, vec), self._den)

    def embed(self) -> complex:
        """Value under zeta_m -> exp(2 pi i / m) in double precision.

        Absolute error is roughly phi(m) * max|coeff| * 1e-16.
        """
        m = self.order
        total = 0j
        for k, v in enumerate(self._num):
            if v:
                total += (v / self._den) * cmath.exp(2j * cmath.pi * k / m)
        return total

    def __complex__(self):
        return self.embed()

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        x, y = self._common(other)
        return x._den == y._den and x._num == y._num

    def __hash__(self):
        traces = _basis_traces(self.order)
        return hash(sum((Fraction(v, self._den) * t for v, t in zip(self._num, traces)), Fraction(0)))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"({c})*z{self.order}^{k}")
        return "Cyclotomic(" + (" + ".join(terms) or "0") + ")"

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Cyclotomic":
        return cls(int(obj["order"]), [Fraction(s) for s in obj["coeffs"]])


def root_of_unity(m: int, k: int) -> Cyclotomic:
    """zeta_m^k reduced to the power basis."""
    _check_order(m)
    vec = [0] * m
    vec[k % m] = 1
    return Cyclotomic.from_exponents(m, vec)
