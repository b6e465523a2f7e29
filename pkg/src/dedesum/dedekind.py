"""Exact generalized Dedekind sums S_{chi1,chi2}(gamma) and their structural laws.

For gamma = (a, b; c, d) in Gamma_0(q1 q2) with c >= 1,

    S(gamma) = sum_{j mod c} sum_{n mod q1} conj(chi2)(j) conj(chi1)(n) B1(j/c) B1(n/q1 + aj/c).

:func:`dedekind_sum_direct` evaluates that double sum term by term.
:func:`dedekind_sum` uses the collapsed form

    S(gamma) = sum_{0<j<c} conj(chi2)(j) B1(j/c) B_{1,chi1}(floor((aj mod c) / c') + 1/2),   c' = c/q1,

which holds because B_{1,chi1}(s + y) does not depend on y in (0, 1), and
every j with chi2(j) != 0 has aj/c' non-integral (q2 divides c').
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import bernoulli
from .characters import CharacterPair
from .cyclotomic import Cyclotomic
from .modgroup import GammaMatrix, complete_bottom_row, gamma_prime, mul

# float64 bincount stays exact while the sum of |2j - c| (at most c^2) is below 2^53
_NUMPY_C_LIMIT = 2**26


@dataclass(frozen=True)
class DedekindSumValue:
    value: Cyclotomic
    pair: CharacterPair
    matrix: GammaMatrix

    @property
    def approx(self) -> complex:
        return self.value.embed()


@dataclass
class CheckReport:
    ok: bool
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def _check_level(pair: CharacterPair, g: GammaMatrix) -> None:
    if g.level != pair.level:
        raise ValueError(f"level mismatch: matrix level {g.level}, pair level {pair.level}")


def _normalize(g: GammaMatrix) -> GammaMatrix:
    # -I acts trivially and psi(-1) = 1, so S(-g) = S(g)
    return -g if g.c < 0 else g


def _twisted_table(pair: CharacterPair) -> tuple[list[list[int]], int]:
    """Power-basis numerators of B_{1,chi1}(s + 1/2) for s mod q1, with a common denominator."""
    vals = [bernoulli.b1_chi(pair.chi1, Fraction(2 * s + 1, 2)) for s in range(pair.q1)]
    den = math.lcm(*(v.denominator for v in vals))
    return [[x * (den // v.denominator) for x in v.numerators] for v in vals], den


def _collapsed_sum(pair: CharacterPair, a: int, c: int) -> Cyclotomic:
    q1, q2 = pair.q1, pair.q2
    chi1, chi2 = pair.chi1, pair.chi2
    o1, o2, m = chi1.order, chi2.order, pair.value_order
    cp = c // q1
    table, tden = _twisted_table(pair)

    # weights[e2][s] = sum of (2j - c) over j with conj(chi2)(j) = zeta_o2^e2 and floor((aj mod c)/c') = s
    if c < _NUMPY_C_LIMIT:
        logs = np.array([-1 if chi2.log(r) is None else (-chi2.log(r)) % o2 for r in range(q2)])
        j = np.arange(1, c, dtype=np.int64)
        e2 = logs[j % q2]
        keep = e2 >= 0
        j, e2 = j[keep], e2[keep]
        s = (a % c) * j % c // cp
        w = np.bincount(e2 * q1 + s, weights=(2 * j - c).astype(np.float64), minlength=o2 * q1)
        weights = np.rint(w).astype(np.int64).reshape(o2, q1).tolist()
    else:
        weights = [[0] * q1 for _ in range(o2)]
        for jj in range(1, c):
            k = chi2.log(jj)
            if k is None:
                continue
            weights[(-k) % o2][(a * jj % c) // cp] += 2 * jj - c

    vec = [0] * m
    s1, s2 = m // o1, m // o2
    for e in range(o2):
        row = weights[e]
        for s in range(q1):
            w = row[s]
            if not w:
                continue
            for k, t in enumerate(table[s]):
                if t:
                    vec[(e * s2 + k * s1) % m] += w * t
    return Cyclotomic.from_exponents(m, vec, 2 * c * tden)


def dedekind_sum(pair: CharacterPair, g: GammaMatrix) -> DedekindSumValue:
    """Exact S_{chi1,chi2}(g) in Q(zeta_m), m = pair.value_order.

    c = 0 gives 0 and c < 0 is evaluated at -g.
    """
    _check_level(pair, g)
    h = _normalize(g)
    if h.c == 0:
        value = Cyclotomic.zero(pair.value_order)
    else:
        value = _collapsed_sum(pair, h.a, h.c)
    return DedekindSumValue(value, pair, g)


def dedekind_sum_direct(pair: CharacterPair, g: GammaMatrix) -> Cyclotomic:
    """The literal double sum, term by term in exact rationals. O(c * q1); for checking."""
    _check_level(pair, g)
    h = _normalize(g)
    m = pair.value_order
    if h.c == 0:
        return Cyclotomic.zero(m)
    a, c, q1 = h.a, h.c, pair.q1
    chi1, chi2 = pair.chi1, pair.chi2
    acc = [Fraction(0)] * m
    for j in range(c):
        k2 = chi2.log(j)
        if k2 is None:
            continue
        bj = bernoulli.b1(Fraction(j, c))
        for n in range(q1):
            k1 = chi1.log(n)
            if k1 is None:
                continue
            e = (-k2 * (m // chi2.order) - k1 * (m // chi1.order)) % m
            acc[e] += bj * bernoulli.b1(Fraction(n, q1) + Fraction(a * j, c))
    den = math.lcm(*(x.denominator for x in acc))
    return Cyclotomic.from_exponents(m, [int(x * den) for x in acc], den)


def cocycle_defect(pair: CharacterPair, g1: GammaMatrix, g2: GammaMatrix) -> Cyclotomic:
    """S(g1 g2) - S(g1) - psi(g1) S(g2); zero for a crossed homomorphism."""
    _check_level(pair, g1)
    _check_level(pair, g2)
    s12 = dedekind_sum(pair, mul(g1, g2)).value
    s1 = dedekind_sum(pair, g1).value
    s2 = dedekind_sum(pair, g2).value
    return s12 - s1 - pair.psi(g1.d) * s2


def fricke_value(pair: CharacterPair) -> Cyclotomic:
    """S_{chi1,chi2}(omega) in algebraic form: B_{1,chi1}(0) B_{1,chi2}(0) for odd pairs, 0 for even."""
    if pair.parity == 1:
        return Cyclotomic.zero(pair.value_order)
    return bernoulli.b1_chi(pair.chi1, 0) * bernoulli.b1_chi(pair.chi2, 0)


def reciprocity_defect(pair: CharacterPair, g: GammaMatrix) -> Cyclotomic:
    """Deviation from the reciprocity law relating S_{chi1,chi2}(g) and S_{chi2,chi1}(g')."""
    _check_level(pair, g)
    swapped = pair.swapped()
    s = dedekind_sum(pair, g).value
    s_prime = dedekind_sum(swapped, gamma_prime(g)).value
    if pair.parity == 1:
        return s - s_prime
    return s + s_prime - (1 - pair.psi(g.d)) * fricke_value(pair)


def bottom_row_dependence_check(pair: CharacterPair, c: int, d: int, shift: int = 1) -> CheckReport:
    """Compare S on the canonical lift of (c, d) and on its left translate by T^shift."""
    g = complete_bottom_row(c, d, pair.level)
    h = GammaMatrix(g.a + shift * g.c, g.b + shift * g.d, g.c, g.d, g.level)
    v1 = dedekind_sum(pair, g).value
    v2 = dedekind_sum(pair, h).value
    return CheckReport(
        v1 == v2,
        {"c": c, "d": d, "lifts": [g.to_json(), h.to_json()], "values": [v1.to_json(), v2.to_json()]},
    )
