"""The sawtooth B1, the twisted Bernoulli function B_{1,chi}, and the theta limit."""

from __future__ import annotations

import math
from fractions import Fraction

from .characters import DirichletCharacter
from .cyclotomic import Cyclotomic


def b1(x) -> Fraction:
    """First Bernoulli function: x - floor(x) - 1/2 off the integers, 0 on them.

    Only exact rationals are accepted.
    """
    if isinstance(x, float):
        raise TypeError("b1 takes exact rationals, not floats")
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - (x.numerator // x.denominator) - Fraction(1, 2)


def b1_chi(chi: DirichletCharacter, x) -> Cyclotomic:
    """B_{1,chi}(x) = sum_{n=1}^{q-1} conj(chi)(n) B1((x + n)/q), exact."""
    if not chi.is_primitive():
        raise ValueError(f"b1_chi needs a primitive character, got {chi.label}")
    q = chi.modulus
    x = Fraction(x)
    m = chi.order
    # common denominator 2*q*den(x) keeps the accumulation in integers
    den = 2 * q * x.denominator
    vec = [0] * m
    for n in range(1, q):
        k = chi.log(n)
        if k is None:
            continue
        val = b1((x + n) / q)
        vec[(-k) % m] += int(val * den)
    return Cyclotomic.from_exponents(m, vec, den)


def theta_limit(chi: DirichletCharacter, a: int, c: int, l: int) -> Cyclotomic:
    """Limit of theta_chi(a/c + iu, l) as u -> 0+.

    Equals -sum_{j mod c} conj(chi)(j) B1(j/c) e(alj/c), valid when chi is
    primitive mod q, q | c, gcd(a, c) = 1 and l is nonzero mod c/q.
    """
    q = chi.modulus
    if c < 1:
        raise ValueError(f"theta_limit needs c >= 1, got c={c}")
    if not chi.is_primitive():
        raise ValueError(f"theta_limit needs conductor(chi) = q, got {chi.label}")
    if c % q:
        raise ValueError(f"theta_limit needs q | c, got q={q}, c={c}")
    if math.gcd(a, c) != 1:
        raise ValueError(f"theta_limit needs gcd(a, c) = 1, got a={a}, c={c}")
    if l % (c // q) == 0:
        raise ValueError(f"theta_limit needs l nonzero mod c/q = {c // q}, got l={l}")
    m = chi.order
    L = math.lcm(m, c)
    vec = [0] * L
    # B1(j/c) = (2j - c)/(2c) for 0 < j < c
    for j in range(1, c):
        k = chi.log(j)
        if k is None:
            continue
        vec[((-k) * (L // m) + a * l * j * (L // c)) % L] -= 2 * j - c
    return Cyclotomic.from_exponents(L, vec, 2 * c)
