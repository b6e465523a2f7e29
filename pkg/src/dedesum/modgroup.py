"""Integer matrices in Gamma_0(N)."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass


@dataclass(frozen=True)
class GammaMatrix:
    a: int
    b: int
    c: int
    d: int
    level: int

    def __post_init__(self):
        if self.level < 1:
            raise ValueError(f"level must be positive, got {self.level}")
        det = self.a * self.d - self.b * self.c
        if det != 1:
            raise ValueError(f"determinant is {det}, not 1")
        if self.c % self.level:
            raise ValueError(f"level {self.level} does not divide c = {self.c}")

    def __mul__(self, other: "GammaMatrix") -> "GammaMatrix":
        return mul(self, other)

    def __neg__(self) -> "GammaMatrix":
        return GammaMatrix(-self.a, -self.b, -self.c, -self.d, self.level)

    def inverse(self) -> "GammaMatrix":
        return GammaMatrix(self.d, -self.b, -self.c, self.a, self.level)

    def act(self, z: complex) -> complex:
        """Moebius action on the upper half plane."""
        return (self.a * z + self.b) / (self.c * z + self.d)

    def to_json(self) -> dict:
        return {
            "a": str(self.a),
            "b": str(self.b),
            "c": str(self.c),
            "d": str(self.d),
            "level": self.level,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GammaMatrix":
        return cls(int(obj["a"]), int(obj["b"]), int(obj["c"]), int(obj["d"]), int(obj["level"]))


def make(a: int, b: int, c: int, d: int, N: int) -> GammaMatrix:
    return GammaMatrix(a, b, c, d, N)


def identity(N: int) -> GammaMatrix:
    return GammaMatrix(1, 0, 0, 1, N)


def translation(n: int, N: int) -> GammaMatrix:
    return GammaMatrix(1, n, 0, 1, N)


def complete_bottom_row(c: int, d: int, N: int) -> GammaMatrix:
    """Canonical lift of a bottom row (c, d): 0 <= a < |c| when c != 0."""
    if c % N:
        raise ValueError(f"level {N} does not divide c = {c}")
    g = math.gcd(c, d)
    if g != 1:
        raise ValueError(f"gcd(c, d) = {g}, not 1")
    if c == 0:
        # d = +-1
        return GammaMatrix(d, 0, 0, d, N)
    a = pow(d, -1, abs(c))
    b = (a * d - 1) // c
    return GammaMatrix(a, b, c, d, N)


def mul(g1: GammaMatrix, g2: GammaMatrix) -> GammaMatrix:
    if g1.level != g2.level:
        raise ValueError(f"level mismatch: {g1.level} vs {g2.level}")
    return GammaMatrix(
        g1.a * g2.a + g1.b * g2.c,
        g1.a * g2.b + g1.b * g2.d,
        g1.c * g2.a + g1.d * g2.c,
        g1.c * g2.b + g1.d * g2.d,
        g1.level,
    )


def gamma_prime(g: GammaMatrix) -> GammaMatrix:
    """The matrix g' with omega g = g' omega, omega the Fricke involution of level N.

    Writing c = c~ N, g' = (d, -c~; -b N, a).
    """
    N = g.level
    return GammaMatrix(g.d, -(g.c // N), -g.b * N, g.a, N)


def fricke_matrix(N: int) -> tuple[int, int, int, int]:
    """omega_N = (0, -1; N, 0); determinant N, so not a GammaMatrix."""
    return (0, -1, N, 0)


def random_gamma0(N: int, c_bound: int, seed, rng: random.Random | None = None) -> GammaMatrix:
    """Sample from Gamma_0(N), deterministic in ``seed``.

    c is a nonzero multiple of N with |c| <= c_bound (random sign), d is
    uniform among residues in [1, |c|] coprime to c, and the row is completed
    canonically.
    """
    if c_bound < N:
        raise ValueError(f"c_bound {c_bound} is smaller than the level {N}")
    rng = rng or random.Random(seed)
    c = N * rng.randint(1, c_bound // N) * rng.choice((1, -1))
    while True:
        d = rng.randint(1, abs(c))
        if math.gcd(c, d) == 1:
            return complete_bottom_row(c, d, N)
