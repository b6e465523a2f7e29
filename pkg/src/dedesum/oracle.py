"""Floating-point verification channel built on Fourier expansions at s = 1.

Nothing here feeds the exact side. The holomorphic piece is

    f(z) = sum_{n>=1} (c_n / n) e(nz),   c_n = sum_{ab=n} chi1(a) conj(chi2)(b) b,

and the Dedekind sum is recovered as tau(conj chi1)/(pi i) * (f(gz) - psi(g) f(z)).
Points are given either as complex numbers or as (x, y) pairs of rationals;
the latter keep the phases e(n x) exact for large n.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .bernoulli import b1_chi
from .characters import CharacterPair, DirichletCharacter, gauss_sum
from .cyclotomic import Cyclotomic
from .dedekind import CheckReport
from .modgroup import GammaMatrix

# truncation M = ceil(HEIGHT_FACTOR / min height) puts the series tail near e^{-12 pi}
HEIGHT_FACTOR = 6


class EisensteinSeries:
    """Truncated q-expansion of f_{chi1,chi2}: coefficients c_n for 1 <= n <= M."""

    def __init__(self, pair: CharacterPair, truncation: int):
        if truncation < 1:
            raise ValueError("truncation must be positive")
        self.pair = pair
        self.truncation = truncation
        self.coeffs = _divisor_coefficients(pair, truncation)

    def f(self, z, M: int | None = None) -> complex:
        M = self.truncation if M is None else M
        if M > self.truncation:
            raise ValueError(f"requested {M} terms from a series truncated at {self.truncation}")
        n = np.arange(1, M + 1)
        return complex(np.sum(self.coeffs[1 : M + 1] / n * _exp_nz(n, z)))

    def e2_coefficients(self) -> np.ndarray:
        """q-coefficients of the weight-2 series, 2 n^{1/2} lambda(n, 1) = 2 c_n."""
        return 2 * self.coeffs[1:]


def _divisor_coefficients(pair: CharacterPair, M: int) -> np.ndarray:
    # Dirichlet convolution by the hyperbola trick: 2 sqrt(M) vectorized passes
    q1, q2 = pair.q1, pair.q2
    idx = np.arange(M + 1)
    x1 = np.array(pair.chi1.values_complex())[idx % q1]
    g = np.conj(np.array(pair.chi2.values_complex()))[idx % q2] * idx
    out = np.zeros(M + 1, dtype=complex)
    r = math.isqrt(M)
    for a in range(1, r + 1):
        if x1[a] != 0:
            top = M // a
            out[a : a * top + 1 : a] += x1[a] * g[1 : top + 1]
    for b in range(1, r + 1):
        top = M // b
        if g[b] != 0 and top > r:
            out[b * (r + 1) : b * top + 1 : b] += x1[r + 1 : top + 1] * g[b]
    return out


@lru_cache(maxsize=16)
def _series(pair: CharacterPair, size: int) -> EisensteinSeries:
    return EisensteinSeries(pair, size)


def series(pair: CharacterPair, M: int) -> EisensteinSeries:
    """A cached series with at least M terms (sizes are rounded up to powers of two)."""
    size = 1 << max(6, (M - 1).bit_length())
    return _series(pair, size)


def _exp_nz(n: np.ndarray, z) -> np.ndarray:
    if isinstance(z, tuple):
        x, y = Fraction(z[0]), float(z[1])
        p, q = x.numerator, x.denominator
        phase = (n * (p % q)) % q / q if q < 2**31 else np.mod(n * float(x), 1.0)
        return np.exp(2j * np.pi * phase) * np.exp(-2 * np.pi * n * y)
    z = complex(z)
    if z.imag <= 0:
        raise ValueError(f"point {z} is not in the upper half plane")
    phase = np.mod(n * z.real, 1.0)
    return np.exp(2j * np.pi * phase) * np.exp(-2 * np.pi * n * z.imag)


def _height(z) -> float:
    y = float(z[1]) if isinstance(z, tuple) else complex(z).imag
    if y <= 0:
        raise ValueError("point is not in the upper half plane")
    return y


def default_truncation(*points) -> int:
    return math.ceil(HEIGHT_FACTOR / min(_height(z) for z in points))


def tail_bound(M: int, y: float) -> float:
    """Bound on sum_{n>M} d(n) e^{-2 pi n y}, using d(n) <= 2 sqrt(n)."""
    r = math.exp(-2 * math.pi * y)
    rho = r * math.sqrt(1 + 1 / M)
    if rho >= 1:
        return math.inf
    return 2 * math.sqrt(M + 1) * r ** (M + 1) / (1 - rho)


def mobius_exact(g: GammaMatrix, z: tuple) -> tuple[Fraction, Fraction]:
    """g z for z = x + iy with rational x, y, returned exactly."""
    x, y = Fraction(z[0]), Fraction(z[1])
    cx_d = g.c * x + g.d
    den = cx_d * cx_d + (g.c * y) ** 2
    return ((g.a * x + g.b) * cx_d + g.a * g.c * y * y) / den, y / den


def coeff_exact(pair: CharacterPair, n: int) -> Cyclotomic:
    """c_n = sum_{ab=n} chi1(a) conj(chi2)(b) b, exact."""
    return _divisor_sum_exact(pair, n, lambda a, b: b)


def f_coeff_exact(pair: CharacterPair, n: int) -> Cyclotomic:
    """n-th q-coefficient of f from its double-series form: sum_{ab=n} chi1(a) conj(chi2)(b) / a."""
    return _divisor_sum_exact(pair, n, lambda a, b: Fraction(1, a))


def _divisor_sum_exact(pair: CharacterPair, n: int, weight) -> Cyclotomic:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    m = pair.value_order
    s1, s2 = m // pair.chi1.order, m // pair.chi2.order
    acc = [Fraction(0)] * m
    for a in range(1, n + 1):
        if n % a:
            continue
        b = n // a
        k1, k2 = pair.chi1.log(a), pair.chi2.log(b)
        if k1 is None or k2 is None:
            continue
        acc[(k1 * s1 - k2 * s2) % m] += Fraction(weight(a, b))
    den = math.lcm(*(x.denominator for x in acc))
    return Cyclotomic.from_exponents(m, [int(x * den) for x in acc], den)


def f_value(pair: CharacterPair, z, M: int) -> complex:
    return series(pair, M).f(z, M)


def e_star_value(pair: CharacterPair, z, M: int) -> complex:
    """E*(z, 1) = f_{chi1,chi2}(z) + chi2(-1) conj(f_{conj chi1, conj chi2}(z))."""
    return f_value(pair, z, M) + pair.chi2.parity * f_value(pair.conj(), z, M).conjugate()


def _psi_complex(pair: CharacterPair, d: int) -> complex:
    return pair.psi(d).embed()


def phi_numeric(pair: CharacterPair, g: GammaMatrix, M: int | None = None, height: Fraction = Fraction(1)) -> complex:
    """f(gz) - psi(g) f(z) at z = -d/c + i*height/|c|.

    height = 1 is the balanced point where z and gz both sit at 1/|c|.
    """
    if g.c == 0:
        raise ValueError("phi_numeric needs c != 0; phi vanishes on translations")
    if g.level != pair.level:
        raise ValueError(f"level mismatch: matrix level {g.level}, pair level {pair.level}")
    z = (Fraction(-g.d, g.c), Fraction(height) / abs(g.c))
    gz = mobius_exact(g, z)
    if M is None:
        M = default_truncation(z, gz)
    s = series(pair, M)
    return s.f(gz, M) - _psi_complex(pair, g.d) * s.f(z, M)


def s_numeric(pair: CharacterPair, g: GammaMatrix, M: int | None = None, height: Fraction = Fraction(1)) -> complex:
    """tau(conj chi1)/(pi i) * phi, the numeric Dedekind sum."""
    tau = gauss_sum(pair.chi1.conj()).embed()
    return tau / (math.pi * 1j) * phi_numeric(pair, g, M, height)


def fricke_delta(pair: CharacterPair) -> complex:
    """delta = chi2(-1) tau(chi1) q2 / (tau(chi2) q1)."""
    t1 = gauss_sum(pair.chi1).embed()
    t2 = gauss_sum(pair.chi2).embed()
    return pair.chi2.parity * t1 * pair.q2 / (t2 * pair.q1)


def fricke_phi_numeric(pair: CharacterPair, M: int | None = None, t: float = 1.0) -> complex:
    """f_{chi1,chi2}(omega z) - delta f_{chi2,chi1}(z) at z = i t / sqrt(N)."""
    root = math.sqrt(pair.level)
    z = (0, t / root)
    wz = (0, 1 / (t * root))
    if M is None:
        M = default_truncation(z, wz)
    return f_value(pair, wz, M) - fricke_delta(pair) * f_value(pair.swapped(), z, M)


def fricke_s_numeric(pair: CharacterPair, M: int | None = None, t: float = 1.0) -> complex:
    tau = gauss_sum(pair.chi1.conj()).embed()
    return tau / (math.pi * 1j) * fricke_phi_numeric(pair, M, t)


def _periodic_dirichlet_sum(period_values: np.ndarray, M: int) -> complex:
    """sum_{l>=1} a_l / l for a_l periodic of period P with zero mean.

    The partial sum to a multiple of P gets the first Abel-summation tail
    term Abar/M, leaving an error of order P/M^2.
    """
    P = len(period_values)
    M = -(-M // P) * P
    l = np.arange(1, M + 1)
    a = np.tile(period_values, M // P)
    partial = np.sum(a / l)
    mean_partial = np.mean(np.cumsum(period_values))
    return complex(partial + mean_partial / M)


def l_one(chi: DirichletCharacter, M: int = 100_000) -> complex:
    """L(1, chi) from the series, with the Abel tail correction."""
    if chi.is_principal():
        raise ValueError("L(1, chi) diverges for the principal character")
    vals = np.array(chi.values_complex())
    # a_l for l = 1..q
    return _periodic_dirichlet_sum(np.roll(vals, -1), M)


def l_one_closed(chi: DirichletCharacter) -> complex:
    """L(1, chi) = -pi i B_{1,chi}(0) / tau(conj chi), for odd primitive chi."""
    if chi.parity != -1:
        raise ValueError("closed form via B_{1,chi}(0) needs an odd character")
    return -math.pi * 1j * b1_chi(chi, 0).embed() / gauss_sum(chi.conj()).embed()


def b1_chi_series(chi: DirichletCharacter, x, M: int = 100_000) -> complex:
    """-tau(conj chi)/(2 pi i) * sum_{0<|l|<=M} chi(l)/l e(lx), summed symmetrically."""
    x = Fraction(x)
    q = chi.modulus
    P = q * x.denominator
    l = np.arange(1, P + 1)
    vals = np.array(chi.values_complex())[l % q]
    phase = np.exp(2j * np.pi * ((l * x.numerator) % P) / P)
    # pair l with -l
    a = vals * (phase - chi.parity * np.conj(phase))
    total = _periodic_dirichlet_sum(a, M)
    return -gauss_sum(chi.conj()).embed() / (2j * math.pi) * total


def theta_numeric(chi: DirichletCharacter, a: int, c: int, l: int, u: float, terms: int | None = None) -> complex:
    """theta_chi(a/c + iu, l) = sum_{k>=1} conj(chi)(k) e(k l (a/c + iu))."""
    if l < 1:
        raise ValueError(f"theta series needs l >= 1, got {l}")
    if terms is None:
        terms = math.ceil(40 / (2 * math.pi * l * u))
    k = np.arange(1, terms + 1)
    vals = np.conj(np.array(chi.values_complex()))[k % chi.modulus]
    return complex(np.sum(vals * _exp_nz(k, (Fraction(a * l, c), l * u))))


def theta_limit_numeric(chi: DirichletCharacter, a: int, c: int, l: int, u: float = 1e-3) -> complex:
    """u -> 0+ limit of theta by two rounds of Richardson extrapolation on u, u/2, u/4."""
    t0, t1, t2 = (theta_numeric(chi, a, c, l, u / 2**i) for i in range(3))
    r1, r2 = 2 * t1 - t0, 2 * t2 - t1
    return (4 * r2 - r1) / 3


def hecke_multiplicativity_check(pair: CharacterPair, m: int, n: int) -> CheckReport:
    if math.gcd(m, n) != 1:
        raise ValueError(f"hecke check needs coprime arguments, got ({m}, {n})")
    lhs = coeff_exact(pair, m * n)
    rhs = coeff_exact(pair, m) * coeff_exact(pair, n)
    return CheckReport(lhs == rhs, {"m": m, "n": n, "c_mn": lhs.to_json(), "c_m_c_n": rhs.to_json()})


def eichler_shimura_check(pair: CharacterPair, M: int) -> CheckReport:
    """Coefficients of d/dz (1/(pi i)) f against those of E_2 = 2 sum n^{1/2} lambda(n,1) q^n, n <= M.

    The left side differentiates f's double-series coefficients, 2 n sum chi1(a) conj(chi2)(b)/a;
    the right side is 2 c_n from the divisor sum with weight b.
    """
    bad = []
    for n in range(1, M + 1):
        lhs = f_coeff_exact(pair, n) * (2 * n)
        rhs = coeff_exact(pair, n) * 2
        if lhs != rhs:
            bad.append({"n": n, "lhs": lhs.to_json(), "rhs": rhs.to_json()})
    return CheckReport(not bad, {"M": M, "mismatches": bad})
