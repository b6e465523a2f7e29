"""Dirichlet characters with exact cyclotomic values, and Gauss sums.

A character mod q is labelled ``"q:e1,e2,..."``: the exponent tuple with
respect to the generators returned by :func:`unit_group_generators`, so that
chi(g_i) = zeta_{o_i}^{e_i}.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

from .cyclotomic import Cyclotomic, root_of_unity

MAX_MODULUS = 10_000


class InadmissiblePairError(ValueError):
    """The pair violates a standing hypothesis (primitivity, q > 1, or chi1*chi2(-1) = 1)."""


def factorize(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def _multiplicative_order(g: int, q: int) -> int:
    k, x = 1, g % q
    while x != 1:
        x = x * g % q
        k += 1
    return k


def _primitive_root(pk: int, phi: int) -> int:
    for g in range(2, pk):
        if math.gcd(g, pk) == 1 and _multiplicative_order(g, pk) == phi:
            return g
    raise ArithmeticError(f"no primitive root mod {pk}")


def _crt_lift(x: int, pk: int, q: int) -> int:
    """The residue mod q that is x mod pk and 1 mod q/pk."""
    rest = q // pk
    if rest == 1:
        return x % q
    # x + pk * t = 1 (mod rest)
    t = (1 - x) * pow(pk, -1, rest) % rest
    return (x + pk * t) % q


@lru_cache(maxsize=None)
def unit_group_generators(q: int) -> tuple[tuple[int, int], ...]:
    """Generators of (Z/q)^* with their orders, one block per prime power.

    Odd p^k contributes its least primitive root, 4 contributes (3, 2) and
    2^k with k >= 3 contributes (2^k - 1, 2), (5, 2^(k-2)). Each generator is
    lifted by CRT to be 1 modulo the other prime-power factors.
    """
    if q < 1:
        raise ValueError(f"modulus must be positive, got {q}")
    gens = []
    for p, k in factorize(q):
        pk = p**k
        if p == 2:
            if k == 1:
                continue
            if k == 2:
                local = [(3, 2)]
            else:
                local = [(pk - 1, 2), (5, 2 ** (k - 2))]
        else:
            phi = pk - pk // p
            local = [(_primitive_root(pk, phi), phi)]
        gens.extend((_crt_lift(g, pk, q), o) for g, o in local)
    return tuple(gens)


@lru_cache(maxsize=None)
def _dlog_table(q: int) -> dict[int, tuple[int, ...]]:
    """Residue -> exponent tuple in the generator basis, for every unit mod q."""
    if q > MAX_MODULUS:
        raise ValueError(f"modulus {q} exceeds the cap {MAX_MODULUS}")
    gens = unit_group_generators(q)
    table = {}
    for exps in itertools.product(*(range(o) for _, o in gens)):
        x = 1
        for (g, _), e in zip(gens, exps):
            x = x * pow(g, e, q) % q
        table[x] = exps
    if q == 1:
        table = {0: ()}
    return table


class DirichletCharacter:
    """A Dirichlet character mod q given by its exponent tuple.

    ``log(n)`` returns k with chi(n) = zeta_order^k, or None when gcd(n, q) > 1.
    """

    def __init__(self, modulus: int, exponents=()):
        if modulus < 1:
            raise ValueError(f"modulus must be positive, got {modulus}")
        gens = unit_group_generators(modulus)
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) != len(gens):
            raise ValueError(
                f"modulus {modulus} has {len(gens)} generators, got {len(exponents)} exponents"
            )
        self.modulus = modulus
        self.generator_basis = gens
        self.exponents = tuple(e % o for e, (_, o) in zip(exponents, gens))
        self.order = math.lcm(1, *(o // math.gcd(o, e) for e, (_, o) in zip(self.exponents, gens)))
        # exponent of chi(n) in zeta_order
        logs = [None] * modulus
        weights = [e * self.order // o for e, (_, o) in zip(self.exponents, gens)]
        for r, exps in _dlog_table(modulus).items():
            logs[r] = sum(w * x for w, x in zip(weights, exps)) % self.order
        self._logs = tuple(logs)
        self.parity = 1 if self.log(-1) == 0 else -1

    @classmethod
    def from_label(cls, label: str) -> "DirichletCharacter":
        try:
            q, _, rest = label.partition(":")
            exps = [int(e) for e in rest.split(",") if e.strip()]
            return cls(int(q), exps)
        except ValueError as exc:
            raise ValueError(f"bad character label {label!r}: {exc}") from None

    @property
    def label(self) -> str:
        return f"{self.modulus}:" + ",".join(str(e) for e in self.exponents)

    def log(self, n: int):
        return self._logs[n % self.modulus]

    def __call__(self, n: int) -> Cyclotomic:
        return self.eval(n)

    def eval(self, n: int) -> Cyclotomic:
        k = self.log(n)
        if k is None:
            return Cyclotomic.zero()
        return root_of_unity(self.order, k)

    def conj(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, [-e for e in self.exponents])

    def is_principal(self) -> bool:
        return self.order == 1

    @property
    def conductor(self) -> int:
        return conductor(self)

    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def values_complex(self) -> list[complex]:
        """chi(n) for n = 0..q-1 in double precision."""
        import cmath

        return [
            0j if k is None else cmath.exp(2j * cmath.pi * k / self.order)
            for k in self._logs
        ]

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "label": self.label,
            "order": self.order,
            "parity": self.parity,
            "conductor": self.conductor,
        }

    def __eq__(self, other):
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return (self.modulus, self.exponents) == (other.modulus, other.exponents)

    def __hash__(self):
        return hash((self.modulus, self.exponents))

    def __repr__(self):
        return f"DirichletCharacter({self.label!r})"

    def __reduce__(self):
        return (DirichletCharacter, (self.modulus, self.exponents))


def conductor(chi: DirichletCharacter) -> int:
    q = chi.modulus
    for f in range(1, q + 1):
        if q % f:
            continue
        if all(
            chi.log(n) == 0
            for n in range(1 + f, q + 1, f)
            if math.gcd(n, q) == 1
        ):
            return f
    return q


def enumerate_characters(q: int, primitive_only: bool = False) -> list[DirichletCharacter]:
    if q < 1:
        raise ValueError(f"modulus must be positive, got {q}")
    gens = unit_group_generators(q)
    chars = [DirichletCharacter(q, e) for e in itertools.product(*(range(o) for _, o in gens))]
    if primitive_only:
        chars = [chi for chi in chars if chi.is_primitive()]
    return chars


def gauss_sum(chi: DirichletCharacter) -> Cyclotomic:
    """tau(chi) = sum_{n mod q} chi(n) e(n/q), exact in Q(zeta_lcm(order, q))."""
    q = chi.modulus
    L = math.lcm(chi.order, q)
    a, b = L // chi.order, L // q
    vec = [0] * L
    for n in range(q):
        k = chi.log(n)
        if k is not None:
            vec[(k * a + n * b) % L] += 1
    return Cyclotomic.from_exponents(L, vec)


class CharacterPair:
    """An admissible pair (chi1, chi2): both primitive, q1, q2 > 1, chi1*chi2(-1) = 1."""

    def __init__(self, chi1: DirichletCharacter, chi2: DirichletCharacter):
        for name, chi in (("chi1", chi1), ("chi2", chi2)):
            if chi.modulus <= 1:
                raise InadmissiblePairError(f"{name} has modulus {chi.modulus}; need q > 1")
            if not chi.is_primitive():
                raise InadmissiblePairError(
                    f"{name} = {chi.label} is not primitive (conductor {chi.conductor})"
                )
        if chi1.parity * chi2.parity != 1:
            raise InadmissiblePairError(
                f"pair ({chi1.label}, {chi2.label}) violates the hypothesis chi1*chi2(-1) = 1"
            )
        self.chi1 = chi1
        self.chi2 = chi2
        self.q1 = chi1.modulus
        self.q2 = chi2.modulus
        self.level = self.q1 * self.q2
        self.value_order = math.lcm(chi1.order, chi2.order)

    @classmethod
    def from_labels(cls, label1: str, label2: str) -> "CharacterPair":
        return cls(DirichletCharacter.from_label(label1), DirichletCharacter.from_label(label2))

    @property
    def parity(self) -> int:
        return self.chi1.parity

    def swapped(self) -> "CharacterPair":
        return CharacterPair(self.chi2, self.chi1)

    def conj(self) -> "CharacterPair":
        return CharacterPair(self.chi1.conj(), self.chi2.conj())

    def psi_log(self, d: int):
        """Exponent k with psi(d) = zeta_{value_order}^k, or None if gcd(d, N) > 1."""
        k1, k2 = self.chi1.log(d), self.chi2.log(d)
        if k1 is None or k2 is None:
            return None
        m = self.value_order
        return (k1 * (m // self.chi1.order) - k2 * (m // self.chi2.order)) % m

    def psi(self, d: int) -> Cyclotomic:
        k = self.psi_log(d)
        if k is None:
            return Cyclotomic.zero()
        return root_of_unity(self.value_order, k)

    @property
    def labels(self) -> tuple[str, str]:
        return (self.chi1.label, self.chi2.label)

    def __eq__(self, other):
        if not isinstance(other, CharacterPair):
            return NotImplemented
        return (self.chi1, self.chi2) == (other.chi1, other.chi2)

    def __hash__(self):
        return hash((self.chi1, self.chi2))

    def __repr__(self):
        return f"CharacterPair({self.chi1.label!r}, {self.chi2.label!r})"

    def __reduce__(self):
        return (CharacterPair, (self.chi1, self.chi2))


def psi_eval(pair: CharacterPair, d: int) -> Cyclotomic:
    return pair.psi(d)


def admissible_pairs(max_level: int) -> list[CharacterPair]:
    """Every admissible primitive pair with q1 * q2 <= max_level, in label order."""
    prim = {q: enumerate_characters(q, primitive_only=True) for q in range(3, max_level // 3 + 1)}
    pairs = []
    for q1 in sorted(prim):
        for q2 in sorted(prim):
            if q1 * q2 > max_level:
                continue
            for chi1 in prim[q1]:
                for chi2 in prim[q2]:
                    if chi1.parity == chi2.parity:
                        pairs.append(CharacterPair(chi1, chi2))
    return pairs
