"""Verification campaigns over all admissible pairs up to a level bound.

Each suite splits into one task per pair (or per character); tasks are pure
functions of picklable arguments, so they can fan out to a process pool.
Results come back in input order regardless of completion order.
"""

from __future__ import annotations

import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import oracle
from .characters import CharacterPair, DirichletCharacter, admissible_pairs, enumerate_characters
from .cyclotomic import Cyclotomic
from .dedekind import (
    bottom_row_dependence_check,
    cocycle_defect,
    dedekind_sum,
    fricke_value,
    reciprocity_defect,
)
from .modgroup import random_gamma0, translation

SUITES = (
    "oracle",
    "cocycle",
    "reciprocity",
    "fricke",
    "lvalue",
    "automorphy",
    "hecke",
    "eichler",
    "structure",
    "bottomrow",
    "charsum",
)


@dataclass
class SuiteResult:
    suite: str
    records: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def cases(self) -> int:
        return sum(r["cases"] for r in self.records)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("DEDESUM_THREADS", "1")))
    except ValueError:
        return 1


def _fan_out(fn, tasks, workers):
    if workers <= 1 or len(tasks) <= 1:
        return [fn(*t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_star, [(fn, t) for t in tasks]))


def _star(item):
    fn, args = item
    return fn(*args)


def _pair(labels) -> CharacterPair:
    return CharacterPair.from_labels(*labels)


def _rng(seed, suite, labels, i) -> random.Random:
    return random.Random(f"{seed}:{suite}:{labels[0]}:{labels[1]}:{i}")


def _exact_failure(case, actual: Cyclotomic, expected: Cyclotomic | int = 0) -> dict:
    diff = actual - expected
    exp = expected if isinstance(expected, Cyclotomic) else Cyclotomic.rational(expected)
    return {
        "case": case,
        "expected": exp.to_json(),
        "actual": actual.to_json(),
        "delta": abs(diff.embed()),
    }


def _numeric_failure(case, expected: complex, actual: complex) -> dict:
    return {
        "case": case,
        "expected": [expected.real, expected.imag],
        "actual": [actual.real, actual.imag],
        "delta": abs(expected - actual),
    }


def _record(suite, labels, cases, failures, **extra) -> dict:
    rec = {"suite": suite, "pair": list(labels), "cases": cases, "failures": len(failures)}
    rec.update(extra)
    return rec


# -- per-pair tasks ---------------------------------------------------------


def oracle_task(labels, samples, seed, c_factor, tolerance):
    pair = _pair(labels)
    N = pair.level
    failures, worst = [], 0.0
    for i in range(samples):
        g = random_gamma0(N, c_factor * N, None, _rng(seed, "oracle", labels, i))
        exact = dedekind_sum(pair, g).approx
        numeric = oracle.s_numeric(pair, g, M=math.ceil(oracle.HEIGHT_FACTOR * abs(g.c)))
        delta = abs(exact - numeric)
        worst = max(worst, delta)
        if not delta <= tolerance:
            failures.append(_numeric_failure({"pair": list(labels), "matrix": g.to_json()}, numeric, exact))
    return _record("oracle", labels, samples, failures, max_delta=worst), failures


def cocycle_task(labels, samples, seed, c_factor):
    pair = _pair(labels)
    N = pair.level
    failures = []
    for i in range(samples):
        rng = _rng(seed, "cocycle", labels, i)
        g1 = random_gamma0(N, c_factor * N, None, rng)
        g2 = random_gamma0(N, c_factor * N, None, rng)
        defect = cocycle_defect(pair, g1, g2)
        if not defect.is_zero():
            failures.append(_exact_failure({"pair": list(labels), "g1": g1.to_json(), "g2": g2.to_json()}, defect))
    return _record("cocycle", labels, samples, failures), failures


def reciprocity_task(labels, samples, seed, c_factor):
    pair = _pair(labels)
    N = pair.level
    failures = []
    for i in range(samples):
        g = random_gamma0(N, c_factor * N, None, _rng(seed, "reciprocity", labels, i))
        defect = reciprocity_defect(pair, g)
        if not defect.is_zero():
            failures.append(_exact_failure({"pair": list(labels), "matrix": g.to_json()}, defect))
    return _record("reciprocity", labels, samples, failures, parity=pair.parity), failures


def fricke_task(labels, tolerance):
    pair = _pair(labels)
    exact = fricke_value(pair)
    numeric = oracle.fricke_s_numeric(pair)
    failures = []
    delta = abs(numeric - exact.embed())
    if not delta <= tolerance:
        failures.append(_numeric_failure({"pair": list(labels)}, exact.embed(), numeric))
    if pair.parity == 1 and not exact.is_zero():
        failures.append(_exact_failure({"pair": list(labels), "check": "even pair vanishes"}, exact))
    return _record("fricke", labels, 1, failures, delta=delta, value=exact.to_json()), failures


def automorphy_task(labels, samples, seed, c_factor, tolerance):
    pair = _pair(labels)
    N = pair.level
    z = (Fraction(0), Fraction(1, N))
    failures, worst = [], 0.0
    for i in range(samples):
        g = random_gamma0(N, c_factor * N, None, _rng(seed, "automorphy", labels, i))
        gz = oracle.mobius_exact(g, z)
        M = oracle.default_truncation(z, gz)
        lhs = oracle.e_star_value(pair, gz, M)
        rhs = pair.psi(g.d).embed() * oracle.e_star_value(pair, z, M)
        delta = abs(lhs - rhs)
        worst = max(worst, delta)
        if not delta <= tolerance:
            failures.append(_numeric_failure({"pair": list(labels), "matrix": g.to_json(), "M": M}, rhs, lhs))
    return _record("automorphy", labels, samples, failures, max_delta=worst), failures


def hecke_task(labels, bound):
    pair = _pair(labels)
    coeffs = [None] + [oracle.coeff_exact(pair, n) for n in range(1, bound + 1)]
    failures, cases = [], 0
    for m in range(2, bound + 1):
        for n in range(m + 1, bound // m + 1):
            if math.gcd(m, n) != 1:
                continue
            cases += 1
            defect = coeffs[m * n] - coeffs[m] * coeffs[n]
            if not defect.is_zero():
                failures.append(_exact_failure({"pair": list(labels), "m": m, "n": n}, defect))
    return _record("hecke", labels, cases, failures), failures


def eichler_task(labels, bound):
    pair = _pair(labels)
    report = oracle.eichler_shimura_check(pair, bound)
    failures = [
        {"case": {"pair": list(labels), "n": b["n"]}, "expected": b["rhs"], "actual": b["lhs"], "delta": None}
        for b in report.detail["mismatches"]
    ]
    return _record("eichler", labels, bound, failures), failures


def structure_task(labels, samples, seed, c_factor):
    """S(T^n) = 0, S(-g) = S(g), bottom-row independence, conjugation symmetry."""
    pair = _pair(labels)
    cpair = pair.conj()
    N = pair.level
    failures, cases = [], 0

    def check(case, actual, expected=0):
        nonlocal cases
        cases += 1
        if actual != expected:
            failures.append(_exact_failure(case, actual, expected))

    for n in (-3, 1, 7):
        check({"pair": list(labels), "translation": n}, dedekind_sum(pair, translation(n, N)).value)
    for i in range(samples):
        # same matrices as the oracle suite at equal seed
        g = random_gamma0(N, c_factor * N, None, _rng(seed, "oracle", labels, i))
        s = dedekind_sum(pair, g).value
        case = {"pair": list(labels), "matrix": g.to_json()}
        check({**case, "check": "S(-g)"}, dedekind_sum(pair, -g).value, s)
        report = bottom_row_dependence_check(pair, g.c, g.d, shift=1 + i % 5)
        v1, v2 = (Cyclotomic.from_json(v) for v in report.detail["values"])
        check({**case, "check": "bottom row"}, v2, v1)
        check({**case, "check": "conjugation"}, dedekind_sum(cpair, g).value.conj(), s)
    return _record("structure", labels, cases, failures), failures


def bottomrow_task(labels, samples, seed, c_factor):
    pair = _pair(labels)
    N = pair.level
    failures = []
    for i in range(samples):
        rng = _rng(seed, "bottomrow", labels, i)
        g = random_gamma0(N, c_factor * N, None, rng)
        report = bottom_row_dependence_check(pair, g.c, g.d, shift=rng.randint(-50, 50) or 1)
        if not report.ok:
            v1, v2 = (Cyclotomic.from_json(v) for v in report.detail["values"])
            failures.append(_exact_failure({"pair": list(labels), "c": g.c, "d": g.d}, v2, v1))
    return _record("bottomrow", labels, samples, failures), failures


# -- per-character tasks ----------------------------------------------------


def lvalue_task(label, M, tolerance):
    chi = DirichletCharacter.from_label(label)
    series_value = oracle.l_one(chi, M)
    closed = oracle.l_one_closed(chi)
    delta = abs(series_value - closed)
    failures = []
    if not delta <= tolerance:
        failures.append(_numeric_failure({"chi": label}, closed, series_value))
    rec = {"suite": "lvalue", "chi": label, "cases": 1, "failures": len(failures), "delta": delta}
    return rec, failures


def charsum_task(label, max_c):
    """sum_{j mod c} conj(chi)(j) e(alj/c) = 0 whenever q | c, (a, c) = 1 and l is nonzero mod c/q."""
    chi = DirichletCharacter.from_label(label)
    q, o = chi.modulus, chi.order
    failures, cases = [], 0
    for c in range(q, max_c + 1, q):
        L = math.lcm(o, c)
        for a in range(c):
            if math.gcd(a, c) != 1:
                continue
            for l in range(c):
                if l % (c // q) == 0:
                    continue
                cases += 1
                vec = [0] * L
                for j in range(c):
                    k = chi.log(j)
                    if k is not None:
                        vec[((-k) * (L // o) + a * l * j * (L // c)) % L] += 1
                total = Cyclotomic.from_exponents(L, vec)
                if not total.is_zero():
                    failures.append(_exact_failure({"chi": label, "a": a, "c": c, "l": l}, total))
    rec = {"suite": "charsum", "chi": label, "cases": cases, "failures": len(failures)}
    return rec, failures


# -- suite drivers ----------------------------------------------------------


def _collect(suite, outputs) -> SuiteResult:
    res = SuiteResult(suite)
    for rec, fails in outputs:
        res.records.append(rec)
        res.failures.extend(fails)
    return res


def _pair_labels(max_level):
    return [p.labels for p in admissible_pairs(max_level)]


def _primitive_labels(max_modulus, parity=None):
    out = []
    for q in range(3, max_modulus + 1):
        for chi in enumerate_characters(q, primitive_only=True):
            if parity is None or chi.parity == parity:
                out.append(chi.label)
    return out


def run_suite(suite: str, *, max_level: int, samples: int, seed, tolerance: float,
              c_factor: int, workers: int = 1, **opts) -> SuiteResult:
    """Run one named suite; ``opts`` carries suite-specific knobs (bounds, M)."""
    labels = _pair_labels(max_level)
    if suite == "oracle":
        tasks = [(l, samples, seed, c_factor, tolerance) for l in labels]
        fn = oracle_task
    elif suite == "cocycle":
        tasks = [(l, samples, seed, c_factor) for l in labels]
        fn = cocycle_task
    elif suite == "reciprocity":
        tasks = [(l, samples, seed, c_factor) for l in labels]
        fn = reciprocity_task
    elif suite == "fricke":
        tasks = [(l, tolerance) for l in labels]
        fn = fricke_task
    elif suite == "automorphy":
        tasks = [(l, samples, seed, c_factor, tolerance) for l in labels]
        fn = automorphy_task
    elif suite == "hecke":
        tasks = [(l, opts.get("bound", 500)) for l in labels]
        fn = hecke_task
    elif suite == "eichler":
        tasks = [(l, opts.get("bound", 500)) for l in labels]
        fn = eichler_task
    elif suite == "structure":
        tasks = [(l, samples, seed, c_factor) for l in labels]
        fn = structure_task
    elif suite == "bottomrow":
        tasks = [(l, samples, seed, c_factor) for l in labels]
        fn = bottomrow_task
    elif suite == "lvalue":
        tasks = [(l, opts.get("M", 100_000), tolerance) for l in _primitive_labels(opts.get("max_modulus", 50), -1)]
        fn = lvalue_task
    elif suite == "charsum":
        max_c = opts.get("max_c", 36)
        tasks = [(l, max_c) for l in _primitive_labels(max_c)]
        fn = charsum_task
    else:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)} or all")
    return _collect(suite, _fan_out(fn, tasks, workers))
