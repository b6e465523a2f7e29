"""Frozen regression fixtures for exact Dedekind sum values.

File layout (``fixtures/dedekind_sums.json``): a JSON array of
``{"pair": [label1, label2], "matrix": {...}, "value": {...}, "approx": [re, im]}``.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .characters import CharacterPair, admissible_pairs
from .cyclotomic import Cyclotomic
from .dedekind import dedekind_sum
from .modgroup import GammaMatrix, complete_bottom_row, identity

DEFAULT_PATH = Path("fixtures") / "dedekind_sums.json"
APPROX_TOLERANCE = 1e-10


def fixture_cases(max_level: int = 20) -> list[tuple[CharacterPair, GammaMatrix]]:
    cases = []
    for pair in admissible_pairs(max_level):
        N = pair.level
        cases.append((pair, identity(N)))
        for c, d in ((N, 1), (N, N - 1), (2 * N, 5), (3 * N, N + 1), (-N, 1)):
            while math.gcd(c, d) != 1:
                d += 1
            cases.append((pair, complete_bottom_row(c, d, N)))
    return cases


def fixture_entry(pair: CharacterPair, g: GammaMatrix) -> dict:
    value = dedekind_sum(pair, g).value
    z = value.embed()
    return {
        "pair": list(pair.labels),
        "matrix": g.to_json(),
        "value": value.to_json(),
        "approx": [z.real, z.imag],
    }


def write_fixtures(path=DEFAULT_PATH, max_level: int = 20) -> list[dict]:
    entries = [fixture_entry(p, g) for p, g in fixture_cases(max_level)]
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(entries, indent=1) + "\n")
    return entries


def check_fixtures(path=DEFAULT_PATH, tolerance: float = APPROX_TOLERANCE) -> tuple[int, list[dict]]:
    """Recompute every entry; exact values must serialize identically."""
    entries = json.loads(Path(path).read_text())
    mismatches = []
    for i, entry in enumerate(entries):
        pair = CharacterPair.from_labels(*entry["pair"])
        g = GammaMatrix.from_json(entry["matrix"])
        fresh = fixture_entry(pair, g)
        stored_approx = complex(*entry["approx"])
        fresh_approx = complex(*fresh["approx"])
        delta = abs(stored_approx - fresh_approx)
        exact_ok = json.dumps(fresh["value"], sort_keys=True) == json.dumps(entry["value"], sort_keys=True)
        if not exact_ok or not delta <= tolerance:
            mismatches.append(
                {
                    "case": {"index": i, "pair": entry["pair"], "matrix": entry["matrix"]},
                    "expected": entry["value"],
                    "actual": fresh["value"],
                    "delta": abs(Cyclotomic.from_json(entry["value"]).embed() - fresh_approx),
                }
            )
    return len(entries), mismatches
