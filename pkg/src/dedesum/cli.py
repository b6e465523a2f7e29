"""Command-line front end.

Machine output is JSON lines on stdout; a human summary goes to stderr.
Exit status is 0 when no failures were recorded, 1 otherwise, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from . import campaigns
from .characters import CharacterPair, DirichletCharacter, enumerate_characters
from .dedekind import dedekind_sum, dedekind_sum_direct
from .fixtures import APPROX_TOLERANCE, DEFAULT_PATH, check_fixtures, write_fixtures
from .modgroup import GammaMatrix, complete_bottom_row

# per-suite defaults: (samples, c_factor, tolerance)
SUITE_DEFAULTS = {
    "oracle": (25, 30, 1e-8),
    "cocycle": (200, 30, 0.0),
    "reciprocity": (200, 30, 0.0),
    "fricke": (0, 1, 1e-9),
    "lvalue": (0, 1, 1e-4),
    "automorphy": (10, 2, 1e-9),
    "hecke": (0, 1, 0.0),
    "eichler": (0, 1, 0.0),
    "structure": (25, 30, 0.0),
    "bottomrow": (50, 30, 0.0),
    "charsum": (0, 1, 0.0),
}


@dataclass
class RunReport:
    command: str
    inputs: dict
    results: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def emit(self, out=None) -> None:
        out = out or sys.stdout
        for rec in self.results:
            out.write(json.dumps({"type": "result", **rec}, sort_keys=True) + "\n")
        for fail in self.failures:
            out.write(json.dumps({"type": "failure", **fail}, sort_keys=True) + "\n")
        summary = {
            "type": "report",
            "command": self.command,
            "inputs": self.inputs,
            "results": len(self.results),
            "failures": len(self.failures),
            "elapsed_ms": self.elapsed_ms,
        }
        out.write(json.dumps(summary, sort_keys=True) + "\n")
        out.flush()


class UsageError(Exception):
    pass


def _ints(text: str, n: int, what: str) -> list[int]:
    try:
        vals = [int(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"{what} must be {n} comma-separated integers, got {text!r}") from None
    if len(vals) != n:
        raise UsageError(f"{what} must be {n} comma-separated integers, got {text!r}")
    return vals


def cmd_chars(args) -> RunReport:
    if args.modulus < 1:
        raise UsageError(f"--modulus must be >= 1, got {args.modulus}")
    report = RunReport("chars", {"modulus": args.modulus, "primitive": args.primitive})
    report.results = [chi.to_json() for chi in enumerate_characters(args.modulus, args.primitive)]
    return report


def cmd_eval(args) -> RunReport:
    try:
        pair = CharacterPair(DirichletCharacter.from_label(args.chi1), DirichletCharacter.from_label(args.chi2))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    N = pair.level
    try:
        if args.matrix:
            g = GammaMatrix(*_ints(args.matrix, 4, "--matrix"), N)
        else:
            g = complete_bottom_row(*_ints(args.bottom, 2, "--bottom"), N)
    except ValueError as exc:
        raise UsageError(f"matrix not in Gamma_0({N}): {exc}") from None
    value = dedekind_sum_direct(pair, g) if args.direct else dedekind_sum(pair, g).value
    z = value.embed()
    report = RunReport(
        "eval",
        {"chi1": args.chi1, "chi2": args.chi2, "matrix": args.matrix, "bottom": args.bottom, "direct": args.direct},
    )
    report.results.append(
        {"pair": list(pair.labels), "matrix": g.to_json(), "value": value.to_json(), "approx": [z.real, z.imag]}
    )
    return report


def cmd_verify(args) -> RunReport:
    suites = campaigns.SUITES if args.suite == "all" else (args.suite,)
    workers = args.workers or campaigns.worker_count()
    inputs = {
        "suite": args.suite,
        "max_level": args.max_level,
        "samples": args.samples,
        "seed": args.seed,
        "tolerance": args.tolerance,
        "c_factor": args.c_factor,
        "bound": args.bound,
    }
    report = RunReport("verify", inputs)
    for suite in suites:
        samples, c_factor, tol = SUITE_DEFAULTS[suite]
        res = campaigns.run_suite(
            suite,
            max_level=args.max_level,
            samples=args.samples if args.samples is not None else samples,
            seed=args.seed,
            tolerance=args.tolerance if args.tolerance is not None else tol,
            c_factor=args.c_factor if args.c_factor is not None else c_factor,
            workers=workers,
            bound=args.bound,
            max_modulus=args.max_modulus,
            max_c=args.max_level,
        )
        report.results.extend(res.records)
        report.failures.extend(res.failures)
        print(f"{suite}: {res.cases} cases, {len(res.failures)} failures", file=sys.stderr)
    return report


def cmd_fixtures(args) -> RunReport:
    path = args.path or DEFAULT_PATH
    report = RunReport("fixtures", {"write": args.write, "check": args.check, "path": str(path)})
    if args.write:
        entries = write_fixtures(path, args.max_level)
        report.results.append({"written": len(entries), "path": str(path)})
    else:
        try:
            count, mismatches = check_fixtures(path, args.tolerance)
        except FileNotFoundError:
            raise UsageError(f"fixture file {path} not found") from None
        report.results.append({"checked": count, "path": str(path)})
        report.failures.extend(mismatches)
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dedesum", description="Exact generalized Dedekind sums for newform Eisenstein series.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chars", help="list Dirichlet characters mod q")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--primitive", action="store_true")
    p.set_defaults(func=cmd_chars)

    p = sub.add_parser("eval", help="evaluate S_{chi1,chi2}(gamma) exactly")
    p.add_argument("--chi1", required=True, help="character label q:e1,e2,...")
    p.add_argument("--chi2", required=True)
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--matrix", help="a,b,c,d")
    grp.add_argument("--bottom", help="c,d (lifted canonically)")
    p.add_argument("--direct", action="store_true", help="use the term-by-term double sum")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="run a verification campaign")
    p.add_argument("--suite", choices=campaigns.SUITES + ("all",), default="all")
    p.add_argument("--max-level", type=int, default=36)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", default="1")
    p.add_argument("--tolerance", type=float, default=None)
    p.add_argument("--c-factor", type=int, default=None, help="sample |c| <= c_factor * N")
    p.add_argument("--bound", type=int, default=500, help="coefficient bound for hecke/eichler")
    p.add_argument("--max-modulus", type=int, default=50, help="modulus bound for lvalue")
    p.add_argument("--workers", type=int, default=None, help="overrides DEDESUM_THREADS")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fixtures", help="write or re-check frozen fixtures")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--write", action="store_true")
    grp.add_argument("--check", action="store_true")
    p.add_argument("path", nargs="?", default=None)
    p.add_argument("--max-level", type=int, default=20)
    p.add_argument("--tolerance", type=float, default=APPROX_TOLERANCE)
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        report = args.func(args)
    except UsageError as exc:
        print(f"dedesum {args.command}: error: {exc}", file=sys.stderr)
        return 2
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    report.emit()
    if report.command != "verify":
        print(f"{report.command}: {len(report.results)} results, {len(report.failures)} failures", file=sys.stderr)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
