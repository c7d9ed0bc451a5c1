"""Command-line entry point: ``opsmith run | generate | suite``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from pathlib import Path

from . import serialize as ser
from .report import render_structured, render_text
from .scenario import ScenarioError, load_scenario, run

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

GENERATE_KINDS = ("complex", "cofibration", "trivial-cofibration", "operad-algebra", "smith-ideal")


def default_seed() -> int:
    raw = os.environ.get("OPSMITH_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"OPSMITH_SEED must be an integer, got {raw!r}") from None


def scenario_dir() -> Path:
    return Path(str(resources.files("opsmith") / "scenarios"))


def bundled_scenarios() -> list[Path]:
    return sorted(scenario_dir().glob("*.json"))


def _emit_error(exc: ScenarioError, fmt: str):
    if fmt == "structured":
        print(json.dumps(exc.to_dict(), sort_keys=True, ensure_ascii=False))
    else:
        where = ", ".join(f"{k}={v}" for k, v in sorted(exc.where.items()))
        print(f"error ({exc.kind}): {exc.message}" + (f" [{where}]" if where else ""), file=sys.stderr)


def cmd_run(args) -> int:
    seed = args.seed if args.seed is not None else default_seed()
    try:
        report = run(load_scenario(args.file), seed)
    except ScenarioError as exc:
        _emit_error(exc, args.format)
        return EXIT_INPUT
    out = render_structured(report) if args.format == "structured" else render_text(report)
    sys.stdout.write(out)
    return EXIT_PASS if report.passed else EXIT_FAIL


def generate(kind: str, seed: int, max_dim: int = 3, degrees=(-2, 2), operad: str = "As", N: int = 3) -> dict:
    """A serialized seeded instance; raises ValueError on unsatisfiable parameters."""
    from .gen import make_rng, random_algebra, random_cofibration, random_complex, random_smith_ideal
    from .operad import std_operad
    lo, hi = degrees
    if lo > hi:
        raise ValueError(f"empty degree range [{lo}, {hi}]")
    if max_dim < 1:
        raise ValueError("max_dim must be at least 1")
    if kind not in GENERATE_KINDS:
        raise ValueError(f"unknown kind {kind!r}; choose from {', '.join(GENERATE_KINDS)}")
    rng = make_rng(seed)
    params = {"max_dim": max_dim, "degrees": [lo, hi]}
    if kind == "complex":
        data = ser.complex_to_json(random_complex(rng, max_dim=max_dim, degrees=(lo, hi)))
    elif kind in ("cofibration", "trivial-cofibration"):
        if max_dim < 2 and kind == "trivial-cofibration":
            raise ValueError("a nontrivial acyclic extension needs max_dim ≥ 2")
        f = random_cofibration(rng, trivial=kind == "trivial-cofibration", max_dim=max_dim, degrees=(lo, hi))
        data = ser.map_to_json(f)
    else:
        if operad not in ("As", "Com"):
            raise ValueError("operad must be As or Com")
        if N < 2:
            raise ValueError("truncation N must be at least 2")
        o = std_operad(operad, N)
        params = {"operad": operad, "N": N}
        if kind == "operad-algebra":
            data = ser.algebra_to_json(random_algebra(rng, o), operad)
        else:
            data = ser.smith_to_json(random_smith_ideal(rng, o), operad)
    return {"kind": kind, "seed": seed, "params": params, "data": data}


def cmd_generate(args) -> int:
    seed = args.seed if args.seed is not None else default_seed()
    try:
        doc = generate(args.kind, seed, args.max_dim, tuple(args.degrees), args.operad, args.N)
    except ValueError as exc:
        print(f"error (params): {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(json.dumps(doc, sort_keys=True, ensure_ascii=False))
    return EXIT_PASS


def cmd_suite(args) -> int:
    seed = args.seed if args.seed is not None else default_seed()
    worst = EXIT_PASS
    for path in bundled_scenarios():
        try:
            report = run(load_scenario(path), seed)
        except ScenarioError as exc:
            print(f"ERROR {path.stem}: {exc.kind}: {exc.message}")
            worst = max(worst, EXIT_INPUT)
            continue
        n = len(report.records)
        ok = sum(r.passed for r in report.records)
        print(f"{'PASS' if report.passed else 'FAIL'} {report.scenario}: {ok}/{n} checks")
        if args.verbose or not report.passed:
            sys.stdout.write(render_text(report))
        if not report.passed:
            worst = max(worst, EXIT_FAIL)
    return worst


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="opsmith", description="Exact checks for arrow categories, "
                                "operadic algebras and Smith ideals over rational chain complexes.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run a scenario file")
    r.add_argument("file")
    r.add_argument("--seed", type=int)
    r.add_argument("--format", choices=("text", "structured"), default="text")
    r.set_defaults(func=cmd_run)

    g = sub.add_parser("generate", help="emit a seeded random instance as JSON")
    g.add_argument("kind", choices=GENERATE_KINDS)
    g.add_argument("--seed", type=int)
    g.add_argument("--max-dim", type=int, default=3)
    g.add_argument("--degrees", type=int, nargs=2, default=(-2, 2), metavar=("LO", "HI"))
    g.add_argument("--operad", default="As")
    g.add_argument("--N", type=int, default=3)
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("suite", help="run every bundled scenario")
    s.add_argument("--seed", type=int)
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(func=cmd_suite)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
