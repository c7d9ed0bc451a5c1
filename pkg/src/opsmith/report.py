"""Check records, reports, and their text and structured renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction


@dataclass
class CheckRecord:
    id: str
    check: str
    passed: bool
    diagnostics: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


@dataclass
class Report:
    scenario: str
    records: list = field(default_factory=list)
    environment: dict = field(default_factory=dict)
    homology: dict = field(default_factory=dict)  # complex name -> {degree: dim}

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def sorted_records(self) -> list[CheckRecord]:
        return sorted(self.records, key=lambda r: r.id)


def jsonable(x):
    """Tuples to lists, rationals to strings, keys to strings; sorted for stability."""
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def render_structured(report: Report) -> str:
    """Byte-stable JSON: records sorted by id, no timings."""
    doc = {
        "scenario": report.scenario,
        "environment": jsonable(report.environment),
        "status": "pass" if report.passed else "fail",
        "checks": [
            {"id": r.id, "check": r.check, "status": r.status, "diagnostics": jsonable(r.diagnostics)}
            for r in report.sorted_records()
        ],
        "homology": jsonable(report.homology),
    }
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _homology_table(name: str, dims: dict, hom: dict) -> list[str]:
    degs = sorted(set(dims) | set(hom))
    if not degs:
        return [f"  {name}: zero complex"]
    width = max(5, *(len(str(d)) for d in degs))
    head = "  " + f"{name:<12}" + "".join(f"{d:>{width}}" for d in degs)
    row_c = "  " + f"{'dim':<12}" + "".join(f"{dims.get(d, 0):>{width}}" for d in degs)
    row_h = "  " + f"{'H':<12}" + "".join(f"{hom.get(d, 0):>{width}}" for d in degs)
    return [head, row_c, row_h]


def render_text(report: Report, timings: bool = True) -> str:
    lines = [f"scenario: {report.scenario}"]
    env = ", ".join(f"{k}={v}" for k, v in sorted(report.environment.items()))
    if env:
        lines.append(f"environment: {env}")
    if report.homology:
        lines.append("homology:")
        for name, data in sorted(report.homology.items()):
            lines.extend(_homology_table(name, data["dims"], data["homology"]))
    for r in report.sorted_records():
        status = "PASS" if r.passed else "FAIL"
        t = f" ({r.seconds:.2f}s)" if timings else ""
        msg = r.diagnostics.get("message", "")
        lines.append(f"{status} {r.id} [{r.check}]{t}{': ' + msg if msg else ''}")
        for k, v in sorted(r.diagnostics.items()):
            if k != "message":
                lines.append(f"    {k}: {json.dumps(jsonable(v), ensure_ascii=False, sort_keys=True)}")
    n = len(report.records)
    ok = sum(r.passed for r in report.records)
    lines.append(f"summary: {ok}/{n} checks passed, {n - ok} failed")
    return "\n".join(lines) + "\n"
