"""Scenario files: declarations of named data plus a list of checks.

A scenario is one JSON document::

    {"name": "...", "ground": "chain", "N": 3,
     "complexes": {...}, "maps": {...}, "arrows": {...}, "squares": {...},
     "operads": {...}, "algebras": {...}, "bimodules": {...},
     "smith_ideals": {...}, "algebra_maps": {...},
     "checks": [{"id": "...", "check": "...", ...}]}

Every declaration is validated before any check runs.
"""

from __future__ import annotations

import json
import re
import time
from pathlib import Path

from . import chain as ch
from . import serialize as ser
from .algebra import (
    AlgebraMap,
    OperadAlgebra,
    algebra_from_product,
    self_bimodule,
    sub_bimodule,
    validate_algebra,
    validate_algebra_map,
    validate_bimodule,
)
from .arrow import ArrowMap, ArrowObject, validate_arrow_map
from .chain import ChainComplex, ChainMap
from .operad import Operad, std_operad, validate_operad
from .report import CheckRecord, Report
from .smith import SmithIdeal, smith_coker, validate_smith_ideal

SECTIONS = ("complexes", "maps", "arrows", "squares", "operads", "algebras", "bimodules",
            "smith_ideals", "algebra_maps")
SINGULAR = {"complexes": "complex", "maps": "map", "arrows": "arrow", "squares": "square",
            "operads": "operad", "algebras": "algebra", "bimodules": "bimodule",
            "smith_ideals": "smith ideal", "algebra_maps": "algebra map"}


class ScenarioError(Exception):
    """Input problem; ``kind`` is one of ``parse``, ``reference``, ``validation``."""

    def __init__(self, kind: str, message: str, **where):
        super().__init__(message)
        self.kind = kind
        self.message = message
        self.where = where

    def to_dict(self) -> dict:
        return {"error": self.kind, "message": self.message, **self.where}


class Scenario:
    def __init__(self, doc: dict, source: str = "<scenario>"):
        if not isinstance(doc, dict):
            raise ScenarioError("parse", "scenario must be a JSON object", file=source)
        self.doc = doc
        self.source = source
        self.name = doc.get("name", Path(source).stem)
        if doc.get("ground", "chain") != "chain":
            raise ScenarioError("validation", f"unsupported ground {doc.get('ground')!r}", field="ground")
        self.N = int(doc.get("N", 3))
        self.objects: dict = {s: {} for s in SECTIONS}
        self.checks = doc.get("checks", [])
        if not isinstance(self.checks, list):
            raise ScenarioError("parse", "'checks' must be a list", field="checks")
        for s in doc:
            if s not in SECTIONS + ("name", "ground", "N", "checks", "description"):
                raise ScenarioError("parse", f"unknown section {s!r}", field=s)
        self._build()

    # -- references -------------------------------------------------------

    def get(self, section: str, ref):
        if not isinstance(ref, str):
            raise ScenarioError("reference", f"expected a name in {section}, got {type(ref).__name__}",
                                section=section)
        table = self.objects[section]
        if ref not in table:
            raise ScenarioError("reference", f"undefined {SINGULAR[section]} {ref!r}", section=section, name=ref)
        return table[ref]

    def complex(self, ref) -> ChainComplex:
        if isinstance(ref, dict):
            if "tensor" in ref:
                return ch.tensor_tree([self.complex(r) for r in ref["tensor"]],
                                      _left_tree(len(ref["tensor"])))
            return ser.complex_from_json(ref, "inline complex")
        m = re.fullmatch(r"([SD])\((-?\d+)\)", ref) if isinstance(ref, str) else None
        if m:
            k = int(m.group(2))
            return ch.sphere(k) if m.group(1) == "S" else ch.disk(k)
        if ref == "0":
            return ch.zero_complex()
        if ref == "1":
            return ch.unit_complex()
        return self.get("complexes", ref)

    def map(self, ref) -> ChainMap:
        if isinstance(ref, dict):
            return self._build_map("<inline>", ref)
        return self.get("maps", ref)

    def arrow(self, ref) -> ArrowObject:
        if isinstance(ref, dict):
            return self._build_arrow(ref)
        if isinstance(ref, str) and ref in self.objects["maps"] and ref not in self.objects["arrows"]:
            return ArrowObject(self.objects["maps"][ref])
        return self.get("arrows", ref)

    # -- construction ------------------------------------------------------

    def _section(self, s) -> dict:
        data = self.doc.get(s, {})
        if not isinstance(data, dict):
            raise ScenarioError("parse", f"section {s!r} must be an object", field=s)
        return data

    def _wrap(self, kind, name, fn, *args):
        try:
            return fn(*args)
        except ScenarioError:
            raise
        except ser.DecodeError as exc:
            raise ScenarioError("parse", f"{SINGULAR[kind]} {name!r}: {exc}", section=kind, name=name) from None
        except (ValueError, KeyError, TypeError) as exc:
            raise ScenarioError("validation", f"{SINGULAR[kind]} {name!r}: {exc}", section=kind, name=name) from None

    def _validated(self, kind, name, obj, check):
        chk = check(obj)
        if not chk:
            where = {"section": kind, "name": name}
            if kind == "complexes" and chk.where:
                where["degree"] = chk.where[0]
            raise ScenarioError("validation", f"{SINGULAR[kind]} {name!r}: {chk.message}", **where)
        return obj

    def _build(self):
        for name, data in self._section("complexes").items():
            x = self._wrap("complexes", name, self.complex, data)
            self.objects["complexes"][name] = self._validated("complexes", name, x, ch.validate_complex)
        for name, data in self._section("maps").items():
            f = self._wrap("maps", name, self._build_map, name, data)
            self.objects["maps"][name] = self._validated("maps", name, f, ch.validate_map)
        for name, data in self._section("arrows").items():
            a = self._wrap("arrows", name, self._build_arrow, data)
            self.objects["arrows"][name] = self._validated("arrows", name, a, lambda x: ch.validate_map(x.f))
        for name, data in self._section("squares").items():
            sq = self._wrap("squares", name, self._build_square, data)
            self.objects["squares"][name] = self._validated("squares", name, sq, validate_arrow_map)
        for name, data in self._section("operads").items():
            o = self._wrap("operads", name, self._build_operad, data)
            self.objects["operads"][name] = self._validated("operads", name, o, validate_operad)
        for name, data in self._section("algebras").items():
            a = self._wrap("algebras", name, self._build_algebra, data)
            self.objects["algebras"][name] = self._validated("algebras", name, a, validate_algebra)
        for name, data in self._section("bimodules").items():
            b = self._wrap("bimodules", name, self._build_bimodule, data)
            self.objects["bimodules"][name] = self._validated("bimodules", name, b, validate_bimodule)
        for name, data in self._section("smith_ideals").items():
            s = self._wrap("smith_ideals", name, self._build_smith, data)
            self.objects["smith_ideals"][name] = self._validated("smith_ideals", name, s, validate_smith_ideal)
        for name, data in self._section("algebra_maps").items():
            h = self._wrap("algebra_maps", name, self._build_algmap, data)
            self.objects["algebra_maps"][name] = self._validated("algebra_maps", name, h, validate_algebra_map)

    def _build_map(self, name, data) -> ChainMap:
        ser._obj(data, f"map {name}", "source", "target")
        s, t = self.complex(data["source"]), self.complex(data["target"])
        if data.get("identity"):
            return ch.identity_map(s)
        comps = ser.components_from_json(data.get("components", {}), s, t, f"map {name}.components")
        return ChainMap(s, t, comps)

    def _build_arrow(self, data) -> ArrowObject:
        if isinstance(data, str):
            return ArrowObject(self.map(data))
        if "map" in data:
            return ArrowObject(self.map(data["map"]))
        return ser.arrow_from_json(data)

    def _build_square(self, data) -> ArrowMap:
        ser._obj(data, "square", "source", "target")
        s, t = self.arrow(data["source"]), self.arrow(data["target"])
        a0 = ChainMap(s.X0, t.X0, ser.components_from_json(data.get("alpha0", {}), s.X0, t.X0, "alpha0"))
        a1 = ChainMap(s.X1, t.X1, ser.components_from_json(data.get("alpha1", {}), s.X1, t.X1, "alpha1"))
        return ArrowMap(s, t, a0, a1)

    def _build_operad(self, data) -> Operad:
        if "standard" in data:
            return std_operad(data["standard"], int(data.get("N", self.N)), colors=tuple(data.get("colors", ["*"])))
        return ser.operad_from_json(data)

    def _build_algebra(self, data) -> OperadAlgebra:
        o = self.get("operads", data.get("operad"))
        if "products" in data:
            carriers = {c: self.complex(x) for c, x in data["carriers"].items()}
            products = {c: self.map(m) for c, m in data["products"].items()}
            return algebra_from_product(o, carriers, products)
        return ser.algebra_from_json(data, o)

    def _build_bimodule(self, data):
        a = self.get("algebras", data.get("algebra"))
        if "ideal" in data:
            return sub_bimodule(a, {c: self.map(m) for c, m in data["ideal"].items()})
        if data.get("self"):
            return self_bimodule(a)
        return ser.bimodule_from_json(data, a)

    def _build_smith(self, data) -> SmithIdeal:
        o = self.get("operads", data.get("operad"))
        y = self.get("algebras", data.get("Y"))
        x = self.get("bimodules", data.get("X"))
        f = {c: self.map(m) for c, m in data.get("f", {}).items()}
        return SmithIdeal(o, y, x, f)

    def _build_algmap(self, data) -> AlgebraMap:
        if "cokernel_of" in data:
            return smith_coker(self.get("smith_ideals", data["cokernel_of"]))
        s = self.get("algebras", data.get("source"))
        t = self.get("algebras", data.get("target"))
        return AlgebraMap(s, t, {c: self.map(m) for c, m in data.get("components", {}).items()})


def _left_tree(n):
    from .ground import leftfold_tree
    return leftfold_tree(n)


def load_scenario(path) -> Scenario:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError("parse", f"cannot read {p}: {exc.strerror}", file=str(p)) from None
    return parse_scenario(text, str(p))


def parse_scenario(text: str, source: str = "<scenario>") -> Scenario:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError("parse", exc.msg, file=source, line=exc.lineno, column=exc.colno) from None
    return Scenario(doc, source)


def run(scn: Scenario, seed: int = 0) -> Report:
    from .checks import REGISTRY
    rep = Report(scn.name, environment={"seed": seed, "N": scn.N})
    for name, x in scn.objects["complexes"].items():
        rep.homology[name] = {"dims": x.dims, "homology": ch.homology(x)}
    seen = set()
    for k, spec in enumerate(scn.checks):
        if not isinstance(spec, dict) or "check" not in spec:
            raise ScenarioError("parse", f"check #{k} needs a 'check' field", index=k)
        cid = str(spec.get("id", f"{k:03d}-{spec['check']}"))
        if cid in seen:
            raise ScenarioError("parse", f"duplicate check id {cid!r}", index=k)
        seen.add(cid)
        fn = REGISTRY.get(spec["check"])
        if fn is None:
            raise ScenarioError("reference", f"unknown check kind {spec['check']!r}", index=k, id=cid)
        t = time.perf_counter()
        try:
            ok, diag = fn(scn, spec, seed)
        except ScenarioError:
            raise
        except KeyError as exc:
            raise ScenarioError("parse", f"check {cid!r}: missing parameter {exc.args[0]!r}", id=cid) from None
        except ValueError as exc:
            raise ScenarioError("validation", f"check {cid!r}: {exc}", id=cid) from None
        rep.records.append(CheckRecord(cid, spec["check"], bool(ok), diag, time.perf_counter() - t))
    return rep


def run_scenario(path, seed: int = 0) -> Report:
    return run(load_scenario(path), seed)
