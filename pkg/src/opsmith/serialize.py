"""JSON encodings of complexes, maps, squares, operads, algebras and ideals.

Rationals are strings ``"p/q"`` (``"p"`` for integers), matrices are
row-major nested lists, degrees are decimal strings used as object keys.
Decoders take shapes from the surrounding data, so empty matrices need no
special encoding.
"""

from __future__ import annotations

from .algebra import AlgebraMap, Bimodule, OperadAlgebra
from .arrow import ArrowMap, ArrowObject
from .chain import ChainComplex, ChainMap
from .operad import Operad
from .ratlin import Matrix, format_rational, parse_rational
from .smith import SmithIdeal


class DecodeError(ValueError):
    """Malformed data; ``path`` locates the offending field."""

    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
        self.detail = message


# ---------------------------------------------------------------------------
# scalars and matrices


def matrix_to_json(m: Matrix) -> list:
    return [[format_rational(v) for v in row] for row in m.data]


def matrix_from_json(data, rows: int, cols: int, path: str = "") -> Matrix:
    if not isinstance(data, list) or len(data) != rows:
        raise DecodeError(f"expected {rows} rows", path)
    out = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise DecodeError(f"row {i} should have {cols} entries", path)
        try:
            out.append([parse_rational(v) for v in row])
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise DecodeError(f"bad rational in row {i}: {exc}", path) from None
    return Matrix.from_rows(out, cols)


def _degree(key, path) -> int:
    try:
        return int(key)
    except (TypeError, ValueError):
        raise DecodeError(f"degree {key!r} is not an integer", path) from None


def _obj(data, path, *required):
    if not isinstance(data, dict):
        raise DecodeError("expected an object", path)
    for k in required:
        if k not in data:
            raise DecodeError(f"missing field {k!r}", path)
    return data


# ---------------------------------------------------------------------------
# complexes and maps


def complex_to_json(x: ChainComplex) -> dict:
    return {"dims": {str(n): k for n, k in x.dims.items()},
            "d": {str(n): matrix_to_json(m) for n, m in x.differentials.items()}}


def complex_from_json(data, path: str = "complex") -> ChainComplex:
    _obj(data, path, "dims")
    dims = {}
    for k, v in data["dims"].items():
        if not isinstance(v, int) or v < 0:
            raise DecodeError(f"dimension at degree {k} must be a non-negative integer", path)
        dims[_degree(k, path)] = v
    d = {}
    for k, m in data.get("d", {}).items():
        n = _degree(k, path)
        d[n] = matrix_from_json(m, dims.get(n - 1, 0), dims.get(n, 0), f"{path}.d[{n}]")
    return ChainComplex(dims, d)


def components_to_json(f: ChainMap) -> dict:
    return {str(n): matrix_to_json(f.at(n)) for n in f.degrees if not f.at(n).is_zero()}


def components_from_json(data, source: ChainComplex, target: ChainComplex, path: str) -> dict:
    _obj(data, path)
    out = {}
    for k, m in data.items():
        n = _degree(k, path)
        out[n] = matrix_from_json(m, target.dim(n), source.dim(n), f"{path}[{n}]")
    return out


def map_to_json(f: ChainMap) -> dict:
    return {"source": complex_to_json(f.source), "target": complex_to_json(f.target),
            "components": components_to_json(f)}


def map_from_json(data, path: str = "map") -> ChainMap:
    _obj(data, path, "source", "target")
    s = complex_from_json(data["source"], path + ".source")
    t = complex_from_json(data["target"], path + ".target")
    return ChainMap(s, t, components_from_json(data.get("components", {}), s, t, path + ".components"))


def arrow_to_json(a: ArrowObject) -> dict:
    return {"X0": complex_to_json(a.X0), "X1": complex_to_json(a.X1), "f": components_to_json(a.f)}


def arrow_from_json(data, path: str = "arrow") -> ArrowObject:
    _obj(data, path, "X0", "X1")
    x0 = complex_from_json(data["X0"], path + ".X0")
    x1 = complex_from_json(data["X1"], path + ".X1")
    return ArrowObject(ChainMap(x0, x1, components_from_json(data.get("f", {}), x0, x1, path + ".f")))


def arrow_map_to_json(a: ArrowMap) -> dict:
    return {"source": arrow_to_json(a.source), "target": arrow_to_json(a.target),
            "alpha0": components_to_json(a.alpha0), "alpha1": components_to_json(a.alpha1)}


def arrow_map_from_json(data, path: str = "square") -> ArrowMap:
    _obj(data, path, "source", "target")
    s = arrow_from_json(data["source"], path + ".source")
    t = arrow_from_json(data["target"], path + ".target")
    a0 = ChainMap(s.X0, t.X0, components_from_json(data.get("alpha0", {}), s.X0, t.X0, path + ".alpha0"))
    a1 = ChainMap(s.X1, t.X1, components_from_json(data.get("alpha1", {}), s.X1, t.X1, path + ".alpha1"))
    return ArrowMap(s, t, a0, a1)


# ---------------------------------------------------------------------------
# operads, algebras, ideals


def operad_to_json(o: Operad) -> dict:
    return {
        "name": o.name,
        "colors": list(o.colors),
        "N": o.N,
        "entries": [{"profile": list(cs), "color": d, "complex": complex_to_json(x)}
                    for (cs, d), x in o.entries.items()],
        "actions": [{"profile": list(cs), "color": d, "i": i, "components": components_to_json(m)}
                    for (cs, d, i), m in o.actions.items()],
        "gamma": [{"color": d, "profile": list(cs), "inputs": [list(b) for b in bs],
                   "components": components_to_json(m)} for (d, cs, bs), m in o.gamma.items()],
        "units": {c: components_to_json(m) for c, m in o.units.items()},
    }


def operad_from_json(data, path: str = "operad") -> Operad:
    from .ground import CHAIN
    from .operad import permute_profile, transposition
    _obj(data, path, "colors", "N")
    colors = tuple(data["colors"])
    entries = {}
    for k, e in enumerate(data.get("entries", [])):
        p = f"{path}.entries[{k}]"
        _obj(e, p, "profile", "color", "complex")
        entries[(tuple(e["profile"]), e["color"])] = complex_from_json(e["complex"], p + ".complex")
    o = Operad(CHAIN, colors, int(data["N"]), entries, name=data.get("name", ""))

    for k, a in enumerate(data.get("actions", [])):
        p = f"{path}.actions[{k}]"
        _obj(a, p, "profile", "color", "i", "components")
        cs, d, i = tuple(a["profile"]), a["color"], int(a["i"])
        if not 0 <= i < len(cs) - 1:
            raise DecodeError(f"transposition index {i} out of range", p)
        src, tgt = o.entry(cs, d), o.entry(permute_profile(cs, transposition(len(cs), i)), d)
        o.actions[(cs, d, i)] = ChainMap(src, tgt, components_from_json(a["components"], src, tgt, p))
    for k, g in enumerate(data.get("gamma", [])):
        p = f"{path}.gamma[{k}]"
        _obj(g, p, "color", "profile", "inputs", "components")
        d, cs = g["color"], tuple(g["profile"])
        bs = tuple(tuple(b) for b in g["inputs"])
        if len(bs) != len(cs):
            raise DecodeError("one input profile per input color required", p)
        src, tgt = o.gamma_domain(d, cs, bs), o.entry(sum(bs, ()), d)
        o.gamma[(d, cs, bs)] = ChainMap(src, tgt, components_from_json(g["components"], src, tgt, p))
    for c, comps in data.get("units", {}).items():
        src, tgt = CHAIN.unit(), o.entry((c,), c)
        o.units[c] = ChainMap(src, tgt, components_from_json(comps, src, tgt, f"{path}.units[{c}]"))
    return o


def algebra_to_json(a: OperadAlgebra, operad_ref: str = "O") -> dict:
    return {"operad": operad_ref,
            "carriers": {c: complex_to_json(x) for c, x in a.carriers.items()},
            "structure": [{"profile": list(cs), "color": d, "components": components_to_json(m)}
                          for (cs, d), m in a.lam.items()]}


def algebra_from_json(data, o: Operad, path: str = "algebra") -> OperadAlgebra:
    _obj(data, path, "carriers")
    carriers = {c: complex_from_json(x, f"{path}.carriers[{c}]") for c, x in data["carriers"].items()}
    a = OperadAlgebra(o, carriers, {})
    for k, s in enumerate(data.get("structure", [])):
        p = f"{path}.structure[{k}]"
        _obj(s, p, "profile", "color", "components")
        cs, d = tuple(s["profile"]), s["color"]
        src, tgt = a.domain(cs, d), a.carrier(d)
        a.lam[(cs, d)] = ChainMap(src, tgt, components_from_json(s["components"], src, tgt, p))
    return a


def bimodule_to_json(b: Bimodule, algebra_ref: str = "Y") -> dict:
    return {"algebra": algebra_ref,
            "carriers": {c: complex_to_json(x) for c, x in b.carriers.items()},
            "structure": [{"profile": list(cs), "color": d, "position": i,
                           "components": components_to_json(m)} for (cs, d, i), m in b.theta.items()]}


def bimodule_from_json(data, a: OperadAlgebra, path: str = "bimodule") -> Bimodule:
    _obj(data, path, "carriers")
    carriers = {c: complex_from_json(x, f"{path}.carriers[{c}]") for c, x in data["carriers"].items()}
    b = Bimodule(a, carriers, {})
    for k, s in enumerate(data.get("structure", [])):
        p = f"{path}.structure[{k}]"
        _obj(s, p, "profile", "color", "position", "components")
        cs, d, i = tuple(s["profile"]), s["color"], int(s["position"])
        if not 0 <= i < len(cs):
            raise DecodeError(f"position {i} out of range", p)
        src, tgt = b.domain(cs, d, i), b.carrier(d)
        b.theta[(cs, d, i)] = ChainMap(src, tgt, components_from_json(s["components"], src, tgt, p))
    return b


def smith_to_json(s: SmithIdeal, operad_ref: str = "O") -> dict:
    return {"operad": operad_ref,
            "Y": algebra_to_json(s.Y, operad_ref),
            "X": bimodule_to_json(s.X),
            "f": {c: components_to_json(m) for c, m in s.f.items()}}


def smith_from_json(data, o: Operad, path: str = "smith") -> SmithIdeal:
    _obj(data, path, "Y", "X")
    y = algebra_from_json(data["Y"], o, path + ".Y")
    x = bimodule_from_json(data["X"], y, path + ".X")
    f = {}
    for c, comps in data.get("f", {}).items():
        f[c] = ChainMap(x.carrier(c), y.carrier(c),
                        components_from_json(comps, x.carrier(c), y.carrier(c), f"{path}.f[{c}]"))
    return SmithIdeal(o, y, x, f)


def algebra_map_to_json(h: AlgebraMap, operad_ref: str = "O") -> dict:
    return {"source": algebra_to_json(h.source, operad_ref), "target": algebra_to_json(h.target, operad_ref),
            "components": {c: components_to_json(m) for c, m in h.components.items()}}


def algebra_map_from_json(data, o: Operad, path: str = "algebra_map") -> AlgebraMap:
    _obj(data, path, "source", "target")
    s = algebra_from_json(data["source"], o, path + ".source")
    t = algebra_from_json(data["target"], o, path + ".target")
    comps = {}
    for c, m in data.get("components", {}).items():
        comps[c] = ChainMap(s.carrier(c), t.carrier(c),
                            components_from_json(m, s.carrier(c), t.carrier(c), f"{path}.components[{c}]"))
    return AlgebraMap(s, t, comps)
