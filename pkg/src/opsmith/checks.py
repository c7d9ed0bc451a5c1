"""Check kinds available to scenarios.

Each check takes ``(scenario, spec, seed)`` and returns ``(passed, diagnostics)``
with JSON-friendly, deterministic diagnostics.
"""

from __future__ import annotations

from . import chain as ch
from . import modelcheck as mc
from .acceptance import CRITERIA
from .algebra import algebra_maps_equal, algebras_equal, validate_algebra
from .arrow import (
    BOX,
    TENSOR,
    ArrowObject,
    classify_arrow_map,
    iterated_pushout_product,
    lax_associativity,
    monoidality_witnesses,
    triangle_identities,
    unit_constraints,
)
from .operad import sigma_cofibrancy_check, validate_operad
from .smith import (
    RESTRICTION_NOTE,
    algebra_map_to_tensor_algebra,
    algmap_ker,
    arrows_of_algebras,
    assemble_box_algebra,
    cokernel_commutes_with_forgetting,
    derived_unit_check,
    kernel_commutes_with_forgetting,
    operadic_adjunction_witnesses,
    smith_ideals_equal,
    two_x_check,
    unravel,
    validate_smith_ideal,
)

REGISTRY: dict = {}


def check(name):
    def deco(fn):
        REGISTRY[name] = fn
        return fn
    return deco


def _from_check(chk) -> tuple[bool, dict]:
    d = {"message": chk.message} if chk.message else {}
    if chk.where:
        d["where"] = list(chk.where)
    return bool(chk), d


def _flags(obj) -> dict:
    return {k: getattr(obj, k) for k in ("cof", "fib", "weq", "trivial_cof", "trivial_fib")}


def _expect(flags: dict, spec: dict) -> tuple[bool, dict]:
    """Compare computed flags against ``spec["expect"]`` when given."""
    exp = spec.get("expect", {})
    bad = {k: {"expected": v, "got": flags.get(k)} for k, v in exp.items() if flags.get(k) != v}
    diag = {"flags": flags}
    if bad:
        diag["message"] = "unexpected flags " + ", ".join(sorted(bad))
        diag["mismatch"] = bad
    return not bad, diag


# chain level


@check("homology")
def _homology(scn, spec, seed):
    x = scn.complex(spec["complex"])
    h = ch.homology(x)
    diag = {"homology": h}
    if "expect" in spec:
        exp = {int(k): v for k, v in spec["expect"].items() if v}
        if exp != {k: v for k, v in h.items() if v}:
            diag["message"] = f"expected {exp}"
            return False, diag
    return True, diag


@check("classify_map")
def _classify_map(scn, spec, seed):
    c = ch.classify_map(scn.map(spec["map"]))
    flags = {"cofibration": c.is_cofibration, "fibration": c.is_fibration,
             "weak_equivalence": c.is_weak_equivalence}
    return _expect(flags, spec)


@check("pushout_product_axiom")
def _ppax(scn, spec, seed):
    r = mc.pushout_product_axiom_instance(scn.map(spec["f"]), scn.map(spec["g"]))
    return r.ok, {"flags": r.flags, "ranks": r.ranks}


@check("unit_laws")
def _unit_laws(scn, spec, seed):
    g = scn.arrow(spec["arrow"])
    out = {}
    for ground, label in ((BOX, "box"), (TENSOR, "tensor")):
        out[f"{label}_left"] = ground.is_iso(ground.left_unitor(g))
        out[f"{label}_right"] = ground.is_iso(ground.right_unitor(g))
    chk = unit_constraints()
    out["coker_ker_units"] = bool(chk)
    return all(out.values()), {"isomorphisms": out}


@check("triangle_identities")
def _triangles(scn, spec, seed):
    f = scn.arrow(spec["f"])
    g = scn.arrow(spec.get("g", spec["f"]))
    return _from_check(triangle_identities(f, g))


@check("monoidality")
def _monoidality(scn, spec, seed):
    w = monoidality_witnesses(scn.arrow(spec["f"]), scn.arrow(spec["g"]))
    d = {"strong_is_iso": w.strong_is_iso, "lax_is_valid": w.lax_is_valid}
    return w.strong_is_iso and w.lax_is_valid, d


@check("lax_associativity")
def _lax_assoc(scn, spec, seed):
    return _from_check(lax_associativity(*(scn.arrow(spec[k]) for k in ("f", "g", "h"))))


@check("iterated_pushout_product")
def _ipp(scn, spec, seed):
    it = iterated_pushout_product([scn.arrow(a) for a in spec["arrows"]])
    d = {"full_domain": it.full_domain.dims, "reduced_domain": it.reduced_domain.dims,
         "comparison_is_iso": it.comparison_is_iso, "agrees_with_fold": it.agrees_with_fold}
    return it.comparison_is_iso and it.agrees_with_fold, d


@check("classify_square")
def _classify_square(scn, spec, seed):
    c = classify_arrow_map(scn.get("squares", spec["square"]))
    flags = {f"proj_{k}": v for k, v in _flags(c.proj).items()}
    flags.update({f"inj_{k}": v for k, v in _flags(c.inj).items()})
    return _expect(flags, spec)


# operads, algebras, ideals


@check("validate")
def _validate(scn, spec, seed):
    from .algebra import validate_algebra_map, validate_bimodule
    fns = {"complexes": ch.validate_complex, "maps": ch.validate_map, "operads": validate_operad,
           "algebras": validate_algebra, "bimodules": validate_bimodule,
           "smith_ideals": validate_smith_ideal, "algebra_maps": validate_algebra_map}
    sec = spec["section"]
    return _from_check(fns[sec](scn.get(sec, spec["name"])))


@check("sigma_cofibrant")
def _sigma(scn, spec, seed):
    r = sigma_cofibrancy_check(scn.get("operads", spec["operad"]))
    return r.ok, {"entries_split": len(r.splittings)}


@check("two_x")
def _two_x(scn, spec, seed):
    """Either a declared Smith ideal, or a candidate ``{Y, X, f}`` assembled
    from validated parts, whose two-x squares are the thing being tested."""
    if "smith" in spec:
        return _from_check(two_x_check(scn.get("smith_ideals", spec["smith"])))
    from .algebra import self_bimodule, validate_bimodule_map
    from .smith import SmithIdeal
    y = scn.get("algebras", spec["Y"])
    x = scn.get("bimodules", spec["X"])
    f = {c: scn.map(m) for c, m in spec["f"].items()}
    if x.algebra is not y:
        raise ValueError("bimodule is over a different algebra")
    chk = validate_bimodule_map({c: f.get(c, ch.zero_map(x.carrier(c), y.carrier(c))) for c in y.operad.colors},
                                x, self_bimodule(y))
    if not chk:
        raise ValueError("f is not a bimodule map: " + chk.message)
    return _from_check(two_x_check(SmithIdeal(y.operad, y, x, f)))


@check("smith_round_trip")
def _smith_rt(scn, spec, seed):
    s = scn.get("smith_ideals", spec["smith"])
    a = assemble_box_algebra(s)
    valid = validate_algebra(a)
    same = smith_ideals_equal(unravel(a, s.operad), s)
    d = {"assembled_valid": bool(valid), "round_trip": same}
    if not valid:
        d["message"] = valid.message
    return bool(valid) and same, d


@check("tensor_round_trip")
def _tensor_rt(scn, spec, seed):
    h = scn.get("algebra_maps", spec["algebra_map"])
    o = h.source.operad
    t = algebra_map_to_tensor_algebra(h)
    valid = validate_algebra(t)
    back = arrows_of_algebras(t, o)
    d = {"converted_valid": bool(valid), "map_round_trip": algebra_maps_equal(back, h),
         "algebra_round_trip": algebras_equal(algebra_map_to_tensor_algebra(back), t)}
    return all(d.values()), d


@check("forgetting")
def _forgetting(scn, spec, seed):
    d = {}
    if "smith" in spec:
        d["coker"] = cokernel_commutes_with_forgetting(scn.get("smith_ideals", spec["smith"]))
    if "algebra_map" in spec:
        phi = scn.get("algebra_maps", spec["algebra_map"])
        d["ker"] = kernel_commutes_with_forgetting(phi)
        d["ker_two_x"] = bool(two_x_check(algmap_ker(phi)))
    return all(d.values()), d


@check("adjunction")
def _adjunction(scn, spec, seed):
    r = operadic_adjunction_witnesses(scn.get("smith_ideals", spec["smith"]),
                                      scn.get("algebra_maps", spec["algebra_map"]))
    d = {k: getattr(r, k) for k in r.__dataclass_fields__ if isinstance(getattr(r, k), bool)}
    return r.ok, d


@check("derived_unit")
def _derived_unit(scn, spec, seed):
    r = derived_unit_check(scn.get("smith_ideals", spec["smith"]))
    return r.ok, {"colors": r.colors, "cokernel_fibrant": r.cokernel_fibrant,
                  "unit_iso": r.unit_iso, "unit_weq": r.unit_weq, "note": RESTRICTION_NOTE}


# symmetric-group conditions


def _action(scn, spec, n):
    if spec.get("regular"):
        return mc.regular_representation(n)
    if "power" in spec:
        return mc.tensor_power_action(scn.complex(spec["power"]), n)
    x = scn.complex(spec["trivial"])
    return x, mc.trivial_action(x, n)


def _equivariant(scn, spec, n) -> mc.EquivariantArrow:
    if "box_power" in spec:
        p, gens = mc.box_power(ArrowObject(scn.map(spec["box_power"])), n)
        return mc.EquivariantArrow(n, p, gens)
    if "L1" in spec:
        return mc.lift_action_L1(*_action(scn, spec["L1"], n))
    return mc.lift_action_L0(*_action(scn, spec["L0"], n))


def _instance(r: mc.InstanceReport) -> tuple[bool, dict]:
    return r.ok, {"flags": r.flags, "ranks": r.ranks}


@check("strong_comm")
def _strong_comm(scn, spec, seed):
    return _instance(mc.check_strong_comm_instance(scn.map(spec["map"]), int(spec["n"])))


@check("heart")
def _heart(scn, spec, seed):
    n = int(spec["n"])
    return _instance(mc.check_heart_instance(_equivariant(scn, spec["f"], n), _equivariant(scn, spec["g"], n)))


@check("club")
def _club(scn, spec, seed):
    n = int(spec["n"])
    x, gens = _action(scn, spec["object"], n)
    return _instance(mc.check_club_instance(x, gens, scn.map(spec["map"]), n))


@check("spade")
def _spade(scn, spec, seed):
    n = int(spec["n"])
    x, gens = _action(scn, spec["object"], n)
    return _instance(mc.check_spade_instance(x, gens, scn.map(spec["map"]), n))


@check("arrow_club")
def _arrow_club(scn, spec, seed):
    n = int(spec["n"])
    return _instance(mc.check_arrow_club_instance(_equivariant(scn, spec["f"], n),
                                                  scn.get("squares", spec["square"]), n))


# seeded property runs


@check("acceptance")
def _acceptance(scn, spec, seed):
    k = int(spec["criterion"])
    kw = {key: int(v) for key, v in spec.items() if key in ("count", "triples", "max_n")}
    r = CRITERIA[k](seed, **kw)
    d = {"criterion": k, "instances": r.instances, "notes": r.notes}
    if r.failures:
        d["failures"] = r.failures
        d["message"] = r.failures[0]
    return r.ok, d
