"""Smith ideals and maps of algebras, and the cokernel/kernel adjunction between them.

A Smith ideal over an operad ``O`` is an ``O``-algebra ``Y``, a
``Y``-bimodule ``X`` and a bimodule map ``f: X → Y`` such that for
``i < j`` both ways of feeding two ``X`` inputs (``f`` on one, module
structure on the other) agree.  Equivalently it is an algebra over ``L1 O``
in the arrow category with the pushout product.  Maps of ``O``-algebras are
the algebras over ``L0 O`` in the arrow category with the tensor product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from . import chain as ch
from .algebra import (
    AlgebraMap,
    Bimodule,
    OperadAlgebra,
    algebras_equal,
    bimodules_equal,
    restrict_bimodule,
    self_bimodule,
    validate_algebra,
    validate_algebra_map,
    validate_bimodule,
    validate_bimodule_map,
)
from .arrow import (
    BOX,
    TENSOR,
    ArrowMap,
    ArrowObject,
    classify_arrow_map,
    coker_functor,
    ker_functor,
)
from .chain import ChainMap, Check
from .ground import CHAIN, leftfold_tree
from .operad import Operad, _fmt, _nonzero_by_output, lift_operad


class SmithError(ValueError):
    pass


@dataclass(repr=False)
class SmithIdeal:

    def __repr__(self):
        return f"SmithIdeal({self.operad!r}, Y={self.Y.carriers}, X={self.X.carriers})"

    operad: Operad
    Y: OperadAlgebra
    X: Bimodule
    f: dict

    def at(self, c) -> ChainMap:
        m = self.f.get(c)
        if m is None:
            return ch.zero_map(self.X.carrier(c), self.Y.carrier(c))
        return m


def two_x_check(s: SmithIdeal) -> Check:
    """For every profile and ``i < j`` (1-based in diagnostics) compare
    θ_i ∘ (f at j) with θ_j ∘ (f at i)."""
    o, g = s.operad, CHAIN
    nz = _nonzero_by_output(o)
    for d in o.colors:
        for cs in nz.get(d, []):
            n = len(cs)
            for i in range(n):
                for j in range(i + 1, n):
                    def feed(fpos):
                        maps = [g.identity(o.entry(cs, d))]
                        for k, c in enumerate(cs):
                            if k == fpos:
                                maps.append(s.at(c))
                            elif k in (i, j):
                                maps.append(g.identity(s.X.carrier(c)))
                            else:
                                maps.append(g.identity(s.Y.carrier(c)))
                        return g.fold_maps(maps)
                    lhs = g.compose(s.X.structure(cs, d, i), feed(j))
                    rhs = g.compose(s.X.structure(cs, d, j), feed(i))
                    if lhs != rhs:
                        return Check(False, f"two-x square fails: i={i + 1}, j={j + 1}, "
                                            f"profile {_fmt(cs, d)}, color {d}",
                                     ("two-x", i + 1, j + 1, cs, d))
    return Check(True)


def validate_smith_ideal(s: SmithIdeal) -> Check:
    for chk in (validate_algebra(s.Y), validate_bimodule(s.X)):
        if not chk:
            return chk
    if s.X.algebra is not s.Y and not algebras_equal(s.X.algebra, s.Y):
        return Check(False, "bimodule is over a different algebra")
    chk = validate_bimodule_map({c: s.at(c) for c in s.operad.colors}, s.X, self_bimodule(s.Y))
    if not chk:
        return Check(False, "f is not a bimodule map: " + chk.message, chk.where)
    return two_x_check(s)


def smith_ideals_equal(a: SmithIdeal, b: SmithIdeal) -> bool:
    return (algebras_equal(a.Y, b.Y) and bimodules_equal(a.X, b.X)
            and all(a.at(c) == b.at(c) for c in a.operad.colors))


# ---------------------------------------------------------------------------
# the two descriptions of Smith ideals


def box_operad(o: Operad) -> Operad:
    return lift_operad(o, "L1")


def tensor_operad(o: Operad) -> Operad:
    return lift_operad(o, "L0")


def assemble_box_algebra(s: SmithIdeal, lifted: Operad | None = None) -> OperadAlgebra:
    chk = two_x_check(s)
    if not chk:
        raise SmithError(chk.message)
    o = s.operad
    lo = lifted or box_operad(o)
    carriers = {c: ArrowObject(s.at(c)) for c in o.colors}
    lam = {}
    for (cs, d) in o.entries:
        if not o.nonzero(cs, d) or len(cs) > o.N:
            continue
        objs = [lo.entry(cs, d)] + [carriers[c] for c in cs]
        dom = BOX.fold(objs)
        covers = BOX.covers(objs, leftfold_tree(len(objs)))
        surjs, targets = [], []
        for k, cov in sorted(covers.items()):
            surjs.append(cov)
            targets.append(ch.zero_map(cov.source, s.X.carrier(d)) if k == 0
                           else s.X.structure(cs, d, k - 1))
        lam0 = ch.descend(surjs, targets, s.X.carrier(d))
        lam[(cs, d)] = ArrowMap(dom, carriers[d], lam0, s.Y.structure(cs, d))
    return OperadAlgebra(lo, carriers, lam)


def unravel(a: OperadAlgebra, o: Operad) -> SmithIdeal:
    ycar = {c: x.X1 for c, x in a.carriers.items()}
    xcar = {c: x.X0 for c, x in a.carriers.items()}
    ylam, theta = {}, {}
    lo = a.operad
    for (cs, d), m in a.lam.items():
        ylam[(cs, d)] = m.alpha1
        objs = [lo.entry(cs, d)] + [a.carrier(c) for c in cs]
        covers = BOX.covers(objs, leftfold_tree(len(objs)))
        for k in range(len(cs)):
            theta[(cs, d, k)] = m.alpha0 @ covers[k + 1]
    y = OperadAlgebra(o, ycar, ylam)
    return SmithIdeal(o, y, Bimodule(y, xcar, theta), {c: x.f for c, x in a.carriers.items()})


def algebra_map_to_tensor_algebra(h: AlgebraMap, lifted: Operad | None = None) -> OperadAlgebra:
    o = h.source.operad
    lo = lifted or tensor_operad(o)
    carriers = {c: ArrowObject(h.at(c)) for c in o.colors}
    lam = {}
    for (cs, d) in set(h.source.lam) | set(h.target.lam):
        dom = TENSOR.fold([lo.entry(cs, d)] + [carriers[c] for c in cs])
        lam[(cs, d)] = ArrowMap(dom, carriers[d], h.source.structure(cs, d), h.target.structure(cs, d))
    return OperadAlgebra(lo, carriers, lam)


def arrows_of_algebras(a: OperadAlgebra, o: Operad) -> AlgebraMap:
    src = OperadAlgebra(o, {c: x.X0 for c, x in a.carriers.items()},
                        {k: m.alpha0 for k, m in a.lam.items()})
    tgt = OperadAlgebra(o, {c: x.X1 for c, x in a.carriers.items()},
                        {k: m.alpha1 for k, m in a.lam.items()})
    return AlgebraMap(src, tgt, {c: x.f for c, x in a.carriers.items()})


# ---------------------------------------------------------------------------
# cokernel and kernel at the level of algebras


def smith_coker(s: SmithIdeal) -> AlgebraMap:
    """``Y → Y/f(X)`` with the quotient algebra structure."""
    o, g = s.operad, CHAIN
    quo, qs = {}, {}
    for c in o.colors:
        quo[c], qs[c] = ch.cokernel(s.at(c))
    lam = {}
    for (cs, d), m in s.Y.lam.items():
        surj = g.fold_maps([g.identity(o.entry(cs, d))] + [qs[c] for c in cs])
        try:
            lam[(cs, d)] = ch.descend([surj], [qs[d] @ m], quo[d])
        except ch.DescentError as exc:
            raise SmithError(f"quotient structure does not descend at {_fmt(cs, d)}") from exc
    b = OperadAlgebra(o, quo, lam)
    return AlgebraMap(s.Y, b, qs)


def algmap_ker(phi: AlgebraMap) -> SmithIdeal:
    """The kernel of an algebra map as a Smith ideal in its source."""
    o, g = phi.source.operad, CHAIN
    a = phi.source
    kers, incs = {}, {}
    for c in o.colors:
        kers[c], incs[c] = ch.kernel(phi.at(c))
    theta = {}
    nz = _nonzero_by_output(o)
    for d in o.colors:
        for cs in nz.get(d, []):
            for i in range(len(cs)):
                maps = [g.identity(o.entry(cs, d))] + [incs[c] if k == i else g.identity(a.carrier(c))
                                                       for k, c in enumerate(cs)]
                theta[(cs, d, i)] = ch.lift(incs[d], a.structure(cs, d) @ g.fold_maps(maps))
    x = Bimodule(a, kers, theta)
    return SmithIdeal(o, a, x, incs)


# ---------------------------------------------------------------------------
# maps


@dataclass
class SmithMap:
    """``h1: Y → Y'`` an algebra map and ``h0: X → X'`` over restriction along ``h1``."""

    source: SmithIdeal
    target: SmithIdeal
    h0: dict
    h1: dict

    def at0(self, c):
        return self.h0.get(c) or ch.zero_map(self.source.X.carrier(c), self.target.X.carrier(c))

    def at1(self, c):
        return self.h1.get(c) or ch.zero_map(self.source.Y.carrier(c), self.target.Y.carrier(c))


@dataclass
class AlgMapMorphism:
    """A commutative square of algebra maps from ``phi`` to ``psi``."""

    source: AlgebraMap
    target: AlgebraMap
    k0: dict
    k1: dict

    def at0(self, c):
        return self.k0.get(c) or ch.zero_map(self.source.source.carrier(c), self.target.source.carrier(c))

    def at1(self, c):
        return self.k1.get(c) or ch.zero_map(self.source.target.carrier(c), self.target.target.carrier(c))


def validate_smith_map(h: SmithMap) -> Check:
    s, t = h.source, h.target
    hy = AlgebraMap(s.Y, t.Y, {c: h.at1(c) for c in s.operad.colors})
    chk = validate_algebra_map(hy)
    if not chk:
        return chk
    chk = validate_bimodule_map({c: h.at0(c) for c in s.operad.colors}, s.X, restrict_bimodule(t.X, hy))
    if not chk:
        return chk
    for c in s.operad.colors:
        if t.at(c) @ h.at0(c) != h.at1(c) @ s.at(c):
            return Check(False, f"square does not commute at color {c}", ("square", c))
    return Check(True)


def validate_algmap_morphism(k: AlgMapMorphism) -> Check:
    p, q = k.source, k.target
    for h in (AlgebraMap(p.source, q.source, {c: k.at0(c) for c in p.source.operad.colors}),
              AlgebraMap(p.target, q.target, {c: k.at1(c) for c in p.source.operad.colors})):
        chk = validate_algebra_map(h)
        if not chk:
            return chk
    for c in p.source.operad.colors:
        if q.at(c) @ k.at0(c) != k.at1(c) @ p.at(c):
            return Check(False, f"square does not commute at color {c}", ("square", c))
    return Check(True)


def identity_smith_map(s: SmithIdeal) -> SmithMap:
    cs = s.operad.colors
    return SmithMap(s, s, {c: ch.identity_map(s.X.carrier(c)) for c in cs},
                    {c: ch.identity_map(s.Y.carrier(c)) for c in cs})


def identity_algmap_morphism(p: AlgebraMap) -> AlgMapMorphism:
    cs = p.source.operad.colors
    return AlgMapMorphism(p, p, {c: ch.identity_map(p.source.carrier(c)) for c in cs},
                          {c: ch.identity_map(p.target.carrier(c)) for c in cs})


def smith_maps_equal(a: SmithMap, b: SmithMap) -> bool:
    return all(a.at0(c) == b.at0(c) and a.at1(c) == b.at1(c) for c in a.source.operad.colors)


def algmap_morphisms_equal(a: AlgMapMorphism, b: AlgMapMorphism) -> bool:
    return all(a.at0(c) == b.at0(c) and a.at1(c) == b.at1(c) for c in a.source.source.operad.colors)


def compose_smith_maps(k: SmithMap, h: SmithMap) -> SmithMap:
    cs = h.source.operad.colors
    return SmithMap(h.source, k.target, {c: k.at0(c) @ h.at0(c) for c in cs},
                    {c: k.at1(c) @ h.at1(c) for c in cs})


def compose_algmap_morphisms(k: AlgMapMorphism, h: AlgMapMorphism) -> AlgMapMorphism:
    cs = h.source.source.operad.colors
    return AlgMapMorphism(h.source, k.target, {c: k.at0(c) @ h.at0(c) for c in cs},
                          {c: k.at1(c) @ h.at1(c) for c in cs})


def smith_coker_map(h: SmithMap, cs=None, ct=None) -> AlgMapMorphism:
    cs = cs or smith_coker(h.source)
    ct = ct or smith_coker(h.target)
    k1 = {c: ch.descend([cs.at(c)], [ct.at(c) @ h.at1(c)], ct.target.carrier(c))
          for c in h.source.operad.colors}
    return AlgMapMorphism(cs, ct, dict(h.h1), k1)


def algmap_ker_map(k: AlgMapMorphism, ks=None, kt=None) -> SmithMap:
    ks = ks or algmap_ker(k.source)
    kt = kt or algmap_ker(k.target)
    h0 = {c: ch.lift(kt.at(c), k.at0(c) @ ks.at(c)) for c in k.source.source.operad.colors}
    return SmithMap(ks, kt, h0, dict(k.k0))


def adjunction_unit(s: SmithIdeal) -> SmithMap:
    """``s → algmap_ker(smith_coker s)``."""
    kc = algmap_ker(smith_coker(s))
    cs = s.operad.colors
    return SmithMap(s, kc, {c: ch.lift(kc.at(c), s.at(c)) for c in cs},
                    {c: ch.identity_map(s.Y.carrier(c)) for c in cs})


def adjunction_counit(phi: AlgebraMap) -> AlgMapMorphism:
    """``smith_coker(algmap_ker phi) → phi``."""
    ck = smith_coker(algmap_ker(phi))
    cs = phi.source.operad.colors
    return AlgMapMorphism(ck, phi, {c: ch.identity_map(phi.source.carrier(c)) for c in cs},
                          {c: ch.descend([ck.at(c)], [phi.at(c)], phi.target.carrier(c)) for c in cs})


@dataclass(frozen=True)
class AdjunctionReport:
    unit: SmithMap
    counit: AlgMapMorphism
    unit_valid: bool
    counit_valid: bool
    triangle_coker: bool
    triangle_ker: bool

    @property
    def ok(self) -> bool:
        return self.unit_valid and self.counit_valid and self.triangle_coker and self.triangle_ker


def operadic_adjunction_witnesses(s: SmithIdeal, phi: AlgebraMap) -> AdjunctionReport:
    unit = adjunction_unit(s)
    counit = adjunction_counit(phi)
    cs = smith_coker(s)
    t1 = compose_algmap_morphisms(adjunction_counit(cs), smith_coker_map(unit, cs=cs))
    kp = algmap_ker(phi)
    t2 = compose_smith_maps(algmap_ker_map(counit, kt=kp), adjunction_unit(kp))
    return AdjunctionReport(
        unit, counit,
        bool(validate_smith_map(unit)), bool(validate_algmap_morphism(counit)),
        algmap_morphisms_equal(t1, identity_algmap_morphism(cs)),
        smith_maps_equal(t2, identity_smith_map(kp)),
    )


# ---------------------------------------------------------------------------
# entrywise model-structure predicates


@dataclass(frozen=True)
class MapFlags:
    weq: bool
    fib: bool


def classify_smith_map(h: SmithMap) -> MapFlags:
    chk = validate_smith_map(h)
    if not chk:
        raise SmithError(chk.message)
    cols = h.source.operad.colors
    comps = [h.at0(c) for c in cols] + [h.at1(c) for c in cols]
    return MapFlags(all(ch.is_quasi_iso(m) for m in comps), all(ch.is_surjective(m) for m in comps))


def _arrow_square(k: AlgMapMorphism, c) -> ArrowMap:
    return ArrowMap(ArrowObject(k.source.at(c)), ArrowObject(k.target.at(c)), k.at0(c), k.at1(c))


def classify_algmap(k: AlgMapMorphism) -> MapFlags:
    chk = validate_algmap_morphism(k)
    if not chk:
        raise SmithError(chk.message)
    flags = [classify_arrow_map(_arrow_square(k, c)).inj for c in k.source.source.operad.colors]
    return MapFlags(all(f.weq for f in flags), all(f.fib for f in flags))


def terminal_algebra(o: Operad) -> OperadAlgebra:
    return OperadAlgebra(o, {}, {})


def to_terminal(phi: AlgebraMap) -> AlgMapMorphism:
    """The map from ``phi`` to the terminal object ``0 → 0``."""
    t = terminal_algebra(phi.source.operad)
    z = AlgebraMap(t, t, {})
    cs = phi.source.operad.colors
    return AlgMapMorphism(phi, z, {c: ch.zero_map(phi.source.carrier(c), ch.zero_complex()) for c in cs},
                          {c: ch.zero_map(phi.target.carrier(c), ch.zero_complex()) for c in cs})


def is_fibrant_algmap(phi: AlgebraMap) -> bool:
    return classify_algmap(to_terminal(phi)).fib


RESTRICTION_NOTE = (
    "Only the derived unit on Smith ideals with entrywise injective f is verified. "
    "Entrywise injectivity stands in for cofibrancy; cofibrant replacement in algebra "
    "categories, and hence the derived counit for arbitrary targets, is not computed."
)


@dataclass
class DerivedUnitReport:
    colors: dict = field(default_factory=dict)
    cokernel_fibrant: bool = False
    unit_iso: bool = False
    unit_weq: bool = False
    note: str = RESTRICTION_NOTE

    @property
    def ok(self) -> bool:
        return self.cokernel_fibrant and self.unit_iso and self.unit_weq


def derived_unit_check(s: SmithIdeal) -> DerivedUnitReport:
    o = s.operad
    bad = [c for c in o.colors if not ch.is_injective(s.at(c))]
    if bad:
        raise SmithError(f"precondition: f is not degreewise injective at colors {bad}")
    rep = DerivedUnitReport()
    q = smith_coker(s)
    rep.cokernel_fibrant = is_fibrant_algmap(q)
    unit = adjunction_unit(s)
    isos = True
    for c in o.colors:
        i0, i1 = ch.is_iso(unit.at0(c)), ch.is_iso(unit.at1(c))
        rep.colors[c] = {
            "X": s.X.carrier(c).dims,
            "Y": s.Y.carrier(c).dims,
            "coker": q.target.carrier(c).dims,
            "surjective": ch.is_surjective(q.at(c)),
            "unit0_iso": i0,
            "unit1_iso": i1,
        }
        isos = isos and i0 and i1
    rep.unit_iso = isos
    rep.unit_weq = classify_smith_map(unit).weq
    return rep


@dataclass(frozen=True)
class ReflectionInstance:
    premise: bool
    conclusion: bool

    @property
    def holds(self) -> bool:
        return (not self.premise) or self.conclusion


def weq_reflection_instance(k: AlgMapMorphism) -> ReflectionInstance:
    """Between fibrant algebra maps: ker k a weak equivalence ⇒ k one."""
    if not (is_fibrant_algmap(k.source) and is_fibrant_algmap(k.target)):
        raise SmithError("precondition: both algebra maps must be fibrant")
    premise = classify_smith_map(algmap_ker_map(k)).weq
    return ReflectionInstance(premise, classify_algmap(k).weq)


# forgetful comparisons


def forget_smith(s: SmithIdeal) -> dict:
    return {c: ArrowObject(s.at(c)) for c in s.operad.colors}


def forget_algmap(phi: AlgebraMap) -> dict:
    return {c: ArrowObject(phi.at(c)) for c in phi.source.operad.colors}


def kernel_commutes_with_forgetting(phi: AlgebraMap) -> bool:
    k = forget_smith(algmap_ker(phi))
    return all(k[c] == ker_functor(a) for c, a in forget_algmap(phi).items())


def cokernel_commutes_with_forgetting(s: SmithIdeal) -> bool:
    q = forget_algmap(smith_coker(s))
    return all(q[c] == coker_functor(a) for c, a in forget_smith(s).items())
