"""The ten acceptance properties, run on seeded instances.

Each ``criterion_k(seed)`` returns a :class:`CriterionResult`; the seed
offsets every instance seed so reruns are reproducible and distinct seeds
exercise distinct instances.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import chain as ch
from .algebra import (
    OperadAlgebra,
    algebra_from_product,
    algebra_maps_equal,
    algebras_equal,
    sub_bimodule,
    validate_algebra,
    validate_algebra_map,
)
from .arrow import (
    BOX,
    TENSOR,
    ArrowObject,
    classify_arrow_map,
    iterated_pushout_product,
    lax_associativity,
    monoidality_witnesses,
    triangle_identities,
    adjunction_counit,
    adjunction_unit,
    validate_arrow_map,
)
from .chain import ChainComplex, ChainMap
from .gen import (
    table_product,
    table,
    make_rng,
    random_algebra_map,
    random_arrow,
    random_arrow_map,
    random_cofibration,
    random_equivariant_cofibration,
    random_action_object,
    random_fibration,
    random_smith_ideal,
    small_proj_cofibration,
)
from .modelcheck import (
    check_arrow_club_instance,
    check_club_instance,
    check_heart_instance,
    check_spade_instance,
    check_strong_comm_instance,
)
from .operad import std_operad
from .ratlin import Matrix
from .smith import (
    RESTRICTION_NOTE,
    SmithIdeal,
    algebra_map_to_tensor_algebra,
    algmap_ker,
    arrows_of_algebras,
    assemble_box_algebra,
    cokernel_commutes_with_forgetting,
    derived_unit_check,
    kernel_commutes_with_forgetting,
    smith_ideals_equal,
    two_x_check,
    unravel,
    validate_smith_ideal,
)


@dataclass
class CriterionResult:
    number: int
    title: str
    ok: bool = True
    instances: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    seconds: float = 0.0

    def fail(self, msg: str):
        self.ok = False
        if len(self.failures) < 5:
            self.failures.append(msg)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = "; ".join(self.notes)
        return (f"[{status}] criterion {self.number}: {self.title} "
                f"({self.instances} instances, {self.seconds:.1f}s){' - ' + extra if extra else ''}")


def _timed(fn):
    def wrapper(seed: int = 0, **kw) -> CriterionResult:
        t = time.perf_counter()
        res = fn(seed, **kw)
        res.seconds = time.perf_counter() - t
        return res
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_timed
def criterion_1(seed: int, count: int = 200) -> CriterionResult:
    """Pushout product of cofibrations is a cofibration, trivial when one factor is."""
    res = CriterionResult(1, "pushout product axiom")
    trivial_seen = 0
    for i in range(count):
        rng = make_rng(seed * 100_003 + i)
        trivial = i < count // 2
        f = random_cofibration(rng, trivial=trivial)
        g = random_cofibration(rng)
        h = BOX.tensor(ArrowObject(f), ArrowObject(g))
        res.instances += 1
        if not ch.is_injective(h.f):
            res.fail(f"instance {i}: f□g not injective")
        if trivial:
            trivial_seen += 1
            if not ch.is_quasi_iso(h.f):
                res.fail(f"instance {i}: f□g not a quasi-iso for trivial f")
    res.notes.append(f"{trivial_seen} with f a quasi-iso")
    return res


@_timed
def criterion_2(seed: int, count: int = 50) -> CriterionResult:
    """Unit laws for both monoidal structures on the arrow category."""
    res = CriterionResult(2, "monoidal unit laws")
    for i in range(count):
        rng = make_rng(seed * 100_003 + i)
        g = random_arrow(rng)
        res.instances += 1
        for ground, label in ((BOX, "□"), (TENSOR, "⊗")):
            for side, u in (("left", ground.left_unitor(g)), ("right", ground.right_unitor(g))):
                expect_src = (ground.tensor(ground.unit(), g) if side == "left"
                              else ground.tensor(g, ground.unit()))
                if (u.source != expect_src or u.target != g or not validate_arrow_map(u)
                        or not ground.is_iso(u)):
                    res.fail(f"instance {i}: {side} {label}-unitor is not an isomorphism")
    return res


@_timed
def criterion_3(seed: int, count: int = 100) -> CriterionResult:
    """coker ⊣ ker: triangle identities; unit/counit invertible where expected."""
    res = CriterionResult(3, "coker ⊣ ker triangle identities")
    inj = surj = 0
    for i in range(count):
        rng = make_rng(seed * 100_003 + i)
        kind = i % 3
        f = ArrowObject(random_cofibration(rng)) if kind == 0 else random_arrow(rng)
        g = ArrowObject(random_fibration(rng)) if kind == 1 else random_arrow(rng)
        res.instances += 1
        chk = triangle_identities(f, g)
        if not chk:
            res.fail(f"instance {i}: {chk.message}")
        if ch.is_injective(f.f):
            inj += 1
            if not TENSOR.is_iso(adjunction_unit(f)):
                res.fail(f"instance {i}: unit not invertible on an injective arrow")
        if ch.is_surjective(g.f):
            surj += 1
            if not TENSOR.is_iso(adjunction_counit(g)):
                res.fail(f"instance {i}: counit not invertible on a surjective arrow")
    res.notes.append(f"{inj} injective, {surj} surjective")
    return res


@_timed
def criterion_4(seed: int, count: int = 100, triples: int = 20) -> CriterionResult:
    """coker strong monoidal (□ to ⊗); ker lax monoidal with associativity."""
    res = CriterionResult(4, "strong/lax monoidality")
    for i in range(count):
        rng = make_rng(seed * 100_003 + i)
        f, g = random_arrow(rng), random_arrow(rng)
        res.instances += 1
        w = monoidality_witnesses(f, g)
        if not w.strong_is_iso:
            res.fail(f"pair {i}: coker(f□g) → coker f ⊗ coker g not an isomorphism")
        if not w.lax_is_valid:
            res.fail(f"pair {i}: lax map is not a valid square")
    for i in range(triples):
        rng = make_rng(seed * 100_003 + 50_000 + i)
        f, g, h = (random_arrow(rng, max_dim=1) for _ in range(3))
        res.instances += 1
        chk = lax_associativity(f, g, h)
        if not chk:
            res.fail(f"triple {i}: {chk.message}")
    return res


@_timed
def criterion_5(seed: int, count: int = 20) -> CriterionResult:
    """Algebras over the entrywise-tensor operad are exactly algebra maps."""
    res = CriterionResult(5, "O⊗-algebras ↔ algebra maps")
    for name in ("As", "Com"):
        o = std_operad(name, 3)
        for i in range(count):
            rng = make_rng(seed * 100_003 + i + (0 if name == "As" else 10_000))
            h = random_algebra_map(rng, o)
            res.instances += 1
            t = algebra_map_to_tensor_algebra(h)
            if not validate_algebra(t):
                res.fail(f"{name} {i}: converted algebra invalid")
                continue
            back = arrows_of_algebras(t, o)
            if not algebra_maps_equal(back, h):
                res.fail(f"{name} {i}: map → algebra → map is not the identity")
            if not algebras_equal(algebra_map_to_tensor_algebra(back), t):
                res.fail(f"{name} {i}: algebra → map → algebra is not the identity")
    return res


@_timed
def criterion_6(seed: int, count: int = 20, max_n: int = 4) -> CriterionResult:
    """Smith ideals ↔ O□-algebras, and the reduced cube domain."""
    res = CriterionResult(6, "Smith ideal unravelling and reduced cube")
    for i in range(count):
        rng = make_rng(seed * 100_003 + i)
        o = std_operad("As" if i % 2 == 0 else "Com", 3)
        s = random_smith_ideal(rng, o)
        res.instances += 1
        if not validate_smith_ideal(s):
            res.fail(f"ideal {i}: generated ideal invalid")
            continue
        a = assemble_box_algebra(s)
        if not validate_algebra(a):
            res.fail(f"ideal {i}: assembled algebra invalid")
        if not smith_ideals_equal(unravel(a, o), s):
            res.fail(f"ideal {i}: unravel ∘ assemble is not the identity")
    for n in range(1, max_n + 1):
        for i in range(3):
            rng = make_rng(seed * 100_003 + 70_000 + 10 * n + i)
            fs = [random_arrow(rng, max_dim=1, span=2) for _ in range(n)]
            res.instances += 1
            it = iterated_pushout_product(fs)
            if not it.comparison_is_iso:
                res.fail(f"n={n} #{i}: reduced domain comparison not an isomorphism")
            if not it.agrees_with_fold:
                res.fail(f"n={n} #{i}: cube colimit disagrees with the iterated pushout product")
    return res


@_timed
def criterion_7(seed: int, count: int = 20) -> CriterionResult:
    """ker and coker of algebras are computed on underlying arrows."""
    res = CriterionResult(7, "entrywise ker/coker")
    for i in range(count):
        rng = make_rng(seed * 100_003 + i)
        o = std_operad("As" if i % 2 == 0 else "Com", 3)
        phi = random_algebra_map(rng, o)
        s = random_smith_ideal(rng, o)
        res.instances += 1
        if not kernel_commutes_with_forgetting(phi):
            res.fail(f"instance {i}: U∘ker ≠ ker∘U")
        if not cokernel_commutes_with_forgetting(s):
            res.fail(f"instance {i}: U∘coker ≠ coker∘U")
        k = algmap_ker(phi)
        chk = two_x_check(k)
        if not chk:
            res.fail(f"instance {i}: {chk.message}")
    return res


def dual_numbers_ideal() -> SmithIdeal:
    """The ideal (ε) in ℚ[ε]/(ε²) as an As-algebra, N = 3."""
    a = ChainComplex({0: 2})
    m = ChainMap(ch.tensor(a, a), a, {0: Matrix.from_rows([[1, 0, 0, 0], [0, 1, 1, 0]])})
    o = std_operad("As", 3)
    y = algebra_from_product(o, {"*": a}, {"*": m})
    inc = ChainMap(ChainComplex({0: 1}), a, {0: Matrix.from_rows([[0], [1]])})
    return SmithIdeal(o, y, sub_bimodule(y, {"*": inc}), {"*": inc})


def two_colored_com_ideal() -> SmithIdeal:
    """Colors a, b: ℚ = S(0) with its product, and ℚ·1 ⊕ D(1) (``d e = x``,
    ``x`` and ``e`` square-zero).  The ideal is all of ℚ in color a and the
    acyclic part D(1) in color b."""
    o = std_operad("Com", 3, colors=("a", "b"))
    sa = ch.sphere(0)
    ma = ChainMap(ch.tensor(sa, sa), sa, {0: Matrix.from_rows([[1]])})
    b, mb = table_product(table("acyclic_unit"))
    y = algebra_from_product(o, {"a": sa, "b": b}, {"a": ma, "b": mb})
    ia = ch.identity_map(sa)
    ib = ChainMap(ch.disk(1), b, {0: Matrix.from_rows([[0], [1]]), 1: Matrix.from_rows([[1]])})
    return SmithIdeal(o, y, sub_bimodule(y, {"a": ia, "b": ib}), {"a": ia, "b": ib})


@_timed
def criterion_8(seed: int, count: int = 10) -> CriterionResult:
    """Derived unit of coker ⊣ ker on Smith ideals with injective f."""
    res = CriterionResult(8, "derived unit (restricted)")
    cases = [("dual numbers", dual_numbers_ideal()), ("two-colored Com", two_colored_com_ideal())]
    for i in range(count):
        rng = make_rng(seed * 100_003 + i)
        o = std_operad("As" if i % 2 == 0 else "Com", 3)
        cases.append((f"seeded {i}", random_smith_ideal(rng, o, injective=True)))
    for label, s in cases:
        res.instances += 1
        if not validate_smith_ideal(s):
            res.fail(f"{label}: ideal invalid")
            continue
        rep = derived_unit_check(s)
        if not rep.ok:
            res.fail(f"{label}: derived unit check failed {rep.colors}")
    res.notes.append(RESTRICTION_NOTE)
    return res


@_timed
def criterion_9(seed: int, count: int = 8) -> CriterionResult:
    """Cofibrancy conditions with symmetric-group actions, n ≤ 3."""
    res = CriterionResult(9, "strong commutative monoid, ♥, ♣, ♠ and arrow ♣ instances")
    for i in range(count):
        for n in (1, 2, 3):
            rng = make_rng(seed * 100_003 + 10 * i + n)
            reps = [
                check_strong_comm_instance(random_cofibration(rng, max_dim=2, degrees=(-1, 1)), n),
                check_strong_comm_instance(random_cofibration(rng, trivial=True, max_dim=2, degrees=(-1, 1)), n),
                check_heart_instance(random_equivariant_cofibration(rng, n), random_equivariant_cofibration(rng, n)),
            ]
            x, xg = random_action_object(rng, n)
            reps.append(check_club_instance(x, xg, random_cofibration(rng, max_dim=1, degrees=(-1, 1)), n))
            reps.append(check_spade_instance(x, xg, random_cofibration(rng, trivial=True, max_dim=2,
                                                                          degrees=(-1, 1)), n))
            fx = random_equivariant_cofibration(rng, n)
            reps.append(check_arrow_club_instance(fx, small_proj_cofibration(rng, 3 if n < 3 else 2), n))
            for r in reps:
                res.instances += 1
                if not r.ok:
                    res.fail(f"seed {i} n={n}: {r.condition} flags {r.flags}")
    return res


@_timed
def criterion_10(seed: int, count: int = 200) -> CriterionResult:
    """Projective cofibrations have α1 injective; injective fibrations α0 surjective."""
    res = CriterionResult(10, "classification consistency")
    pc = ifib = 0
    for i in range(count):
        rng = make_rng(seed * 100_003 + i)
        a = random_arrow_map(rng)
        res.instances += 1
        c = classify_arrow_map(a)
        if c.proj.cof:
            pc += 1
            if not ch.is_injective(a.alpha1):
                res.fail(f"instance {i}: projective cofibration with α1 not injective")
        if c.inj.fib:
            ifib += 1
            if not ch.is_surjective(a.alpha0):
                res.fail(f"instance {i}: injective fibration with α0 not surjective")
    res.notes.append(f"{pc} projective cofibrations, {ifib} injective fibrations")
    return res


CRITERIA = {k: globals()[f"criterion_{k}"] for k in range(1, 11)}


def run_all(seed: int = 0) -> list[CriterionResult]:
    return [CRITERIA[k](seed) for k in sorted(CRITERIA)]
