"""Instance checkers for cofibrancy conditions involving symmetric-group actions.

All checks are over rational chain complexes, where the expected answer is
always "true"; the checkers compute rather than assume it.  Actions are given
by their adjacent-transposition generators ``s_0, ..., s_{n-2}``; since the
generators are involutions the coinvariants of a diagonal action do not
depend on whether an action is written on the left or the right.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from . import chain as ch
from .arrow import (
    BOX,
    TENSOR,
    ArrowMap,
    ArrowObject,
    BoxArrowGround,
    classify_arrow_map,
    pushout_corner,
    validate_arrow_map,
)
from .chain import ChainComplex, ChainMap, Check
from .ground import CHAIN, fold_of_trees, leftfold_tree
from .operad import perm_mul, transposition
from .ratlin import Matrix


class PreconditionError(ValueError):
    pass


class EquivarianceError(ValueError):
    pass


@dataclass
class EquivariantArrow:
    """An arrow ``f: X0 → X1`` with a Σ_n action by squares ``f → f``."""

    n: int
    arrow: ArrowObject
    generators: list
    side: str = "right"

    def validate(self) -> Check:
        return _check_generators(TENSOR, self.arrow, self.generators, self.n)


def _check_generators(ground, x, gens, n) -> Check:
    if len(gens) != max(n - 1, 0):
        return Check(False, f"expected {max(n - 1, 0)} generators, got {len(gens)}")
    ident = ground.identity(x)
    for i, s in enumerate(gens):
        if ground.source(s) != x or ground.target(s) != x:
            return Check(False, f"generator s_{i} is not an endomorphism", (i,))
        if isinstance(s, ArrowMap) and not validate_arrow_map(s):
            return Check(False, f"generator s_{i} does not commute with the arrow", (i,))
        if isinstance(s, ChainMap) and not ch.validate_map(s):
            return Check(False, f"generator s_{i} is not a chain map", (i,))
        if ground.compose(s, s) != ident:
            return Check(False, f"s_{i}² ≠ id", (i,))
    for i in range(len(gens) - 1):
        a, b = gens[i], gens[i + 1]
        if ground.compose_all(a, b, a) != ground.compose_all(b, a, b):
            return Check(False, f"braid relation fails at {i}", (i,))
    for i in range(len(gens)):
        for j in range(i + 2, len(gens)):
            if ground.compose(gens[i], gens[j]) != ground.compose(gens[j], gens[i]):
                return Check(False, f"s_{i} and s_{j} do not commute", (i, j))
    return Check(True)


# ---------------------------------------------------------------------------
# standard actions


def regular_representation(n: int, side: str = "right") -> tuple[ChainComplex, list[ChainMap]]:
    """ℚ[Σ_n] in degree 0; right action ``μ ↦ μ s_i`` or left ``μ ↦ s_i μ``."""
    perms = list(permutations(range(n)))
    idx = {p: k for k, p in enumerate(perms)}
    x = ChainComplex({0: len(perms)})
    gens = []
    for i in range(n - 1):
        s = transposition(n, i)
        ent = {}
        for p, k in idx.items():
            q = perm_mul(p, s) if side == "right" else perm_mul(s, p)
            ent[(idx[q], k)] = 1
        gens.append(ChainMap(x, x, {0: Matrix.from_sparse(len(perms), len(perms), ent)}))
    return x, gens


def trivial_action(x: ChainComplex, n: int) -> list[ChainMap]:
    return [ch.identity_map(x) for _ in range(n - 1)]


def tensor_power_action(x: ChainComplex, n: int) -> tuple[ChainComplex, list[ChainMap]]:
    """``x^{⊗n}`` with Σ_n permuting factors (Koszul signs)."""
    objs = [x] * n
    gens = [CHAIN.reorder(objs, leftfold_tree(n), fold_of_trees(list(transposition(n, i))))
            for i in range(n - 1)]
    return CHAIN.fold(objs), gens


def box_power(g: ArrowObject, n: int, ground=BOX):
    """``g^{□n}`` with its Σ_n action by permuting factors."""
    objs = [g] * n
    p = ground.fold(objs)
    gens = [ground.reorder(objs, leftfold_tree(n), fold_of_trees(list(transposition(n, i))))
            for i in range(n - 1)]
    return p, gens


def lift_action_L0(x: ChainComplex, gens) -> EquivariantArrow:
    return EquivariantArrow(len(gens) + 1, TENSOR.L0(x), [TENSOR.L0_map(s) for s in gens])


def lift_action_L1(x: ChainComplex, gens) -> EquivariantArrow:
    return EquivariantArrow(len(gens) + 1, BOX.L1(x), [BOX.L1_map(s) for s in gens])


# ---------------------------------------------------------------------------
# reports


@dataclass
class InstanceReport:
    condition: str
    n: int
    flags: dict
    ranks: dict = field(default_factory=dict)
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return all(self.flags.values())


def _dims(x: ChainComplex) -> dict:
    return dict(sorted(x.dims.items()))


def _arrow_ranks(q: ArrowObject) -> dict:
    return {"source": _dims(q.X0), "target": _dims(q.X1),
            "rank": {n: _rank(q.f.at(n)) for n in q.X0.degrees}}


def _rank(m):
    from .ratlin import rank
    return rank(m)


def _require(cond: bool, msg: str):
    if not cond:
        raise PreconditionError(msg)


# ---------------------------------------------------------------------------
# checkers


def check_heart_instance(f: EquivariantArrow, g: EquivariantArrow) -> InstanceReport:
    """``f □_{Σn} g`` is a cofibration for underlying cofibrations f, g."""
    _require(f.n == g.n, "actions of different arities")
    for e in (f, g):
        chk = e.validate()
        if not chk:
            raise EquivarianceError(chk.message)
    _require(ch.is_injective(f.arrow.f) and ch.is_injective(g.arrow.f),
             "inputs must be underlying cofibrations")
    h = BOX.tensor(f.arrow, g.arrow)
    gens = [BOX.tensor_map(a, b) for a, b in zip(f.generators, g.generators)]
    q, _ = BOX.coinvariants(h, gens)
    return InstanceReport("heart", f.n, {"cofibration": ch.is_injective(q.f)}, _arrow_ranks(q))


def _club_result(x, xgens, g: ArrowObject, n: int):
    chk = _check_generators(CHAIN, x, xgens, n)
    if not chk:
        raise EquivarianceError(chk.message)
    p, pgens = box_power(g, n)
    h = TENSOR.tensor(TENSOR.L0(x), p)
    gens = [TENSOR.tensor_map(TENSOR.L0_map(a), b) for a, b in zip(xgens, pgens)]
    q, _ = TENSOR.coinvariants(h, gens)
    return q


def check_club_instance(x: ChainComplex, xgens, g: ChainMap, n: int) -> InstanceReport:
    """``x ⊗_{Σn} g^{□n}`` is a cofibration when g is."""
    _require(ch.is_injective(g), "g must be a cofibration")
    q = _club_result(x, xgens, ArrowObject(g), n)
    return InstanceReport("club", n, {"cofibration": ch.is_injective(q.f)}, _arrow_ranks(q))


def check_spade_instance(x: ChainComplex, xgens, g: ChainMap, n: int) -> InstanceReport:
    """``x ⊗_{Σn} g^{□n}`` is a weak equivalence when g is a trivial cofibration.

    Only this per-instance conclusion is checked; closure properties of the
    class of maps it lands in are not finitely checkable.
    """
    _require(ch.is_injective(g) and ch.is_quasi_iso(g), "g must be a trivial cofibration")
    q = _club_result(x, xgens, ArrowObject(g), n)
    return InstanceReport("spade", n, {"weak_equivalence": ch.is_quasi_iso(q.f)}, _arrow_ranks(q))


def check_strong_comm_instance(g: ChainMap, n: int) -> InstanceReport:
    """``g^{□n}/Σ_n`` is a (trivial) cofibration when g is."""
    _require(ch.is_injective(g), "g must be a cofibration")
    p, gens = box_power(ArrowObject(g), n)
    q, _ = BOX.coinvariants(p, gens)
    flags = {"cofibration": ch.is_injective(q.f)}
    if ch.is_quasi_iso(g):
        flags["weak_equivalence"] = ch.is_quasi_iso(q.f)
    return InstanceReport("strong_comm", n, flags, _arrow_ranks(q))


BOX2 = BoxArrowGround(BOX)


def check_arrow_club_instance(fx: EquivariantArrow, alpha: ArrowMap, n: int) -> InstanceReport:
    """``f_X □_{Σn} α^{□n}`` (pushout product in the arrow category with □) is
    a projective cofibration: its Ev0 map and its pushout corner map are
    cofibrations."""
    _require(fx.n == n, "action arity does not match n")
    chk = fx.validate()
    if not chk:
        raise EquivarianceError(chk.message)
    _require(ch.is_injective(fx.arrow.f), "f_X must be an underlying cofibration")
    _require(classify_arrow_map(alpha).proj.cof, "α must be a projective cofibration")
    a = ArrowObject(alpha)
    p, pgens = box_power(a, n, BOX2)
    square = p.f
    dom, cod = square.source, square.target
    qd, qd_map = BOX.coinvariants(BOX.tensor(fx.arrow, dom),
                                  [BOX.tensor_map(s, r.alpha0) for s, r in zip(fx.generators, pgens)])
    qc, qc_map = BOX.coinvariants(BOX.tensor(fx.arrow, cod),
                                  [BOX.tensor_map(s, r.alpha1) for s, r in zip(fx.generators, pgens)])
    mid = BOX.tensor_map(BOX.identity(fx.arrow), square)
    phi_sq = BOX.descend([qd_map], [BOX.compose(qc_map, mid)], qc)
    phi = phi_sq.alpha0
    corner = pushout_corner(phi_sq)
    flags = {"ev0_cofibration": ch.is_injective(phi), "corner_cofibration": ch.is_injective(corner)}
    ranks = {
        "ev0_source": _dims(phi.source), "ev0_target": _dims(phi.target),
        "ev0_rank": {k: _rank(phi.at(k)) for k in phi.source.degrees},
        "corner_source": _dims(corner.source), "corner_target": _dims(corner.target),
        "corner_rank": {k: _rank(corner.at(k)) for k in corner.source.degrees},
    }
    return InstanceReport("arrow_club", n, flags, ranks)


def pushout_product_axiom_instance(f: ChainMap, g: ChainMap) -> InstanceReport:
    """f□g is a cofibration, and a trivial one when f is."""
    _require(ch.is_injective(f) and ch.is_injective(g), "f and g must be cofibrations")
    h = BOX.tensor(ArrowObject(f), ArrowObject(g))
    flags = {"cofibration": ch.is_injective(h.f)}
    if ch.is_quasi_iso(f):
        flags["weak_equivalence"] = ch.is_quasi_iso(h.f)
    return InstanceReport("pushout_product", 1, flags, _arrow_ranks(h))
