"""Algebras and bimodules over an operad, their maps, and truncated free algebras.

An algebra has carriers ``A_c`` and structure maps
``λ(cs; d): O(cs; d) ⊗ A_{c_1} ⊗ ... ⊗ A_{c_n} → A_d`` (left-folded tensor).
A bimodule ``X`` over ``A`` has maps ``θ(cs; d; i)`` where input ``i`` comes
from ``X`` and the rest from ``A``, landing in ``X_d``.  The axioms are
checked by one routine that treats the algebra as the case "no module slot".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Mapping, Sequence

from . import chain as ch
from .chain import ChainComplex, ChainMap, Check
from .ground import CHAIN, fold_of_trees, leftfold_tree
from .operad import (
    Operad,
    _fmt,
    _nonzero_by_output,
    input_choices,
    perm_id,
    perm_inv,
    permute_profile,
    sorting_permutation,
    stabilizer_generators,
    transposition,
)
from .ratlin import Matrix, hstack


class AlgebraError(ValueError):
    pass


@dataclass(repr=False)
class OperadAlgebra:

    def __repr__(self):
        return f"OperadAlgebra({self.operad!r}, carriers={self.carriers})"

    operad: Operad
    carriers: dict
    lam: dict = field(default_factory=dict)

    @property
    def ground(self):
        return self.operad.ground

    def carrier(self, c):
        return self.carriers.get(c, self.ground.zero())

    def domain(self, cs, d):
        return self.ground.fold([self.operad.entry(cs, d)] + [self.carrier(c) for c in cs])

    def structure(self, cs, d):
        cs = tuple(cs)
        m = self.lam.get((cs, d))
        if m is None:
            return self.ground.zero_map(self.domain(cs, d), self.carrier(d))
        return m


@dataclass(repr=False)
class Bimodule:

    def __repr__(self):
        return f"Bimodule(carriers={self.carriers})"

    algebra: OperadAlgebra
    carriers: dict
    theta: dict = field(default_factory=dict)

    @property
    def ground(self):
        return self.algebra.ground

    @property
    def operad(self):
        return self.algebra.operad

    def carrier(self, c):
        return self.carriers.get(c, self.ground.zero())

    def domain(self, cs, d, i):
        a = self.algebra
        objs = [a.operad.entry(cs, d)] + [self.carrier(c) if k == i else a.carrier(c)
                                          for k, c in enumerate(cs)]
        return self.ground.fold(objs)

    def structure(self, cs, d, i):
        cs = tuple(cs)
        m = self.theta.get((cs, d, i))
        if m is None:
            return self.ground.zero_map(self.domain(cs, d, i), self.carrier(d))
        return m


@dataclass(repr=False)
class AlgebraMap:

    def __repr__(self):
        return f"AlgebraMap({self.source.carriers} -> {self.target.carriers})"

    source: OperadAlgebra
    target: OperadAlgebra
    components: dict

    def at(self, c):
        g = self.source.ground
        m = self.components.get(c)
        if m is None:
            return g.zero_map(self.source.carrier(c), self.target.carrier(c))
        return m


def self_bimodule(a: OperadAlgebra) -> Bimodule:
    """An algebra regarded as a bimodule over itself."""
    theta = {}
    for (cs, d), m in a.lam.items():
        for i in range(len(cs)):
            theta[(cs, d, i)] = m
    return Bimodule(a, dict(a.carriers), theta)


# ---------------------------------------------------------------------------
# the unified axiom checker


class _Structure:
    """Uniform access: slot ``x`` (or None) marks the module input."""

    def __init__(self, a: OperadAlgebra, b: Bimodule | None = None):
        self.a, self.b = a, b
        self.o = a.operad
        self.g = a.ground

    def carrier(self, c, is_x):
        return self.b.carrier(c) if is_x else self.a.carrier(c)

    def act(self, cs, d, x):
        if x is None:
            return self.a.structure(cs, d)
        return self.b.structure(cs, d, x)

    def objs(self, cs, d, x):
        return [self.o.entry(cs, d)] + [self.carrier(c, k == x) for k, c in enumerate(cs)]


def _slots(n, module):
    return list(range(n)) if module else [None]


def _check_structure(s: _Structure, module: bool) -> Check:
    o, g = s.o, s.g
    nz = _nonzero_by_output(o)
    kind = "bimodule" if module else "algebra"
    # endpoints
    for d in o.colors:
        for cs in nz.get(d, []):
            if module and not cs:
                continue
            for x in _slots(len(cs), module):
                m = s.act(cs, d, x)
                if g.source(m) != g.fold(s.objs(cs, d, x)) or g.target(m) != s.carrier(d, x is not None):
                    return Check(False, f"{kind} structure map {_fmt(cs, d)} slot {x} has wrong endpoints",
                                 ("endpoints", cs, d, x))
    # unity
    for c in o.colors:
        x = 0 if module else None
        car = s.carrier(c, module)
        lhs = g.compose(s.act((c,), c, x), g.tensor_map(o.unit_map(c), g.identity(car)))
        if not g.equal(lhs, g.left_unitor(car)):
            return Check(False, f"{kind} unity fails at color {c}", ("unity", c))
    # equivariance
    for d in o.colors:
        for cs in nz.get(d, []):
            n = len(cs)
            for x in _slots(n, module):
                base = s.act(cs, d, x)
                objs = s.objs(cs, d, x)
                for p in permutations(range(n)):
                    if p == perm_id(n):
                        continue
                    re = g.reorder(objs, leftfold_tree(n + 1), fold_of_trees([0] + [k + 1 for k in p]))
                    ten = g.fold_maps([o.act(cs, d, p)] + [g.identity(objs[k + 1]) for k in p])
                    nx = None if x is None else perm_inv(p)[x]
                    lhs = g.compose_all(s.act(permute_profile(cs, p), d, nx), ten, re)
                    if not g.equal(lhs, base):
                        return Check(False, f"{kind} equivariance fails for {_fmt(cs, d)} slot {x} under {p}",
                                     ("equivariance", cs, d, x, p))
    # associativity
    for d in o.colors:
        for cs in nz.get(d, []):
            if not cs:
                continue
            for bs in input_choices(o, nz, cs, o.N):
                full = sum(bs, ())
                if module and not full:
                    continue
                for x in _slots(len(full), module):
                    chk = _assoc(s, d, cs, bs, x, kind)
                    if not chk:
                        return chk
    return Check(True)


def _assoc(s: _Structure, d, cs, bs, x, kind) -> Check:
    o, g = s.o, s.g
    n = len(cs)
    full = sum(bs, ())
    cars = [s.carrier(c, k == x) for k, c in enumerate(full)]
    objs = [o.entry(cs, d)] + [o.entry(b, c) for b, c in zip(bs, cs)] + cars
    lhs = g.compose(s.act(full, d, x), g.fold_maps([o.gamma_map(d, cs, bs)] + [g.identity(c) for c in cars]))
    subtrees, inner = [0], []
    outer_x = None
    pos = 0
    for i, (b, c) in enumerate(zip(bs, cs)):
        k = len(b)
        idx = list(range(n + 1 + pos, n + 1 + pos + k))
        subtrees.append(fold_of_trees([i + 1] + idx) if k else i + 1)
        ix = None
        if x is not None and pos <= x < pos + k:
            ix = x - pos
            outer_x = i
        inner.append(s.act(b, c, ix))
        pos += k
    re = g.reorder(objs, leftfold_tree(len(objs)), fold_of_trees(subtrees))
    rhs = g.compose_all(s.act(cs, d, outer_x), g.fold_maps([g.identity(objs[0])] + inner), re)
    if not g.equal(lhs, rhs):
        where = "" if x is None else f" slot {x}"
        return Check(False, f"{kind} associativity fails for {_fmt(cs, d)} inputs {bs}{where}",
                     ("associativity", cs, d, bs, x))
    return Check(True)


def _check_colors(o: Operad, carriers) -> Check:
    extra = set(carriers) - set(o.colors)
    if extra:
        return Check(False, f"carriers for unknown colors {sorted(map(str, extra))}")
    return Check(True)


def validate_algebra(a: OperadAlgebra) -> Check:
    chk = _check_colors(a.operad, a.carriers)
    if not chk:
        return chk
    return _check_structure(_Structure(a), module=False)


def validate_bimodule(b: Bimodule) -> Check:
    chk = _check_colors(b.operad, b.carriers)
    if not chk:
        return chk
    return _check_structure(_Structure(b.algebra, b), module=True)


def validate_algebra_map(h: AlgebraMap) -> Check:
    a, b = h.source, h.target
    if a.operad is not b.operad and a.operad.name != b.operad.name:
        return Check(False, "algebra map between algebras over different operads")
    g = a.ground
    o = a.operad
    for c in o.colors:
        m = h.at(c)
        if g.source(m) != a.carrier(c) or g.target(m) != b.carrier(c):
            return Check(False, f"component at color {c} has wrong endpoints", ("endpoints", c))
    nz = _nonzero_by_output(o)
    for d in o.colors:
        for cs in nz.get(d, []):
            lhs = g.compose(h.at(d), a.structure(cs, d))
            rhs = g.compose(b.structure(cs, d),
                            g.fold_maps([g.identity(o.entry(cs, d))] + [h.at(c) for c in cs]))
            if not g.equal(lhs, rhs):
                return Check(False, f"map does not commute with λ{_fmt(cs, d)}", ("commute", cs, d))
    return Check(True)


def validate_bimodule_map(f: Mapping, x: Bimodule, y: Bimodule) -> Check:
    """``f_c: X_c → Y_c`` commuting with every θ (both over the same algebra)."""
    g = x.ground
    o = x.operad
    a = x.algebra
    for c in o.colors:
        m = f.get(c)
        if m is None:
            continue
        if g.source(m) != x.carrier(c) or g.target(m) != y.carrier(c):
            return Check(False, f"bimodule map at color {c} has wrong endpoints", ("endpoints", c))
    fc = {c: f.get(c) or g.zero_map(x.carrier(c), y.carrier(c)) for c in o.colors}
    nz = _nonzero_by_output(o)
    for d in o.colors:
        for cs in nz.get(d, []):
            for i in range(len(cs)):
                lhs = g.compose(fc[d], x.structure(cs, d, i))
                maps = [g.identity(o.entry(cs, d))] + [fc[c] if k == i else g.identity(a.carrier(c))
                                                       for k, c in enumerate(cs)]
                rhs = g.compose(y.structure(cs, d, i), g.fold_maps(maps))
                if not g.equal(lhs, rhs):
                    return Check(False, f"not a bimodule map at {_fmt(cs, d)} slot {i}", ("commute", cs, d, i))
    return Check(True)


def identity_algebra_map(a: OperadAlgebra) -> AlgebraMap:
    return AlgebraMap(a, a, {c: a.ground.identity(a.carrier(c)) for c in a.operad.colors})


def compose_algebra_maps(k: AlgebraMap, h: AlgebraMap) -> AlgebraMap:
    g = h.source.ground
    return AlgebraMap(h.source, k.target, {c: g.compose(k.at(c), h.at(c)) for c in h.source.operad.colors})


def algebra_maps_equal(h: AlgebraMap, k: AlgebraMap) -> bool:
    g = h.source.ground
    return all(g.equal(h.at(c), k.at(c)) for c in h.source.operad.colors)


def algebras_equal(a: OperadAlgebra, b: OperadAlgebra) -> bool:
    g = a.ground
    o = a.operad
    if any(a.carrier(c) != b.carrier(c) for c in o.colors):
        return False
    return all(g.equal(a.structure(cs, d), b.structure(cs, d)) for (cs, d) in set(a.lam) | set(b.lam))


def bimodules_equal(x: Bimodule, y: Bimodule) -> bool:
    g = x.ground
    o = x.operad
    if any(x.carrier(c) != y.carrier(c) for c in o.colors):
        return False
    return all(g.equal(x.structure(*k), y.structure(*k)) for k in set(x.theta) | set(y.theta))


# ---------------------------------------------------------------------------
# building algebras from a binary product (chain ground)


def _iterated_product(mult: ChainMap, a: ChainComplex, n: int) -> ChainMap:
    """``A^{⊗n} → A`` by left-folded multiplication."""
    out = ch.identity_map(a)
    for _ in range(n - 1):
        out = mult @ ch.tensor_maps(out, ch.identity_map(a))
    return out


def algebra_from_product(o: Operad, carriers: Mapping, products: Mapping) -> OperadAlgebra:
    """Algebra over As or Com (diagonal colors) from ``products[c]: A_c ⊗ A_c → A_c``.

    For As the basis element ``μ`` of ``As(n)`` acts by
    ``a_1 ⊗ ... ⊗ a_n ↦ ± a_{μ(1)} ... a_{μ(n)}`` (Koszul sign).
    """
    if o.ground is not CHAIN:
        raise AlgebraError("products are given over chain complexes")
    lam = {}
    for (cs, d) in o.entries:
        if not cs or d not in carriers or any(c != d for c in cs):
            continue
        a = carriers[d]
        n = len(cs)
        prod = _iterated_product(products[d], a, n)
        objs = [o.entry(cs, d)] + [a] * n
        dom = CHAIN.fold(objs)
        split = CHAIN.reorder(objs, leftfold_tree(n + 1), (0, leftfold_tree(n, 1)))
        if o.name == "As":
            blocks = [prod @ CHAIN.reorder([a] * n, leftfold_tree(n), fold_of_trees(list(mu)))
                      for mu in permutations(range(n))]
        else:
            blocks = [prod]
        comps = {}
        for deg in a.degrees:
            comps[deg] = hstack([b.at(deg) for b in blocks], rows=a.dim(deg))
        flat = ChainMap(split.target, a, comps)
        lam[(cs, d)] = flat @ split
    return OperadAlgebra(o, dict(carriers), lam)


def sub_bimodule(a: OperadAlgebra, incs: Mapping) -> Bimodule:
    """The bimodule structure on subobjects ``incs[c]: I_c → A_c`` closed under λ."""
    g = a.ground
    o = a.operad
    theta = {}
    nz = _nonzero_by_output(o)
    cars = {c: g.source(m) for c, m in incs.items()}
    for d in o.colors:
        if d not in incs:
            continue
        for cs in nz.get(d, []):
            for i, ci in enumerate(cs):
                if ci not in incs:
                    continue
                maps = [g.identity(o.entry(cs, d))] + [incs[c] if k == i else g.identity(a.carrier(c))
                                                       for k, c in enumerate(cs)]
                theta[(cs, d, i)] = g.lift(incs[d], g.compose(a.structure(cs, d), g.fold_maps(maps)))
    return Bimodule(a, cars, theta)


def restrict_bimodule(b: Bimodule, h: AlgebraMap) -> Bimodule:
    """Restriction of scalars along ``h: A' → A`` for a bimodule over ``A``."""
    g = b.ground
    o = b.operad
    a2 = h.source
    theta = {}
    nz = _nonzero_by_output(o)
    for d in o.colors:
        for cs in nz.get(d, []):
            for i in range(len(cs)):
                maps = [g.identity(o.entry(cs, d))] + [g.identity(b.carrier(c)) if k == i else h.at(c)
                                                       for k, c in enumerate(cs)]
                theta[(cs, d, i)] = g.compose(b.structure(cs, d, i), g.fold_maps(maps))
    return Bimodule(a2, dict(b.carriers), theta)


# ---------------------------------------------------------------------------
# N-truncated free algebras


@dataclass
class _Summand:
    profile: tuple
    obj: object          # O(cs; d) ⊗ X_{c_1} ⊗ ... before coinvariants
    quotient: object     # coinvariants
    projection: object


def _summand_generators(o: Operad, x: Mapping, cs, d):
    g = o.ground
    objs = [o.entry(cs, d)] + [x.get(c, g.zero()) for c in cs]
    gens = []
    for i in stabilizer_generators(cs):
        p = transposition(len(cs), i)
        re = g.reorder(objs, leftfold_tree(len(objs)), fold_of_trees([0] + [k + 1 for k in p]))
        ten = g.fold_maps([o.act(cs, d, p)] + [g.identity(objs[k + 1]) for k in p])
        gens.append(g.compose(ten, re))
    return objs, gens


def _sort_key(colors):
    order = {c: k for k, c in enumerate(colors)}
    return lambda cs: tuple(order[c] for c in cs)


@dataclass
class FreeAlgebra:
    algebra: OperadAlgebra
    summands: dict              # color -> list of _Summand
    inclusions: dict            # color -> list of maps summand quotient -> carrier
    generators: dict            # color -> map X_c -> carrier (arity-one unit part)


def free_algebra(o: Operad, x: Mapping) -> FreeAlgebra:
    """The N-truncated free algebra: weights above N are set to zero."""
    g = o.ground
    key = _sort_key(o.colors)
    summands: dict = {}
    for d in o.colors:
        lst = []
        for cs in sorted({tuple(sorted(cs, key=lambda c: key((c,)))) for (cs, dd) in o.entries if dd == d},
                         key=lambda cs: (len(cs), key(cs))):
            if len(cs) > o.N or not o.nonzero(cs, d):
                continue
            objs, gens = _summand_generators(o, x, cs, d)
            y = g.fold(objs)
            if g.is_zero_object(y):
                continue
            q_obj, q = g.coinvariants(y, gens)
            if g.is_zero_object(q_obj):
                continue
            lst.append(_Summand(cs, y, q_obj, q))
        summands[d] = lst
    carriers, incs = {}, {}
    for d in o.colors:
        s, ii, _ = g.direct_sum([m.quotient for m in summands[d]])
        carriers[d], incs[d] = s, ii
    lam = {}
    for d in o.colors:
        for ds in [cs for (cs, dd) in o.entries if dd == d and o.nonzero(cs, d) and len(cs) <= o.N]:
            lam[(ds, d)] = _free_structure(o, x, summands, carriers, incs, ds, d, key)
    alg = OperadAlgebra(o, carriers, lam)
    gens = {}
    for c in o.colors:
        xc = x.get(c, g.zero())
        found = None
        for k, sm in enumerate(summands[c]):
            if sm.profile == (c,):
                unit_part = g.tensor_map(o.unit_map(c), g.identity(xc))
                back = g.inverse(g.left_unitor(xc))
                found = g.compose_all(incs[c][k], sm.projection, unit_part, back)
        gens[c] = found if found is not None else g.zero_map(xc, carriers[c])
    return FreeAlgebra(alg, summands, incs, gens)


def _free_structure(o, x, summands, carriers, incs, ds, d, key):
    from itertools import product
    g = o.ground
    dom = g.fold([o.entry(ds, d)] + [carriers[c] for c in ds])
    if g.is_zero_object(dom):
        return g.zero_map(dom, carriers[d])
    surjs, targets = [], []
    idx_d = {sm.profile: k for k, sm in enumerate(summands[d])}
    for choice in product(*[range(len(summands[c])) for c in ds]):
        parts = [summands[c][j] for c, j in zip(ds, choice)]
        ys = [p.obj for p in parts]
        e_objs = [o.entry(ds, d)] + ys
        surjs.append(g.fold_maps([g.identity(o.entry(ds, d))] +
                                 [g.compose(incs[c][j], summands[c][j].projection) for c, j in zip(ds, choice)]))
        src = g.fold(e_objs)
        full = sum((p.profile for p in parts), ())
        if len(full) > o.N or not o.nonzero(full, d):
            targets.append(g.zero_map(src, carriers[d]))
            continue
        flat = [o.entry(ds, d)] + [o.entry(p.profile, c) for p, c in zip(parts, ds)]
        xs = [x.get(c, g.zero()) for c in full]
        allobjs = flat + xs
        trees, pos = [0], len(flat)
        for i, p in enumerate(parts):
            k = len(p.profile)
            trees.append(fold_of_trees([i + 1] + list(range(pos, pos + k))) if k else i + 1)
            pos += k
        re = g.reorder(allobjs, fold_of_trees(trees), leftfold_tree(len(allobjs)))
        gm = g.fold_maps([o.gamma_map(d, ds, tuple(p.profile for p in parts))] + [g.identity(v) for v in xs])
        s = sorting_permutation(full) if full else ()
        sorted_cs = permute_profile(full, s)
        objs2 = [o.entry(full, d)] + xs
        re2 = g.reorder(objs2, leftfold_tree(len(objs2)), fold_of_trees([0] + [k + 1 for k in s]))
        ten2 = g.fold_maps([o.act(full, d, s)] + [g.identity(objs2[k + 1]) for k in s])
        if sorted_cs not in idx_d:
            targets.append(g.zero_map(src, carriers[d]))
            continue
        j = idx_d[sorted_cs]
        targets.append(g.compose_all(incs[d][j], summands[d][j].projection, ten2, re2, gm, re))
    return g.descend(surjs, targets, carriers[d])
