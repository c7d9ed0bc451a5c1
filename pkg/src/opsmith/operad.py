"""Arity-truncated colored operads over a ground category.

Conventions.  Permutations are tuples ``s`` with ``s[k] = s(k)``; the
composite ``s*t`` is ``k ↦ s(t(k))``.  A profile ``cs`` is permuted on the
right, ``cs·s = (cs[s(0)], cs[s(1)], ...)``, and the stored action is
``act(cs, d, s): O(cs; d) → O(cs·s; d)`` with
``act(cs·s, d, t) ∘ act(cs, d, s) = act(cs, d, s*t)``.  Only the adjacent
transpositions ``s_i`` (swapping ``i`` and ``i+1``) are stored.

The composition ``γ(d; cs; bs_1, ..., bs_n)`` has as domain the left-folded
tensor product ``O(cs; d) ⊗ O(bs_1; c_1) ⊗ ... ⊗ O(bs_n; c_n)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import factorial
from typing import Iterable, Mapping, Sequence

from .chain import ChainComplex, ChainMap, Check
from .ground import CHAIN, Ground, fold_of_trees, leftfold_tree
from .ratlin import Matrix, rank


class OperadError(ValueError):
    pass


# ---------------------------------------------------------------------------
# permutations


def perm_id(n: int) -> tuple:
    return tuple(range(n))


def perm_mul(s, t) -> tuple:
    return tuple(s[k] for k in t)


def perm_inv(s) -> tuple:
    out = [0] * len(s)
    for k, v in enumerate(s):
        out[v] = k
    return tuple(out)


def transposition(n: int, i: int) -> tuple:
    s = list(range(n))
    s[i], s[i + 1] = s[i + 1], s[i]
    return tuple(s)


def permute_profile(cs, s) -> tuple:
    return tuple(cs[k] for k in s)


def reduced_word(s) -> list[int]:
    """Indices ``i_1, ..., i_k`` with ``s = s_{i_1} * ... * s_{i_k}``."""
    s = list(s)
    picked = []
    while True:
        for i in range(len(s) - 1):
            if s[i] > s[i + 1]:
                s[i], s[i + 1] = s[i + 1], s[i]
                picked.append(i)
                break
        else:
            break
    return picked[::-1]


def block_permutation(sizes: Sequence[int], s) -> tuple:
    """Permute blocks of the given sizes: block k of the result is block s(k)."""
    offs = [sum(sizes[:i]) for i in range(len(sizes))]
    out = []
    for k in s:
        out.extend(offs[k] + t for t in range(sizes[k]))
    return tuple(out)


def block_sum(perms: Sequence[tuple]) -> tuple:
    out, off = [], 0
    for p in perms:
        out.extend(off + v for v in p)
        off += len(p)
    return tuple(out)


def stabilizer(cs) -> list[tuple]:
    """All permutations fixing the profile."""
    return [s for s in permutations(range(len(cs))) if permute_profile(cs, s) == tuple(cs)]


def stabilizer_generators(cs) -> list[int]:
    """Adjacent transpositions fixing a sorted profile (generate its stabilizer)."""
    return [i for i in range(len(cs) - 1) if cs[i] == cs[i + 1]]


def sorting_permutation(cs) -> tuple:
    """A permutation ``s`` such that ``cs·s`` is sorted (stable)."""
    return tuple(sorted(range(len(cs)), key=lambda k: (cs[k], k)))


# ---------------------------------------------------------------------------
# symmetric sequences and operads


def all_profiles(colors: Sequence, max_len: int, min_len: int = 0) -> list[tuple]:
    out = []
    for n in range(min_len, max_len + 1):
        out.extend(product(colors, repeat=n))
    return out


@dataclass
class SymSeq:
    """Colored symmetric sequence; absent entries are the zero object."""

    ground: Ground
    colors: tuple
    N: int
    entries: dict = field(default_factory=dict)
    actions: dict = field(default_factory=dict)

    def entry(self, cs, d):
        return self.entries.get((tuple(cs), d), self.ground.zero())

    def nonzero(self, cs, d) -> bool:
        x = self.entries.get((tuple(cs), d))
        return x is not None and not self.ground.is_zero_object(x)

    def act_gen(self, cs, d, i):
        cs = tuple(cs)
        m = self.actions.get((cs, d, i))
        if m is None:
            tgt = permute_profile(cs, transposition(len(cs), i))
            return self.ground.zero_map(self.entry(cs, d), self.entry(tgt, d))
        return m

    def act(self, cs, d, s):
        g = self.ground
        cs = tuple(cs)
        out = g.identity(self.entry(cs, d))
        cur = cs
        for i in reduced_word(s):
            out = g.compose(self.act_gen(cur, d, i), out)
            cur = permute_profile(cur, transposition(len(cur), i))
        return out

    def profiles_into(self, d, max_len=None) -> list[tuple]:
        m = self.N if max_len is None else max_len
        return [cs for (cs, dd) in self.entries if dd == d and len(cs) <= m and self.nonzero(cs, d)]

    def check_actions(self) -> Check:
        g = self.ground
        for (cs, d), x in sorted(self.entries.items(), key=_key):
            n = len(cs)
            for i in range(n - 1):
                a = self.act_gen(cs, d, i)
                tgt = permute_profile(cs, transposition(n, i))
                if g.source(a) != x or g.target(a) != self.entry(tgt, d):
                    return Check(False, f"action s_{i} on {_fmt(cs, d)} has wrong endpoints", (cs, d, i))
                back = g.compose(self.act_gen(tgt, d, i), a)
                if not g.equal(back, g.identity(x)):
                    return Check(False, f"s_{i}² ≠ id on {_fmt(cs, d)}", (cs, d, i))
            for i in range(n - 2):
                w1 = self.act(cs, d, perm_mul(perm_mul(transposition(n, i), transposition(n, i + 1)),
                                              transposition(n, i)))
                w2 = _word_act(self, cs, d, [i, i + 1, i])
                w3 = _word_act(self, cs, d, [i + 1, i, i + 1])
                if not g.equal(w2, w3) or not g.equal(w1, w2):
                    return Check(False, f"braid relation fails at {i} on {_fmt(cs, d)}", (cs, d, i))
            for i in range(n - 1):
                for j in range(i + 2, n - 1):
                    if not g.equal(_word_act(self, cs, d, [i, j]), _word_act(self, cs, d, [j, i])):
                        return Check(False, f"s_{i}, s_{j} do not commute on {_fmt(cs, d)}", (cs, d, i, j))
        return Check(True)


def _word_act(seq, cs, d, word):
    g = seq.ground
    out = g.identity(seq.entry(cs, d))
    cur = tuple(cs)
    for i in word:
        out = g.compose(seq.act_gen(cur, d, i), out)
        cur = permute_profile(cur, transposition(len(cur), i))
    return out


def _key(item):
    (cs, d) = item[0]
    return (len(cs), tuple(map(str, cs)), str(d))


def _fmt(cs, d) -> str:
    return f"({','.join(map(str, cs))};{d})"


@dataclass(repr=False)
class Operad(SymSeq):
    gamma: dict = field(default_factory=dict)
    units: dict = field(default_factory=dict)
    name: str = ""

    def __repr__(self):
        return f"Operad({self.name or 'custom'}, colors={self.colors}, N={self.N}, ground={type(self.ground).__name__})"

    def gamma_domain(self, d, cs, bs):
        objs = [self.entry(cs, d)] + [self.entry(b, c) for b, c in zip(bs, cs)]
        return self.ground.fold(objs)

    def gamma_map(self, d, cs, bs):
        cs = tuple(cs)
        bs = tuple(tuple(b) for b in bs)
        if len(bs) != len(cs):
            raise OperadError("γ needs one input profile per input color")
        if not cs:
            return self.ground.identity(self.entry((), d))
        m = self.gamma.get((d, cs, bs))
        if m is None:
            return self.ground.zero_map(self.gamma_domain(d, cs, bs),
                                        self.entry(sum(bs, ()), d))
        return m

    def unit_map(self, c):
        m = self.units.get(c)
        if m is None:
            return self.ground.zero_map(self.ground.unit(), self.entry((c,), c))
        return m


def _nonzero_by_output(o: SymSeq) -> dict:
    out: dict = {c: [] for c in o.colors}
    for (cs, d) in o.entries:
        if o.nonzero(cs, d) and len(cs) <= o.N:
            out.setdefault(d, []).append(cs)
    for d in out:
        out[d].sort(key=lambda cs: (len(cs), tuple(map(str, cs))))
    return out


def input_choices(o: SymSeq, nz: dict, cs, budget: int):
    """All tuples ``(bs_1, ..., bs_n)`` of nonzero inputs with total arity ≤ budget."""
    def rec(k, left):
        if k == len(cs):
            yield ()
            return
        for b in nz.get(cs[k], []):
            if len(b) <= left:
                for rest in rec(k + 1, left - len(b)):
                    yield (b,) + rest
    yield from rec(0, budget)


def equivariance_lhs(o: Operad, d, cs, bs, s):
    """γ(cs·s; bs_{s(k)}) ∘ (act(s) ⊗ permutation of the inputs)."""
    g = o.ground
    n = len(cs)
    objs = [o.entry(cs, d)] + [o.entry(b, c) for b, c in zip(bs, cs)]
    re = g.reorder(objs, leftfold_tree(n + 1), fold_of_trees([0] + [k + 1 for k in s]))
    csp = permute_profile(cs, s)
    bsp = tuple(bs[k] for k in s)
    ten = g.fold_maps([o.act(cs, d, s)] + [g.identity(objs[k + 1]) for k in s])
    return g.compose_all(o.gamma_map(d, csp, bsp), ten, re)


def validate_operad(o: Operad) -> Check:
    """Actions, units, unity, associativity and equivariance, in that order."""
    chk = o.check_actions()
    if not chk:
        return chk
    nz = _nonzero_by_output(o)
    for part in (_check_endpoints, _check_unity, _check_associativity, _check_equivariance):
        chk = part(o, nz)
        if not chk:
            return chk
    return Check(True)


def _check_endpoints(o: Operad, nz) -> Check:
    g = o.ground
    for c in o.colors:
        u = o.unit_map(c)
        if g.source(u) != g.unit() or g.target(u) != o.entry((c,), c):
            return Check(False, f"unit 1_{c} has wrong endpoints", ("unit", c))
    for (key, m) in o.gamma.items():
        d, cs, bs = key
        if g.source(m) != o.gamma_domain(d, cs, bs) or g.target(m) != o.entry(sum(bs, ()), d):
            return Check(False, f"γ{_fmt(cs, d)} with inputs {bs} has wrong endpoints", ("gamma", key))
    return Check(True)


def _check_unity(o: Operad, nz) -> Check:
    g = o.ground
    for c in o.colors:
        for b in nz.get(c, []):
            x = o.entry(b, c)
            lhs = g.compose(o.gamma_map(c, (c,), (b,)), g.tensor_map(o.unit_map(c), g.identity(x)))
            if not g.equal(lhs, g.left_unitor(x)):
                return Check(False, f"left unity fails for {_fmt(b, c)}", ("left unity", b, c))
    for d in o.colors:
        for cs in nz.get(d, []):
            if not cs:
                continue
            x = o.entry(cs, d)
            lhs = g.compose(o.gamma_map(d, cs, tuple((c,) for c in cs)),
                            g.fold_maps([g.identity(x)] + [o.unit_map(c) for c in cs]))
            if not g.equal(lhs, g.strip_units(x, len(cs))):
                return Check(False, f"right unity fails for {_fmt(cs, d)}", ("right unity", cs, d))
    return Check(True)


def _check_equivariance(o: Operad, nz) -> Check:
    g = o.ground
    for d in o.colors:
        for cs in nz.get(d, []):
            n = len(cs)
            if n == 0:
                continue
            for bs in input_choices(o, nz, cs, o.N):
                sizes = [len(b) for b in bs]
                full = sum(bs, ())
                base = o.gamma_map(d, cs, bs)
                for s in permutations(range(n)):
                    if s == perm_id(n):
                        continue
                    lhs = equivariance_lhs(o, d, cs, bs, s)
                    rhs = g.compose(o.act(full, d, block_permutation(sizes, s)), base)
                    if not g.equal(lhs, rhs):
                        return Check(False, f"equivariance fails for {_fmt(cs, d)} inputs {bs} under {s}",
                                     ("equivariance", cs, d, bs, s))
                for taus in product(*[list(permutations(range(k))) for k in sizes]):
                    if all(t == perm_id(len(t)) for t in taus):
                        continue
                    bsp = tuple(permute_profile(b, t) for b, t in zip(bs, taus))
                    ten = g.fold_maps([g.identity(o.entry(cs, d))] +
                                      [o.act(b, c, t) for b, c, t in zip(bs, cs, taus)])
                    lhs = g.compose(o.gamma_map(d, cs, bsp), ten)
                    rhs = g.compose(o.act(full, d, block_sum(taus)), base)
                    if not g.equal(lhs, rhs):
                        return Check(False, f"block equivariance fails for {_fmt(cs, d)} inputs {bs} under {taus}",
                                     ("equivariance", cs, d, bs, taus))
    return Check(True)


def _check_associativity(o: Operad, nz) -> Check:
    for d in o.colors:
        for cs in nz.get(d, []):
            if not cs:
                continue
            for bs in input_choices(o, nz, cs, o.N):
                full_b = sum(bs, ())
                if not full_b:
                    continue
                for es in input_choices(o, nz, full_b, o.N):
                    chk = _associativity(o, d, cs, bs, es)
                    if not chk:
                        return chk
    return Check(True)


def _associativity(o: Operad, d, cs, bs, es) -> Check:
    g = o.ground
    n = len(cs)
    objs = [o.entry(cs, d)] + [o.entry(b, c) for b, c in zip(bs, cs)]
    full_b = sum(bs, ())
    objs += [o.entry(e, c) for e, c in zip(es, full_b)]
    total = len(objs)
    lhs = g.compose(o.gamma_map(d, full_b, es),
                    g.fold_maps([o.gamma_map(d, cs, bs)] + [g.identity(x) for x in objs[n + 1:]]))
    subtrees, inner, out_profiles = [0], [], []
    pos = n + 1
    for i, (b, c) in enumerate(zip(bs, cs)):
        k = len(b)
        ei = es[pos - n - 1: pos - n - 1 + k]
        if k:
            subtrees.append(fold_of_trees([i + 1] + list(range(pos, pos + k))))
        else:
            subtrees.append(i + 1)
        inner.append(o.gamma_map(c, b, ei))
        out_profiles.append(sum(ei, ()))
        pos += k
    re = g.reorder(objs, leftfold_tree(total), fold_of_trees(subtrees))
    rhs = g.compose_all(o.gamma_map(d, cs, tuple(out_profiles)),
                        g.fold_maps([g.identity(objs[0])] + inner), re)
    if not g.equal(lhs, rhs):
        return Check(False, f"associativity fails for {_fmt(cs, d)} inputs {bs} then {es}",
                     ("associativity", cs, d, bs, es))
    return Check(True)


# ---------------------------------------------------------------------------
# standard operads


def _degree0(k: int) -> ChainComplex:
    return ChainComplex({0: k})


def _as_chain(colors, N) -> Operad:
    o = Operad(CHAIN, tuple(colors), N, name="As")
    idx = {n: {p: i for i, p in enumerate(permutations(range(n)))} for n in range(1, N + 1)}
    for c in colors:
        for n in range(1, N + 1):
            cs = (c,) * n
            o.entries[(cs, c)] = _degree0(factorial(n))
            for i in range(n - 1):
                s = transposition(n, i)
                ent = {(idx[n][perm_mul(s, mu)], j): 1 for mu, j in idx[n].items()}
                m = Matrix.from_sparse(factorial(n), factorial(n), ent)
                o.actions[(cs, c, i)] = ChainMap(o.entries[(cs, c)], o.entries[(cs, c)], {0: m})
        o.units[c] = ChainMap(CHAIN.unit(), o.entries[((c,), c)], {0: Matrix.identity(1)})
        for n in range(1, N + 1):
            cs = (c,) * n
            for ks in product(range(1, N + 1), repeat=n):
                if sum(ks) > N:
                    continue
                bs = tuple((c,) * k for k in ks)
                dom = o.gamma_domain(c, cs, bs)
                tgt = o.entries[((c,) * sum(ks), c)]
                offs = [sum(ks[:i]) for i in range(n)]
                ent = {}
                col = 0
                for mu in permutations(range(n)):
                    for nus in product(*[list(permutations(range(k))) for k in ks]):
                        rho = []
                        for j in mu:
                            rho.extend(offs[j] + t for t in nus[j])
                        ent[(idx[sum(ks)][tuple(rho)], col)] = 1
                        col += 1
                m = Matrix.from_sparse(tgt.dim(0), dom.dim(0), ent)
                o.gamma[(c, cs, bs)] = ChainMap(dom, tgt, {0: m})
    return o


def _com_chain(colors, N, max_arity=None, name="Com") -> Operad:
    top = N if max_arity is None else max_arity
    o = Operad(CHAIN, tuple(colors), N, name=name)
    one = CHAIN.unit()
    for c in colors:
        for n in range(1, top + 1):
            cs = (c,) * n
            o.entries[(cs, c)] = one
            for i in range(n - 1):
                o.actions[(cs, c, i)] = CHAIN.identity(one)
        o.units[c] = CHAIN.identity(one)
        for n in range(1, top + 1):
            cs = (c,) * n
            for ks in product(range(1, top + 1), repeat=n):
                if sum(ks) > top:
                    continue
                bs = tuple((c,) * k for k in ks)
                dom = o.gamma_domain(c, cs, bs)
                o.gamma[(c, cs, bs)] = ChainMap(dom, one, {0: Matrix.identity(1)})
    return o


def std_operad(name: str, N: int = 3, ground: Ground = CHAIN, colors: Sequence = ("*",)) -> Operad:
    """As, Com or Triv with diagonal colors (inputs and output share one color).

    As and Com are non-unital: they have no arity-0 operations.
    """
    if N < 1:
        raise OperadError("truncation N must be at least 1")
    from .arrow import ArrowGround, BoxArrowGround
    if isinstance(ground, ArrowGround):
        which = "L1" if isinstance(ground, BoxArrowGround) else "L0"
        return lift_operad(std_operad(name, N, ground.base, colors), which, ground)
    if ground is not CHAIN and ground.name != "chain":
        raise OperadError(f"unsupported ground {ground.name}")
    if name == "As":
        return _as_chain(colors, N)
    if name == "Com":
        return _com_chain(colors, N)
    if name == "Triv":
        return _com_chain(colors, N, max_arity=1, name="Triv")
    raise OperadError(f"unknown operad {name!r}")


# ---------------------------------------------------------------------------
# lifts to the arrow category and the retractions back


def lift_operad(o: Operad, which: str, ground=None) -> Operad:
    from .arrow import BOX, TENSOR, BoxArrowGround, TensorArrowGround
    if which == "L0":
        ag = ground or (TENSOR if o.ground is CHAIN else TensorArrowGround(o.ground))
        lo, lm = ag.L0, ag.L0_map
    elif which == "L1":
        ag = ground or (BOX if o.ground is CHAIN else BoxArrowGround(o.ground))
        lo, lm = ag.L1, ag.L1_map
    else:
        raise OperadError("lift must be L0 or L1")
    out = Operad(ag, o.colors, o.N, name=f"{which}({o.name})")
    out.entries = {k: lo(x) for k, x in o.entries.items()}
    out.actions = {k: lm(m) for k, m in o.actions.items()}
    for key, m in o.gamma.items():
        d, cs, bs = key
        lifted = lm(m)
        dom = out.gamma_domain(d, cs, bs)
        if dom != lifted.source:
            raise OperadError(f"lift is not strict on γ{_fmt(cs, d)}")
        out.gamma[key] = lifted
    for c, u in o.units.items():
        lifted = lm(u)
        if lifted.source != ag.unit():
            raise OperadError("lift is not strict on units")
        out.units[c] = lifted
    return out


def ev_operad(o: Operad, which: int) -> Operad:
    """Ev0 or Ev1 of an operad in an arrow ground."""
    base = o.ground.base
    pick = (lambda x: x.X0) if which == 0 else (lambda x: x.X1)
    pickm = (lambda m: m.alpha0) if which == 0 else (lambda m: m.alpha1)
    out = Operad(base, o.colors, o.N, name=f"Ev{which}({o.name})")
    out.entries = {k: pick(x) for k, x in o.entries.items() if not base.is_zero_object(pick(x))}
    out.actions = {k: pickm(m) for k, m in o.actions.items() if (k[0], k[1]) in out.entries}
    out.gamma = {k: pickm(m) for k, m in o.gamma.items()}
    out.units = {c: pickm(m) for c, m in o.units.items()}
    return out


def operads_equal(a: Operad, b: Operad) -> bool:
    g = a.ground
    keys = set(a.entries) | set(b.entries)
    if any(a.entry(*k) != b.entry(*k) for k in keys):
        return False
    for k in set(a.actions) | set(b.actions):
        if not g.equal(a.act_gen(*k), b.act_gen(*k)):
            return False
    for k in set(a.gamma) | set(b.gamma):
        if not g.equal(a.gamma_map(*k), b.gamma_map(*k)):
            return False
    return all(g.equal(a.unit_map(c), b.unit_map(c)) for c in a.colors)


# ---------------------------------------------------------------------------
# coinvariants and Σ-cofibrancy


def group_closure(ground: Ground, x, generators) -> list:
    """All composites of the generators (a finite group acting on ``x``)."""
    ident = ground.identity(x)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for gen in generators:
                k = ground.compose(gen, h)
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
        if len(seen) > 720:
            raise OperadError("action does not generate a small finite group")
    return sorted(seen, key=repr)


def averaging_idempotent(ground: Ground, x, elements):
    e = ground.zero_map(x, x)
    for h in elements:
        e = ground.add(e, h)
    return ground.scale(e, Fraction(1, len(elements)))


@dataclass(frozen=True)
class Coinvariants:
    obj: object
    projection: object
    cross_checked: bool


def coinvariants(x, generators, ground: Ground = CHAIN) -> Coinvariants:
    """Quotient of ``x`` by ``v - g·v``; over chain complexes the dimension is
    cross-checked against the rank of the averaging idempotent."""
    for gen in generators:
        if ground.source(gen) != x or ground.target(gen) != x:
            raise OperadError("action generator is not an endomorphism")
    q_obj, q = ground.coinvariants(x, list(generators))
    ok = True
    if ground.name == "chain" and generators:
        elems = group_closure(ground, x, generators)
        e = averaging_idempotent(ground, x, elems)
        if e @ e != e:
            raise OperadError("inconsistent action: averaging operator is not idempotent")
        ok = all(rank(e.at(n)) == q_obj.dim(n) for n in x.degrees)
        if not ok:
            raise OperadError("coinvariant dimension disagrees with the averaging idempotent")
    return Coinvariants(q_obj, q, ok)


@dataclass(frozen=True)
class SigmaCofibrancy:
    ok: bool
    splittings: dict


def sigma_cofibrancy_check(s: SymSeq) -> SigmaCofibrancy:
    """Averaging idempotents for the stabilizer action on every entry."""
    if s.ground.name != "chain":
        raise OperadError("Σ-cofibrancy is checked over chain complexes")
    chk = s.check_actions()
    if not chk:
        raise OperadError(chk.message)
    g = s.ground
    out = {}
    for (cs, d), x in sorted(s.entries.items(), key=_key):
        elems = [s.act(cs, d, p) for p in stabilizer(cs)]
        e = averaging_idempotent(g, x, elems)
        if e @ e != e or any(e @ h != e or h @ e != e for h in elems):
            return SigmaCofibrancy(False, out)
        out[(cs, d)] = e
    return SigmaCofibrancy(True, out)
