"""Bounded chain complexes of finite-dimensional rational vector spaces.

Grading is homological: the differential ``d_n`` maps degree ``n`` to degree
``n - 1``.  Tensor products use the Koszul sign rule
``d(a⊗b) = da⊗b + (-1)^|a| a⊗db`` and ``τ(a⊗b) = (-1)^{|a||b|} b⊗a``.

Over a field, cofibrations are the degreewise injections, fibrations the
degreewise surjections and weak equivalences the quasi-isomorphisms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from .ratlin import (
    InconsistentSystem,
    Matrix,
    cokernel_projection,
    hstack,
    kernel_basis,
    kron,
    rank,
    row_reduce,
    solve,
    solve_left,
    vstack,
)


class ChainError(ValueError):
    """Invalid chain-level data (bad shapes, d∘d ≠ 0, non-commuting maps)."""


class DescentError(ValueError):
    """A requested map does not factor through the given quotient."""


class LiftError(ValueError):
    """A requested map does not factor through the given subobject."""


@dataclass(frozen=True)
class Check:
    """Structured verdict of a validation routine."""

    ok: bool
    message: str = ""
    where: tuple = ()

    def __bool__(self):
        return self.ok


class ChainComplex:
    """A finitely supported ℤ-graded complex.

    ``dims`` maps degree to dimension; ``d`` maps degree ``n`` to the matrix of
    ``d_n`` of shape ``dims[n-1] x dims[n]``.  Zero dimensions and zero
    differentials are dropped, so equality is by value.
    """

    __slots__ = ("_dims", "_d", "_hash")

    def __init__(self, dims: Mapping[int, int], d: Mapping[int, Matrix] | None = None):
        dd = {int(k): int(v) for k, v in dims.items() if int(v) != 0}
        if any(v < 0 for v in dd.values()):
            raise ChainError("negative dimension")
        diffs = {}
        for n, m in (d or {}).items():
            n = int(n)
            shape = (dd.get(n - 1, 0), dd.get(n, 0))
            if m.shape != shape:
                raise ChainError(f"differential d_{n} has shape {m.shape}, expected {shape}")
            if shape[0] and shape[1] and not m.is_zero():
                diffs[n] = m
        self._dims = tuple(sorted(dd.items()))
        self._d = tuple(sorted(diffs.items()))
        self._hash = None

    @property
    def dims(self) -> dict[int, int]:
        return dict(self._dims)

    @property
    def differentials(self) -> dict[int, Matrix]:
        return dict(self._d)

    @property
    def degrees(self) -> list[int]:
        return [n for n, _ in self._dims]

    def dim(self, n: int) -> int:
        for k, v in self._dims:
            if k == n:
                return v
        return 0

    @property
    def total_dim(self) -> int:
        return sum(v for _, v in self._dims)

    def d(self, n: int) -> Matrix:
        for k, m in self._d:
            if k == n:
                return m
        return Matrix.zeros(self.dim(n - 1), self.dim(n))

    def is_zero(self) -> bool:
        return not self._dims

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return self._dims == other._dims and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._dims, self._d))
        return self._hash

    def __repr__(self):
        return f"ChainComplex(dims={dict(self._dims)})"


class ChainMap:
    """A degree-0 map of complexes given by one matrix per degree."""

    __slots__ = ("source", "target", "_comps", "_hash")

    def __init__(self, source: ChainComplex, target: ChainComplex,
                 components: Mapping[int, Matrix] | None = None):
        self.source = source
        self.target = target
        comps = {}
        for n, m in (components or {}).items():
            n = int(n)
            shape = (target.dim(n), source.dim(n))
            if m.shape != shape:
                raise ChainError(f"component f_{n} has shape {m.shape}, expected {shape}")
            if shape[0] and shape[1] and not m.is_zero():
                comps[n] = m
        self._comps = tuple(sorted(comps.items()))
        self._hash = None

    @property
    def components(self) -> dict[int, Matrix]:
        return dict(self._comps)

    def at(self, n: int) -> Matrix:
        for k, m in self._comps:
            if k == n:
                return m
        return Matrix.zeros(self.target.dim(n), self.source.dim(n))

    @property
    def degrees(self) -> list[int]:
        return sorted(set(self.source.degrees) | set(self.target.degrees))

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        if other.target != self.source:
            raise ChainError("composition of non-composable chain maps")
        return ChainMap(other.source, self.target,
                        {n: self.at(n) @ other.at(n) for n in other.source.degrees if self.target.dim(n)})

    def __add__(self, other: "ChainMap") -> "ChainMap":
        if self.source != other.source or self.target != other.target:
            raise ChainError("sum of maps with different endpoints")
        return ChainMap(self.source, self.target, {n: self.at(n) + other.at(n) for n in self.degrees})

    def __neg__(self) -> "ChainMap":
        return ChainMap(self.source, self.target, {n: -m for n, m in self._comps})

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return self + (-other)

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target, {n: m.scale(c) for n, m in self._comps})

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        return (self._comps == other._comps and self.source == other.source
                and self.target == other.target)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.source, self.target, self._comps))
        return self._hash

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"


# ---------------------------------------------------------------------------
# standard objects


def zero_complex() -> ChainComplex:
    return ChainComplex({})


def unit_complex() -> ChainComplex:
    return ChainComplex({0: 1})


def sphere(n: int, dim: int = 1) -> ChainComplex:
    """S(n): ℚ^dim concentrated in degree n."""
    return ChainComplex({n: dim})


def disk(n: int) -> ChainComplex:
    """D(n): ℚ in degrees n and n-1 with identity differential."""
    return ChainComplex({n: 1, n - 1: 1}, {n: Matrix.identity(1)})


def identity_map(c: ChainComplex) -> ChainMap:
    return ChainMap(c, c, {n: Matrix.identity(k) for n, k in c.dims.items()})


def zero_map(a: ChainComplex, b: ChainComplex) -> ChainMap:
    return ChainMap(a, b)


def validate_complex(c: ChainComplex) -> Check:
    for n in c.degrees:
        if c.dim(n - 2) and c.dim(n - 1):
            if not (c.d(n - 1) @ c.d(n)).is_zero():
                return Check(False, f"d_{n - 1}∘d_{n} ≠ 0 at degree {n}", (n,))
    return Check(True)


def validate_map(f: ChainMap) -> Check:
    for n in f.degrees:
        lhs = f.target.d(n) @ f.at(n)
        rhs = f.at(n - 1) @ f.source.d(n)
        if lhs != rhs:
            return Check(False, f"d∘f ≠ f∘d at degree {n}", (n,))
    return Check(True)


def is_injective(f: ChainMap) -> bool:
    return all(rank(f.at(n)) == f.source.dim(n) for n in f.source.degrees)


def is_surjective(f: ChainMap) -> bool:
    return all(rank(f.at(n)) == f.target.dim(n) for n in f.target.degrees)


def is_iso(f: ChainMap) -> bool:
    return f.source.dims == f.target.dims and is_injective(f)


def inverse(f: ChainMap) -> ChainMap:
    if not is_iso(f):
        raise ChainError("map is not an isomorphism")
    from .ratlin import inverse as minv
    return ChainMap(f.target, f.source, {n: minv(f.at(n)) for n in f.source.degrees})


# ---------------------------------------------------------------------------
# sums, tensor products


def direct_sum(objs: Sequence[ChainComplex]) -> tuple[ChainComplex, list[ChainMap], list[ChainMap]]:
    degrees = sorted({n for o in objs for n in o.degrees})
    dims = {n: sum(o.dim(n) for o in objs) for n in degrees}
    diffs = {}
    for n in degrees:
        blocks = [o.d(n) for o in objs]
        from .ratlin import block_diag
        diffs[n] = block_diag(blocks)
    s = ChainComplex(dims, diffs)
    incs, projs = [], []
    offs = {n: 0 for n in degrees}
    for o in objs:
        ic, pc = {}, {}
        for n in o.degrees:
            k, tot, off = o.dim(n), dims[n], offs[n]
            ic[n] = Matrix.from_sparse(tot, k, {(off + i, i): 1 for i in range(k)})
            pc[n] = Matrix.from_sparse(k, tot, {(i, off + i): 1 for i in range(k)})
            offs[n] += k
        incs.append(ChainMap(o, s, ic))
        projs.append(ChainMap(s, o, pc))
    return s, incs, projs


def _blocks(x: ChainComplex, y: ChainComplex) -> dict[int, list[tuple[int, int, int]]]:
    """Degree n -> list of (p, q, offset) for the summands x_p ⊗ y_q."""
    out: dict[int, list] = {}
    sizes: dict[int, int] = {}
    for p, dx in x.dims.items():
        for qq, dy in y.dims.items():
            n = p + qq
            out.setdefault(n, [])
    for n in out:
        off = 0
        for p in sorted(x.dims):
            qq = n - p
            if y.dim(qq):
                out[n].append((p, qq, off))
                off += x.dim(p) * y.dim(qq)
        sizes[n] = off
    return out


@lru_cache(maxsize=4096)
def tensor(x: ChainComplex, y: ChainComplex) -> ChainComplex:
    blocks = _blocks(x, y)
    dims = {n: sum(x.dim(p) * y.dim(qq) for p, qq, _ in bl) for n, bl in blocks.items()}
    diffs = {}
    for n, bl in blocks.items():
        rows, cols = dims.get(n - 1, 0), dims[n]
        if not rows:
            continue
        tgt = {(p, qq): off for p, qq, off in blocks.get(n - 1, [])}
        ent: dict = {}
        for p, qq, off in bl:
            dyq = y.dim(qq)
            if (p - 1, qq) in tgt and x.dim(p - 1):
                dx = x.d(p)
                toff = tgt[(p - 1, qq)]
                for i in range(dx.rows):
                    for k in range(dx.cols):
                        v = dx.data[i][k]
                        if v:
                            for j in range(dyq):
                                ent[(toff + i * dyq + j, off + k * dyq + j)] = v
            if (p, qq - 1) in tgt and y.dim(qq - 1):
                dy = y.d(qq)
                toff = tgt[(p, qq - 1)]
                sign = -1 if p % 2 else 1
                dyq1 = y.dim(qq - 1)
                for i in range(x.dim(p)):
                    for a in range(dy.rows):
                        for b in range(dy.cols):
                            v = dy.data[a][b]
                            if v:
                                key = (toff + i * dyq1 + a, off + i * dyq + b)
                                ent[key] = ent.get(key, 0) + sign * v
        diffs[n] = Matrix.from_sparse(rows, cols, ent)
    return ChainComplex(dims, diffs)


@lru_cache(maxsize=4096)
def tensor_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    src = tensor(f.source, g.source)
    tgt = tensor(f.target, g.target)
    sb = _blocks(f.source, g.source)
    tb = _blocks(f.target, g.target)
    comps = {}
    for n, bl in sb.items():
        if not tgt.dim(n):
            continue
        toffs = {(p, qq): off for p, qq, off in tb.get(n, [])}
        rowsets = []
        ent: dict = {}
        for p, qq, off in bl:
            if (p, qq) not in toffs:
                continue
            k = kron(f.at(p), g.at(qq))
            toff = toffs[(p, qq)]
            for i, row in enumerate(k.data):
                for j, v in enumerate(row):
                    if v:
                        ent[(toff + i, off + j)] = v
        comps[n] = Matrix.from_sparse(tgt.dim(n), src.dim(n), ent)
    return ChainMap(src, tgt, comps)


def tensor_tree(objs: Sequence[ChainComplex], tree) -> ChainComplex:
    """Tensor product bracketed by ``tree`` (a leaf index or a pair of trees)."""
    if isinstance(tree, int):
        return objs[tree]
    return tensor(tensor_tree(objs, tree[0]), tensor_tree(objs, tree[1]))


def _tree_basis(objs, tree) -> dict[int, list[tuple]]:
    """Ordered basis of ``tensor_tree(objs, tree)``; elements are tuples of
    (leaf, degree, index) sorted by leaf."""
    if isinstance(tree, int):
        o = objs[tree]
        return {n: [((tree, n, i),) for i in range(k)] for n, k in o.dims.items()}
    left = _tree_basis(objs, tree[0])
    right = _tree_basis(objs, tree[1])
    out: dict[int, list] = {}
    for p in sorted(left):
        for qq in sorted(right):
            out.setdefault(p + qq, [])
    for n in out:
        lst = out[n]
        for p in sorted(left):
            if n - p in right:
                for a in left[p]:
                    for b in right[n - p]:
                        lst.append(a + b)
    return out


def _leaves(tree) -> list[int]:
    if isinstance(tree, int):
        return [tree]
    return _leaves(tree[0]) + _leaves(tree[1])


def reorder(objs: Sequence[ChainComplex], src, dst) -> ChainMap:
    """The coherence isomorphism between two bracketings/orderings of a tensor
    product of the same factors, with Koszul signs."""
    s_obj = tensor_tree(objs, src)
    d_obj = tensor_tree(objs, dst)
    sl, dl = _leaves(src), _leaves(dst)
    if sorted(sl) != sorted(dl):
        raise ChainError("reorder: trees have different leaves")
    dpos = {leaf: i for i, leaf in enumerate(dl)}
    inversions = [(a, b) for i, a in enumerate(sl) for b in sl[i + 1:] if dpos[b] < dpos[a]]
    sb = _tree_basis(objs, src)
    db = _tree_basis(objs, dst)
    comps = {}
    for n, elems in sb.items():
        index = {tuple(sorted(e)): i for i, e in enumerate(db[n])}
        ent = {}
        for j, e in enumerate(elems):
            key = tuple(sorted(e))
            deg = {leaf: dg for leaf, dg, _ in e}
            sign = 1
            for a, b in inversions:
                if deg[a] % 2 and deg[b] % 2:
                    sign = -sign
            ent[(index[key], j)] = sign
        comps[n] = Matrix.from_sparse(d_obj.dim(n), s_obj.dim(n), ent)
    return ChainMap(s_obj, d_obj, comps)


def symmetry(x: ChainComplex, y: ChainComplex) -> ChainMap:
    return reorder([x, y], (0, 1), (1, 0))


def left_unitor(x: ChainComplex) -> ChainMap:
    src = tensor(unit_complex(), x)
    return ChainMap(src, x, {n: Matrix.identity(k) for n, k in x.dims.items()})


def right_unitor(x: ChainComplex) -> ChainMap:
    src = tensor(x, unit_complex())
    return ChainMap(src, x, {n: Matrix.identity(k) for n, k in x.dims.items()})


# ---------------------------------------------------------------------------
# homology


def _cycles_and_boundaries(c: ChainComplex, n: int):
    z = kernel_basis(c.d(n)) if c.dim(n) else Matrix.zeros(0, 0)
    bd = c.d(n + 1)
    if z.cols and bd.cols:
        b_in_z = solve(z, bd)
    else:
        b_in_z = Matrix.zeros(z.cols, bd.cols)
    proj, hdim = cokernel_projection(b_in_z)
    return z, proj, hdim


def homology(c: ChainComplex) -> dict[int, int]:
    """Dimensions of H_n for every degree in the support of ``c``."""
    if not validate_complex(c):
        raise ChainError("homology of an invalid complex")
    return {n: c.dim(n) - rank(c.d(n)) - rank(c.d(n + 1)) for n in c.degrees}


def homology_map(f: ChainMap) -> dict[int, Matrix]:
    """Induced maps on homology in the pivot bases of cycles modulo boundaries."""
    out = {}
    for n in f.degrees:
        zs, ps, hs = _cycles_and_boundaries(f.source, n)
        zt, pt, ht = _cycles_and_boundaries(f.target, n)
        if hs == 0 or ht == 0:
            out[n] = Matrix.zeros(ht, hs)
            continue
        reps = solve(ps, Matrix.identity(hs))
        cyc = zs @ reps
        img = f.at(n) @ cyc
        coords = solve(zt, img)
        out[n] = pt @ coords
    return out


def is_quasi_iso(f: ChainMap) -> bool:
    for m in homology_map(f).values():
        if m.rows != m.cols or rank(m) != m.rows:
            return False
    return True


@dataclass(frozen=True)
class MapClassification:
    is_cofibration: bool
    is_fibration: bool
    is_weak_equivalence: bool
    is_trivial_cofibration: bool
    is_trivial_fibration: bool


def classify_map(f: ChainMap) -> MapClassification:
    chk = validate_map(f)
    if not chk:
        raise ChainError(chk.message)
    cof = is_injective(f)
    fib = is_surjective(f)
    weq = is_quasi_iso(f)
    return MapClassification(cof, fib, weq, cof and weq, fib and weq)


# ---------------------------------------------------------------------------
# kernels, images, cokernels, (co)limits


def lift(inc: ChainMap, g: ChainMap) -> ChainMap:
    """The unique h with ``inc ∘ h == g`` for an injective ``inc``."""
    comps = {}
    for n in g.source.degrees:
        if not inc.source.dim(n):
            if not g.at(n).is_zero():
                raise LiftError(f"map does not land in the subobject at degree {n}")
            continue
        try:
            comps[n] = solve(inc.at(n), g.at(n))
        except InconsistentSystem:
            raise LiftError(f"map does not land in the subobject at degree {n}") from None
    h = ChainMap(g.source, inc.source, comps)
    if inc @ h != g:
        raise LiftError("lift failed verification")
    return h


def descend(surjs: Sequence[ChainMap], targets: Sequence[ChainMap],
            target_obj: ChainComplex | None = None) -> ChainMap:
    """The unique h with ``h ∘ surjs[i] == targets[i]`` for all i, where the
    ``surjs`` share a target and are jointly surjective."""
    if not surjs:
        raise DescentError("descend needs at least one map")
    d_obj = surjs[0].target
    e_obj = targets[0].target if targets else target_obj
    if target_obj is not None:
        e_obj = target_obj
    comps = {}
    degrees = sorted(set(d_obj.degrees) | {n for s in surjs for n in s.source.degrees})
    for n in degrees:
        s_blocks = [s.at(n) for s in surjs]
        t_blocks = [t.at(n) for t in targets]
        S = hstack(s_blocks, rows=d_obj.dim(n))
        G = hstack(t_blocks, rows=e_obj.dim(n))
        if not d_obj.dim(n):
            if not G.is_zero():
                raise DescentError(f"map does not vanish on the relations at degree {n}")
            continue
        if not e_obj.dim(n):
            continue
        try:
            comps[n] = solve_left(S, G)
        except InconsistentSystem:
            raise DescentError(f"map does not descend at degree {n}") from None
        if comps[n] @ S != G:
            raise DescentError(f"map does not descend at degree {n}")
    return ChainMap(d_obj, e_obj, comps)


@dataclass(frozen=True)
class Factorization:
    kernel: ChainComplex
    kernel_inclusion: ChainMap
    image: ChainComplex
    image_inclusion: ChainMap
    cokernel: ChainComplex
    cokernel_projection: ChainMap


def _sub_complex(basis: dict[int, Matrix], amb: ChainComplex) -> tuple[ChainComplex, ChainMap]:
    dims = {n: b.cols for n, b in basis.items()}
    diffs = {}
    for n, b in basis.items():
        if b.cols and dims.get(n - 1):
            diffs[n] = solve(basis[n - 1], amb.d(n) @ b)
    sub = ChainComplex(dims, diffs)
    return sub, ChainMap(sub, amb, {n: b for n, b in basis.items()})


def _quotient(projs: dict[int, Matrix], amb: ChainComplex) -> tuple[ChainComplex, ChainMap]:
    dims = {n: p.rows for n, p in projs.items()}
    diffs = {}
    for n, p in projs.items():
        if p.rows and dims.get(n - 1):
            diffs[n] = solve_left(p, projs[n - 1] @ amb.d(n))
    quo = ChainComplex(dims, diffs)
    return quo, ChainMap(amb, quo, projs)


@lru_cache(maxsize=4096)
def kernel(f: ChainMap) -> tuple[ChainComplex, ChainMap]:
    return _sub_complex({n: kernel_basis(f.at(n)) for n in f.source.degrees}, f.source)


@lru_cache(maxsize=4096)
def cokernel(f: ChainMap) -> tuple[ChainComplex, ChainMap]:
    return _quotient({n: cokernel_projection(f.at(n))[0] for n in f.target.degrees}, f.target)


def image(f: ChainMap) -> tuple[ChainComplex, ChainMap]:
    from .ratlin import image_basis
    return _sub_complex({n: image_basis(f.at(n)) for n in f.target.degrees}, f.target)


def factorize(f: ChainMap) -> Factorization:
    chk = validate_map(f)
    if not chk:
        raise ChainError(chk.message)
    k, ki = kernel(f)
    i, ii = image(f)
    c, cp = cokernel(f)
    return Factorization(k, ki, i, ii, c, cp)


@dataclass
class Diagram:
    """A finite diagram of complexes: nodes and edges (src, dst, map)."""

    nodes: list[ChainComplex]
    edges: list[tuple[int, int, ChainMap]] = field(default_factory=list)

    def validate(self) -> Check:
        for k, (i, j, m) in enumerate(self.edges):
            if m.source != self.nodes[i] or m.target != self.nodes[j]:
                return Check(False, f"edge {k} does not match nodes {i}->{j}", (k,))
        return Check(True)


@dataclass(frozen=True)
class Colimit:
    obj: ChainComplex
    legs: tuple[ChainMap, ...]
    diagram: Diagram

    def mediate(self, cocone: Sequence[ChainMap]) -> ChainMap:
        for i, j, m in self.diagram.edges:
            if cocone[j] @ m != cocone[i]:
                raise DescentError(f"cocone inconsistent with edge {i}->{j}")
        return descend(list(self.legs), list(cocone))


@dataclass(frozen=True)
class Limit:
    obj: ChainComplex
    legs: tuple[ChainMap, ...]
    diagram: Diagram
    inclusion: ChainMap

    def mediate(self, cone: Sequence[ChainMap]) -> ChainMap:
        for i, j, m in self.diagram.edges:
            if m @ cone[i] != cone[j]:
                raise LiftError(f"cone inconsistent with edge {i}->{j}")
        s, incs, _ = direct_sum(self.diagram.nodes)
        total = None
        for inc, c in zip(incs, cone):
            t = inc @ c
            total = t if total is None else total + t
        return lift(self.inclusion, total)


def colimit(d: Diagram) -> Colimit:
    chk = d.validate()
    if not chk:
        raise ChainError(chk.message)
    s, incs, _ = direct_sum(d.nodes)
    if d.edges:
        rsrc, rincs, _ = direct_sum([m.source for _, _, m in d.edges])
        rel = None
        for (i, j, m), ri in zip(d.edges, rincs):
            piece = (incs[i] - incs[j] @ m)
            # piece: source(m) -> s ; route through the edge summand
            t = piece @ _proj_of(rsrc, ri)
            rel = t if rel is None else rel + t
    else:
        rel = zero_map(zero_complex(), s)
    q, qp = cokernel(rel)
    return Colimit(q, tuple(qp @ i for i in incs), d)


def _proj_of(total: ChainComplex, inc: ChainMap) -> ChainMap:
    # the projection onto the summand whose inclusion is ``inc``
    return ChainMap(total, inc.source, {n: inc.at(n).T for n in inc.source.degrees})


def limit(d: Diagram) -> Limit:
    chk = d.validate()
    if not chk:
        raise ChainError(chk.message)
    s, incs, projs = direct_sum(d.nodes)
    if d.edges:
        tsum, tincs, _ = direct_sum([m.target for _, _, m in d.edges])
        phi = None
        for (i, j, m), ti in zip(d.edges, tincs):
            t = ti @ (m @ projs[i] - projs[j])
            phi = t if phi is None else phi + t
    else:
        phi = zero_map(s, zero_complex())
    k, ki = kernel(phi)
    return Limit(k, tuple(p @ ki for p in projs), d, ki)


@lru_cache(maxsize=4096)
def pushout(ab: ChainMap, ac: ChainMap) -> tuple[ChainComplex, ChainMap, ChainMap]:
    """Pushout of ``B <- A -> C`` as (B ⊕ C)/{(b(a), -c(a))}; returns (P, leg_B, leg_C)."""
    if ab.source != ac.source:
        raise ChainError("pushout legs must share a source")
    s, (ib, ic), _ = direct_sum([ab.target, ac.target])
    rel = ib @ ab - ic @ ac
    p, pp = cokernel(rel)
    return p, pp @ ib, pp @ ic


def pullback(bd: ChainMap, cd: ChainMap) -> tuple[ChainComplex, ChainMap, ChainMap]:
    """Pullback of ``B -> D <- C``; returns (P, leg_B, leg_C)."""
    if bd.target != cd.target:
        raise ChainError("pullback legs must share a target")
    s, _, (pb, pc) = direct_sum([bd.source, cd.source])
    k, ki = kernel(bd @ pb - cd @ pc)
    return k, pb @ ki, pc @ ki
