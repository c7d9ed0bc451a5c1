"""Seeded random instances: complexes, (co)fibrations, squares, algebras, ideals.

Everything takes a :class:`random.Random`; the same seed gives the same
instance.  Cofibrations are built by free extension (block identity plus a
twisted complement), so preconditions hold by construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import chain as ch
from .algebra import OperadAlgebra, algebra_from_product, sub_bimodule
from .arrow import ArrowMap, ArrowObject
from .chain import ChainComplex, ChainMap
from .ratlin import Matrix, hstack, image_basis, inverse, kernel_basis, kron, solve, vstack

DEGREES = (-2, 2)
MAX_DIM = 4


def make_rng(seed: int) -> random.Random:
    return random.Random(seed)


def _small(rng: random.Random, lo: int = -2, hi: int = 2) -> int:
    return rng.randint(lo, hi)


def random_invertible(rng: random.Random, n: int) -> Matrix:
    """Permutation times unit-lower times unit-upper, small integer entries."""
    lower = [[1 if i == j else (_small(rng) if j < i else 0) for j in range(n)] for i in range(n)]
    upper = [[1 if i == j else (_small(rng) if j > i else 0) for j in range(n)] for i in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    p = Matrix.from_sparse(n, n, {(perm[i], i): 1 for i in range(n)})
    return p @ Matrix.from_rows(lower, n) @ Matrix.from_rows(upper, n)


def change_basis(rng: random.Random, x: ChainComplex) -> ChainMap:
    """A random isomorphism out of ``x``."""
    ps = {n: random_invertible(rng, k) for n, k in x.dims.items()}
    d = {n: ps[n - 1] @ x.d(n) @ inverse(ps[n]) for n in x.dims if n - 1 in ps}
    y = ChainComplex(x.dims, d)
    return ChainMap(x, y, ps)


# ---------------------------------------------------------------------------
# complexes


def complex_from_pieces(spheres: dict, disks: dict) -> ChainComplex:
    """Sum of ``S(n)^{spheres[n]}`` and ``D(n)^{disks[n]}`` (D(n) in degrees n, n-1)."""
    dims: dict = {}
    for n, k in spheres.items():
        dims[n] = dims.get(n, 0) + k
    for n, k in disks.items():
        dims[n] = dims.get(n, 0) + k
        dims[n - 1] = dims.get(n - 1, 0) + k
    used = {n: 0 for n in dims}
    starts = {}
    for n in sorted(dims):
        starts[n] = {"s": used[n]}
        used[n] += spheres.get(n, 0)
    for n in sorted(disks):
        starts.setdefault(n, {"s": 0})["top"] = used[n]
        used[n] += disks[n]
        starts.setdefault(n - 1, {"s": 0})["bot"] = used[n - 1]
        used[n - 1] += disks[n]
    d = {}
    for n, k in disks.items():
        top, bot = starts[n]["top"], starts[n - 1]["bot"]
        d[n] = Matrix.from_sparse(dims[n - 1], dims[n], {(bot + i, top + i): 1 for i in range(k)})
    return ChainComplex(dims, d)


def random_complex(rng: random.Random, max_dim: int = 2, degrees=DEGREES, acyclic: bool = False,
                   span: int = 3, conjugate: bool = True) -> ChainComplex:
    """Up to ``max_dim`` per degree, supported in a window of at most ``span`` degrees."""
    lo, hi = degrees
    width = min(span, hi - lo + 1)
    start = rng.randint(lo, hi - width + 1)
    window = range(start, start + width)
    dims = {n: 0 for n in window}
    spheres, disks = {}, {}
    for n in window:
        if n - 1 in dims and rng.random() < 0.6:
            k = rng.randint(0, max(0, min(max_dim - dims[n], max_dim - dims[n - 1], 2)))
            if k:
                disks[n] = k
                dims[n] += k
                dims[n - 1] += k
    if not acyclic:
        for n in window:
            k = rng.randint(0, max(0, min(max_dim - dims[n], 2)))
            if k:
                spheres[n] = k
                dims[n] += k
    x = complex_from_pieces(spheres, disks)
    return change_basis(rng, x).target if conjugate else x


def _random_vector(rng, basis: Matrix) -> Matrix:
    coeffs = Matrix.from_rows([[_small(rng)] for _ in range(basis.cols)], 1)
    return basis @ coeffs


class _System:
    """Homogeneous linear equations ``Σ A·X·B = 0`` in matrix unknowns."""

    def __init__(self):
        self.shapes: dict = {}
        self.eqs: list = []

    def unknown(self, key, rows: int, cols: int):
        self.shapes[key] = (rows, cols)

    def equation(self, terms, shape):
        self.eqs.append((terms, shape))

    def random_solution(self, rng) -> dict:
        keys = [k for k, (r, c) in self.shapes.items() if r and c]
        offs, total = {}, 0
        for k in keys:
            offs[k] = total
            total += self.shapes[k][0] * self.shapes[k][1]
        if not total:
            return {k: Matrix.zeros(*s) for k, s in self.shapes.items()}
        rows = []
        for terms, (er, ec) in self.eqs:
            if not er or not ec:
                continue
            blocks = []
            for k in keys:
                acc = Matrix.zeros(er * ec, self.shapes[k][0] * self.shapes[k][1])
                for a, key, b in terms:
                    if key == k:
                        acc = acc + kron(a, b.T)
                blocks.append(acc)
            rows.append(hstack(blocks, rows=er * ec))
        if rows:
            basis = kernel_basis(vstack(rows, cols=total))
        else:
            basis = Matrix.identity(total)
        vec = _random_vector(rng, basis) if basis.cols else Matrix.zeros(total, 1)
        out = {}
        for k, (r, c) in self.shapes.items():
            if k not in offs:
                out[k] = Matrix.zeros(r, c)
                continue
            flat = [vec[offs[k] + i, 0] for i in range(r * c)]
            out[k] = Matrix.from_rows([flat[i * c:(i + 1) * c] for i in range(r)], c)
        return out


def _chain_map_system(sys: _System, name, x: ChainComplex, y: ChainComplex):
    degs = sorted(set(x.degrees) | set(y.degrees))
    for n in degs:
        sys.unknown((name, n), y.dim(n), x.dim(n))
    for n in degs:
        # d_y f_n - f_{n-1} d_x = 0
        terms = []
        if (name, n) in sys.shapes:
            terms.append((y.d(n), (name, n), Matrix.identity(x.dim(n))))
        if (name, n - 1) in sys.shapes:
            terms.append((Matrix.identity(y.dim(n - 1)).scale(-1), (name, n - 1), x.d(n)))
        sys.equation(terms, (y.dim(n - 1), x.dim(n)))
    return degs


def random_chain_map(rng: random.Random, x: ChainComplex, y: ChainComplex) -> ChainMap:
    sys = _System()
    degs = _chain_map_system(sys, "f", x, y)
    sol = sys.random_solution(rng)
    return ChainMap(x, y, {n: sol[("f", n)] for n in degs})


def _twist(rng, lower: ChainComplex, upper: ChainComplex) -> dict:
    """``k_n: upper_n → lower_{n-1}`` with ``d k + k d = 0``, so the block
    differential ``[[d_lower, k], [0, d_upper]]`` squares to zero."""
    sys = _System()
    degs = sorted(set(upper.degrees))
    for n in degs:
        sys.unknown(("k", n), lower.dim(n - 1), upper.dim(n))
    for n in degs:
        terms = [(lower.d(n - 1), ("k", n), Matrix.identity(upper.dim(n)))]
        if ("k", n - 1) in sys.shapes:
            terms.append((Matrix.identity(lower.dim(n - 2)), ("k", n - 1), upper.d(n)))
        sys.equation(terms, (lower.dim(n - 2), upper.dim(n)))
    sol = sys.random_solution(rng)
    return {n: sol[("k", n)] for n in degs}


def _extension(rng, lower: ChainComplex, upper: ChainComplex):
    """``E = lower ⊕ upper`` with a random twist; returns (E, inclusion, projection)."""
    k = _twist(rng, lower, upper)
    degs = sorted(set(lower.degrees) | set(upper.degrees))
    dims = {n: lower.dim(n) + upper.dim(n) for n in degs}
    d = {}
    for n in degs:
        if n - 1 not in dims:
            continue
        top = hstack([lower.d(n), k.get(n, Matrix.zeros(lower.dim(n - 1), upper.dim(n)))], rows=lower.dim(n - 1))
        bot = hstack([Matrix.zeros(upper.dim(n - 1), lower.dim(n)), upper.d(n)], rows=upper.dim(n - 1))
        d[n] = vstack([top, bot], cols=dims[n])
    e = ChainComplex(dims, d)
    inc = ChainMap(lower, e, {n: vstack([Matrix.identity(lower.dim(n)), Matrix.zeros(upper.dim(n), lower.dim(n))],
                                       cols=lower.dim(n)) for n in degs})
    proj = ChainMap(e, upper, {n: hstack([Matrix.zeros(upper.dim(n), lower.dim(n)), Matrix.identity(upper.dim(n))],
                                        rows=upper.dim(n)) for n in degs})
    return e, inc, proj


def _budget_complex(rng, base: ChainComplex, acyclic: bool, max_dim: int, degrees=DEGREES):
    """A random complex whose dims added to ``base`` stay within ``max_dim``."""
    for _ in range(20):
        c = random_complex(rng, max_dim=max_dim, degrees=degrees, acyclic=acyclic)
        if all(base.dim(n) + c.dim(n) <= max_dim for n in c.degrees):
            return c
    return ch.zero_complex()


def random_cofibration(rng: random.Random, x: ChainComplex | None = None, trivial: bool = False,
                       max_dim: int = MAX_DIM, degrees=DEGREES) -> ChainMap:
    """A degreewise-injective map ``x → y`` by free extension; a quasi-iso when ``trivial``."""
    if x is None:
        x = random_complex(rng, max_dim=min(2, max_dim), degrees=degrees)
    c = _budget_complex(rng, x, trivial, max_dim, degrees)
    e, inc, _ = _extension(rng, x, c)
    iso = change_basis(rng, e)
    return iso @ inc


def random_fibration(rng: random.Random, y: ChainComplex | None = None, trivial: bool = False,
                     max_dim: int = MAX_DIM, degrees=DEGREES) -> ChainMap:
    """A degreewise-surjective map ``e → y`` whose kernel is acyclic when ``trivial``."""
    if y is None:
        y = random_complex(rng, max_dim=min(2, max_dim), degrees=degrees)
    c = _budget_complex(rng, y, trivial, max_dim, degrees)
    e, _, proj = _extension(rng, c, y)
    iso = change_basis(rng, e)
    return proj @ ch.inverse(iso)


def random_arrow(rng: random.Random, max_dim: int = 2, degrees=DEGREES, span: int = 3) -> ArrowObject:
    x0 = random_complex(rng, max_dim=max_dim, degrees=degrees, span=span)
    x1 = random_complex(rng, max_dim=max_dim, degrees=degrees, span=span)
    return ArrowObject(random_chain_map(rng, x0, x1))


def random_square(rng: random.Random, f: ArrowObject, g: ArrowObject) -> ArrowMap:
    """A random commutative square ``f → g``."""
    sys = _System()
    d0 = _chain_map_system(sys, "a0", f.X0, g.X0)
    d1 = _chain_map_system(sys, "a1", f.X1, g.X1)
    for n in sorted(set(f.X0.degrees) | set(g.X1.degrees)):
        terms = []
        if ("a0", n) in sys.shapes:
            terms.append((g.f.at(n), ("a0", n), Matrix.identity(f.X0.dim(n))))
        if ("a1", n) in sys.shapes:
            terms.append((Matrix.identity(g.X1.dim(n)).scale(-1), ("a1", n), f.f.at(n)))
        sys.equation(terms, (g.X1.dim(n), f.X0.dim(n)))
    sol = sys.random_solution(rng)
    a0 = ChainMap(f.X0, g.X0, {n: sol[("a0", n)] for n in d0})
    a1 = ChainMap(f.X1, g.X1, {n: sol[("a1", n)] for n in d1})
    return ArrowMap(f, g, a0, a1)


def random_proj_cofibration(rng: random.Random, max_dim: int = 3, arrow_dim: int = 2,
                            degrees=DEGREES, span: int = 3) -> ArrowMap:
    """``α0`` a cofibration and the pushout corner a cofibration by construction."""
    f = random_arrow(rng, max_dim=arrow_dim, degrees=degrees, span=span)
    a0 = random_cofibration(rng, f.X0, max_dim=max_dim, degrees=degrees)
    p, leg_b, leg_a = ch.pushout(f.f, a0)
    ext = random_cofibration(rng, p, max_dim=max_dim + arrow_dim, degrees=degrees)
    g = ArrowObject(ext @ leg_a)
    return ArrowMap(f, g, a0, ext @ leg_b)


def random_inj_fibration(rng: random.Random, max_dim: int = 3, arrow_dim: int = 2,
                         degrees=DEGREES, span: int = 3) -> ArrowMap:
    """``α1`` a fibration and the pullback corner a fibration by construction."""
    g = random_arrow(rng, max_dim=arrow_dim, degrees=degrees, span=span)
    a1 = random_fibration(rng, g.X1, max_dim=max_dim, degrees=degrees)
    q, to_b0, to_a1 = ch.pullback(g.f, a1)
    s = random_fibration(rng, q, max_dim=max_dim + arrow_dim, degrees=degrees)
    f = ArrowObject(to_a1 @ s)
    return ArrowMap(f, g, to_b0 @ s, a1)


def random_arrow_map(rng: random.Random) -> ArrowMap:
    """A mix of generic squares and constructed (co)fibrations."""
    kind = rng.choice(["generic", "proj", "inj", "identity"])
    if kind == "proj":
        return random_proj_cofibration(rng)
    if kind == "inj":
        return random_inj_fibration(rng)
    f = random_arrow(rng)
    if kind == "identity":
        return ArrowMap(f, f, ch.identity_map(f.X0), ch.identity_map(f.X1))
    return random_square(rng, f, random_arrow(rng))


# ---------------------------------------------------------------------------
# algebras


@dataclass(frozen=True)
class _Table:
    """A graded algebra on a basis: ``dims``, differential, and products."""

    name: str
    dims: dict
    d: dict
    products: dict  # ((p, i), (q, j)) -> {k: coeff} in degree p+q
    commutative: bool


def table_product(t: _Table) -> tuple[ChainComplex, ChainMap]:
    a = ChainComplex(t.dims, {n: Matrix.from_rows(m, t.dims[n]) for n, m in t.d.items()})
    aa = ch.tensor(a, a)
    blocks = ch._blocks(a, a)
    ent: dict = {}
    for ((p, i), (qq, j)), out in t.products.items():
        n = p + qq
        off = next(o for pp, q2, o in blocks[n] if pp == p)
        col = off + i * a.dim(qq) + j
        for k, v in out.items():
            ent.setdefault(n, {})[(k, col)] = v
    comps = {n: Matrix.from_sparse(a.dim(n), aa.dim(n), ent.get(n, {})) for n in aa.degrees if a.dim(n)}
    return a, ChainMap(aa, a, comps)


CATALOGUE = [
    _Table("dual_numbers", {0: 2}, {}, {((0, 0), (0, 0)): {0: 1}, ((0, 0), (0, 1)): {1: 1},
                                         ((0, 1), (0, 0)): {1: 1}}, True),
    _Table("truncated_cubic", {0: 3}, {}, {((0, i), (0, j)): {i + j: 1} for i in range(3) for j in range(3)
                                           if i + j < 3}, True),
    _Table("nonunital_square_zero", {0: 2}, {}, {((0, 0), (0, 0)): {1: 1}}, True),
    _Table("split_pair", {0: 2}, {}, {((0, 0), (0, 0)): {0: 1}, ((0, 1), (0, 1)): {1: 1}}, True),
    _Table("exterior", {0: 1, 1: 1}, {}, {((0, 0), (0, 0)): {0: 1}, ((0, 0), (1, 0)): {0: 1},
                                          ((1, 0), (0, 0)): {0: 1}}, True),
    _Table("acyclic_unit", {0: 2, 1: 1}, {1: [[0], [1]]},
           {((0, 0), (0, 0)): {0: 1}, ((0, 0), (0, 1)): {1: 1}, ((0, 1), (0, 0)): {1: 1},
            ((0, 0), (1, 0)): {0: 1}, ((1, 0), (0, 0)): {0: 1}}, True),
    _Table("upper_triangular", {0: 3}, {},
           {((0, 0), (0, 0)): {0: 1}, ((0, 0), (0, 1)): {1: 1}, ((0, 1), (0, 2)): {1: 1},
            ((0, 2), (0, 2)): {2: 1}}, False),
]


def table(name: str) -> _Table:
    return next(t for t in CATALOGUE if t.name == name)


def transport_product(m: ChainMap, iso: ChainMap) -> ChainMap:
    inv = ch.inverse(iso)
    return iso @ m @ ch.tensor_maps(inv, inv)


def random_product(rng: random.Random, commutative: bool) -> tuple[ChainComplex, ChainMap]:
    """A random small associative (graded-commutative if asked) dg algebra."""
    choices = [t for t in CATALOGUE if t.commutative or not commutative]
    if rng.random() < 0.2:
        x = random_complex(rng, max_dim=2, span=2)
        return x, ch.zero_map(ch.tensor(x, x), x)
    a, m = table_product(rng.choice(choices))
    iso = change_basis(rng, a)
    return iso.target, transport_product(m, iso)


def random_algebra_with_products(rng: random.Random, o) -> tuple[OperadAlgebra, dict]:
    carriers, products = {}, {}
    for c in o.colors:
        carriers[c], products[c] = random_product(rng, o.name == "Com")
    return algebra_from_product(o, carriers, products), products


def random_algebra(rng: random.Random, o) -> OperadAlgebra:
    return random_algebra_with_products(rng, o)[0]


def _multiply(a: ChainComplex, m: ChainMap, p: int, u: Matrix, qq: int, v: Matrix) -> Matrix:
    n = p + qq
    aa = m.source
    if not a.dim(n):
        return Matrix.zeros(0, 1)
    off = next(o for pp, q2, o in ch._blocks(a, a)[n] if pp == p)
    ent = {}
    for i in range(a.dim(p)):
        if u[i, 0]:
            for j in range(a.dim(qq)):
                if v[j, 0]:
                    ent[(off + i * a.dim(qq) + j, 0)] = u[i, 0] * v[j, 0]
    return m.at(n) @ Matrix.from_sparse(aa.dim(n), 1, ent)


def ideal_closure(a: ChainComplex, m: ChainMap, gens: dict) -> dict:
    """Smallest subcomplex closed under two-sided multiplication containing ``gens``.

    ``gens`` and the result map degree to a column basis matrix.
    """
    span = {n: image_basis(g) for n, g in gens.items() if g.cols}
    while True:
        new = {n: [span[n]] if n in span else [] for n in a.degrees}
        for n, b in span.items():
            if a.dim(n - 1):
                new[n - 1].append(a.d(n) @ b)
            for p in a.degrees:
                for i in range(a.dim(p)):
                    e = Matrix.from_sparse(a.dim(p), 1, {(i, 0): 1})
                    for k in range(b.cols):
                        v = b.submatrix(cols=[k])
                        if a.dim(n + p):
                            new[n + p].append(_multiply(a, m, p, e, n, v))
                            new[n + p].append(_multiply(a, m, n, v, p, e))
        nxt = {}
        for n, ms in new.items():
            if ms:
                b = image_basis(hstack(ms, rows=a.dim(n)))
                if b.cols:
                    nxt[n] = b
        if all(nxt.get(n, Matrix.zeros(0, 0)).cols == span.get(n, Matrix.zeros(0, 0)).cols for n in a.degrees):
            return nxt
        span = nxt


def random_ideal(rng: random.Random, alg: OperadAlgebra, products: dict) -> dict:
    """Per color, the inclusion of a random two-sided dg ideal."""
    incs = {}
    for c in alg.operad.colors:
        a, m = alg.carrier(c), products[c]
        gens = {n: Matrix.from_rows([[_small(rng)] for _ in range(a.dim(n))], 1)
                for n in a.degrees if rng.random() < 0.5}
        span = ideal_closure(a, m, gens)
        sub = ChainComplex({n: b.cols for n, b in span.items()},
                           {n: solve(span[n - 1], a.d(n) @ span[n]) for n in span if n - 1 in span})
        incs[c] = ChainMap(sub, a, span)
    return incs


def random_smith_ideal(rng: random.Random, o, injective: bool | None = None):
    from .smith import SmithIdeal, algmap_ker, smith_coker
    y, products = random_algebra_with_products(rng, o)
    incs = random_ideal(rng, y, products)
    x = sub_bimodule(y, incs)
    s = SmithIdeal(o, y, x, incs)
    if injective is None:
        injective = rng.random() < 0.7
    if injective:
        return algmap_ker(smith_coker(s)) if rng.random() < 0.3 else s
    from .algebra import self_bimodule
    zero = {c: ch.zero_map(y.carrier(c), y.carrier(c)) for c in o.colors}
    return SmithIdeal(o, y, self_bimodule(y), zero)


def random_algebra_map(rng: random.Random, o):
    """A random map of algebras: identity or a quotient map (then re-based)."""
    from .algebra import identity_algebra_map
    from .smith import SmithIdeal, smith_coker
    y, products = random_algebra_with_products(rng, o)
    if rng.random() < 0.25:
        return identity_algebra_map(y)
    incs = random_ideal(rng, y, products)
    return smith_coker(SmithIdeal(o, y, sub_bimodule(y, incs), incs))


# ---------------------------------------------------------------------------
# equivariant instances


def random_action_object(rng: random.Random, n: int, max_total: int = 6):
    """An object with Σ_n action: regular, a tensor power, or trivial."""
    from .modelcheck import regular_representation, tensor_power_action, trivial_action
    kind = rng.choice(["regular", "power", "trivial"])
    if kind == "regular" and n <= 3:
        return regular_representation(n)
    if kind == "power":
        x = random_complex(rng, max_dim=1, span=2)
        if x.total_dim ** n <= max_total:
            return tensor_power_action(x, n)
    x = random_complex(rng, max_dim=2, span=2)
    return x, trivial_action(x, n)


def random_equivariant_cofibration(rng: random.Random, n: int):
    """An underlying cofibration with Σ_n action: a power g^{□n}, or
    ``L1``/``L0`` of an object with action, or cofibration ⊗ action."""
    from .arrow import TENSOR
    from .modelcheck import EquivariantArrow, box_power, lift_action_L1
    kind = rng.choice(["box_power", "L1", "twisted"])
    if kind == "box_power":
        g = random_cofibration(rng, max_dim=1, degrees=(-1, 1))
        if g.target.total_dim ** n <= 8:
            p, gens = box_power(ArrowObject(g), n)
            return EquivariantArrow(n, p, gens)
    x, gens = random_action_object(rng, n)
    if kind == "L1":
        return lift_action_L1(x, gens)
    u = random_cofibration(rng, max_dim=1, degrees=(-1, 1))
    a = ArrowObject(u)
    return EquivariantArrow(n, TENSOR.tensor(TENSOR.L0(x), a),
                            [TENSOR.tensor_map(TENSOR.L0_map(s), TENSOR.identity(a)) for s in gens])


def small_proj_cofibration(rng: random.Random, max_total: int = 3) -> ArrowMap:
    """A projective cofibration with ``Ev1`` of the target of total dimension ≤ ``max_total``."""
    for _ in range(50):
        a = random_proj_cofibration(rng, max_dim=1, arrow_dim=1, degrees=(0, 1), span=2)
        if a.target.X1.total_dim <= max_total:
            return a
    z = ch.zero_complex()
    s0 = ch.sphere(0)
    return ArrowMap(ArrowObject(ch.identity_map(z)), ArrowObject(ch.zero_map(z, s0)),
                    ch.identity_map(z), ch.zero_map(z, s0))
