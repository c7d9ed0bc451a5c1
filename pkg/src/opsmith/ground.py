"""Ground categories: the symmetric monoidal, finitely (co)complete additive
categories that operads and algebras live in.

Three instances are provided: chain complexes (:class:`ChainGround`) and the
arrow category under the entrywise tensor product or the pushout product
(see :mod:`opsmith.arrow`).  Operad and algebra code only talks to the
methods defined on :class:`Ground`.

Multi-fold tensor products are bracketed by *trees*: a leaf is an ``int``
index into the factor list, an inner node is a pair of trees.
"""

from __future__ import annotations

from typing import Sequence

from . import chain as ch


def leftfold_tree(n: int, start: int = 0):
    """``((start, start+1), start+2)...`` over ``n`` leaves."""
    if n < 1:
        raise ValueError("a tensor tree needs at least one leaf")
    t = start
    for i in range(start + 1, start + n):
        t = (t, i)
    return t


def tree_leaves(tree) -> list[int]:
    if isinstance(tree, int):
        return [tree]
    return tree_leaves(tree[0]) + tree_leaves(tree[1])


def relabel_tree(tree, mapping):
    if isinstance(tree, int):
        return mapping[tree]
    return (relabel_tree(tree[0], mapping), relabel_tree(tree[1], mapping))


def fold_of_trees(trees: Sequence):
    """Left fold whose leaves are the given subtrees."""
    t = trees[0]
    for s in trees[1:]:
        t = (t, s)
    return t


class Ground:
    """Abstract interface; subclasses implement the primitive operations."""

    name = "abstract"

    # -- primitives ---------------------------------------------------------
    def unit(self):
        raise NotImplementedError

    def zero(self):
        raise NotImplementedError

    def source(self, f):
        return f.source

    def target(self, f):
        return f.target

    def identity(self, x):
        raise NotImplementedError

    def compose(self, g, f):
        """``g ∘ f``."""
        raise NotImplementedError

    def equal(self, f, g) -> bool:
        return f == g

    def zero_map(self, a, b):
        raise NotImplementedError

    def add(self, f, g):
        raise NotImplementedError

    def scale(self, f, c):
        raise NotImplementedError

    def tensor(self, x, y):
        raise NotImplementedError

    def tensor_map(self, f, g):
        raise NotImplementedError

    def left_unitor(self, x):
        raise NotImplementedError

    def right_unitor(self, x):
        raise NotImplementedError

    def reorder(self, objs, src, dst):
        raise NotImplementedError

    def direct_sum(self, objs):
        raise NotImplementedError

    def cokernel(self, f):
        raise NotImplementedError

    def kernel(self, f):
        raise NotImplementedError

    def descend(self, surjs, targets, target_obj=None):
        raise NotImplementedError

    def lift(self, inc, g):
        raise NotImplementedError

    def is_iso(self, f) -> bool:
        raise NotImplementedError

    def is_injective(self, f) -> bool:
        raise NotImplementedError

    def is_surjective(self, f) -> bool:
        raise NotImplementedError

    def inverse(self, f):
        raise NotImplementedError

    def is_zero_object(self, x) -> bool:
        raise NotImplementedError

    def total_dim(self, x) -> int:
        raise NotImplementedError

    # -- derived ------------------------------------------------------------
    def sub(self, f, g):
        return self.add(f, self.scale(g, -1))

    def compose_all(self, *maps):
        """``maps[0] ∘ maps[1] ∘ ...``."""
        out = maps[-1]
        for m in reversed(maps[:-1]):
            out = self.compose(m, out)
        return out

    def tensor_tree(self, objs, tree):
        if isinstance(tree, int):
            return objs[tree]
        return self.tensor(self.tensor_tree(objs, tree[0]), self.tensor_tree(objs, tree[1]))

    def tensor_tree_maps(self, maps, tree):
        if isinstance(tree, int):
            return maps[tree]
        return self.tensor_map(self.tensor_tree_maps(maps, tree[0]),
                               self.tensor_tree_maps(maps, tree[1]))

    def fold(self, objs):
        return self.tensor_tree(list(objs), leftfold_tree(len(objs)))

    def fold_maps(self, maps):
        return self.tensor_tree_maps(list(maps), leftfold_tree(len(maps)))

    def strip_units(self, x, n: int):
        """The canonical map ``x ⊗ 1 ⊗ ... ⊗ 1`` (n units, left fold) → x."""
        if n == 0:
            return self.identity(x)
        inner = self.strip_units(x, n - 1)
        return self.compose(self.right_unitor(x), self.tensor_map(inner, self.identity(self.unit())))

    def sum_of_maps(self, maps):
        """Block-diagonal ``⊕ f_i : ⊕ A_i → ⊕ B_i``."""
        s, _, sp = self.direct_sum([self.source(f) for f in maps])
        t, ti, _ = self.direct_sum([self.target(f) for f in maps])
        out = self.zero_map(s, t)
        for f, p, i in zip(maps, sp, ti):
            out = self.add(out, self.compose_all(i, f, p))
        return out

    def copair(self, maps, target=None):
        """``[f_1, ..., f_n] : ⊕ A_i → B``."""
        s, _, sp = self.direct_sum([self.source(f) for f in maps])
        t = target if target is not None else self.target(maps[0])
        out = self.zero_map(s, t)
        for f, p in zip(maps, sp):
            out = self.add(out, self.compose(f, p))
        return out

    def pushout(self, ab, ac):
        """Pushout of ``B <- A -> C``: returns (P, leg_B, leg_C)."""
        s, (ib, ic), _ = self.direct_sum([self.target(ab), self.target(ac)])
        rel = self.sub(self.compose(ib, ab), self.compose(ic, ac))
        p, q = self.cokernel(rel)
        return p, self.compose(q, ib), self.compose(q, ic)

    def pullback(self, bd, cd):
        s, _, (pb, pc) = self.direct_sum([self.source(bd), self.source(cd)])
        k, inc = self.kernel(self.sub(self.compose(bd, pb), self.compose(cd, pc)))
        return k, self.compose(pb, inc), self.compose(pc, inc)

    def coinvariants(self, x, generators):
        """Quotient of ``x`` by the images of ``id - g`` for each generator."""
        if not generators:
            return x, self.identity(x)
        idx = self.identity(x)
        rel = self.copair([self.sub(idx, g) for g in generators], target=x)
        return self.cokernel(rel)


class ChainGround(Ground):
    """Chain complexes over ℚ with the Koszul-signed tensor product."""

    name = "chain"

    def unit(self):
        return ch.unit_complex()

    def zero(self):
        return ch.zero_complex()

    def identity(self, x):
        return ch.identity_map(x)

    def compose(self, g, f):
        return g @ f

    def zero_map(self, a, b):
        return ch.zero_map(a, b)

    def add(self, f, g):
        return f + g

    def scale(self, f, c):
        return f.scale(c)

    def tensor(self, x, y):
        return ch.tensor(x, y)

    def tensor_map(self, f, g):
        return ch.tensor_maps(f, g)

    def left_unitor(self, x):
        return ch.left_unitor(x)

    def right_unitor(self, x):
        return ch.right_unitor(x)

    def reorder(self, objs, src, dst):
        return _chain_reorder(tuple(objs), src, dst)

    def direct_sum(self, objs):
        return _chain_sum(tuple(objs))

    def cokernel(self, f):
        return ch.cokernel(f)

    def kernel(self, f):
        return ch.kernel(f)

    def descend(self, surjs, targets, target_obj=None):
        return ch.descend(surjs, targets, target_obj)

    def lift(self, inc, g):
        return ch.lift(inc, g)

    def pushout(self, ab, ac):
        return ch.pushout(ab, ac)

    def is_iso(self, f):
        return ch.is_iso(f)

    def is_injective(self, f):
        return ch.is_injective(f)

    def is_surjective(self, f):
        return ch.is_surjective(f)

    def inverse(self, f):
        return ch.inverse(f)

    def is_zero_object(self, x):
        return x.is_zero()

    def total_dim(self, x):
        return x.total_dim


_reorder_cache: dict = {}
_sum_cache: dict = {}


def _chain_reorder(objs, src, dst):
    key = (objs, src, dst)
    r = _reorder_cache.get(key)
    if r is None:
        r = _reorder_cache[key] = ch.reorder(objs, src, dst)
    return r


def _chain_sum(objs):
    r = _sum_cache.get(objs)
    if r is None:
        r = _sum_cache[objs] = ch.direct_sum(objs)
    return r


CHAIN = ChainGround()
